"""Seeded generator of random well-typed closed terms, used by the subject
reduction and translation-preservation suites."""

from mupcf.lambdamu import (
    LApp, LVar, Lam, Mu, NAT, Named, Num, Pair, Prim, Proj, TArr, TBOT,
    TProd, lapp, mk_fix, mk_ifz, mk_omega,
)


def rand_type(rng, depth):
    if depth <= 0:
        return NAT
    r = rng.random()
    if r < 0.45:
        return NAT
    if r < 0.55:
        return TBOT
    if r < 0.8:
        return TArr(rand_type(rng, depth - 1), rand_type(rng, depth - 1))
    return TProd(rand_type(rng, depth - 1), rand_type(rng, depth - 1))


def _vars_of(env, ty):
    return [LVar(n) for n, t in env.items() if t == ty]


def _atom(rng, ty, env, lenv, budget=8):
    opts = _vars_of(env, ty)
    if opts and rng.random() < 0.5:
        return rng.choice(opts)
    match ty:
        case x if x == NAT:
            return Num(rng.randint(0, 9))
        case TArr(a, b):
            x = f"v{len(env)}"
            return Lam(x, a, _atom(rng, b, {**env, x: a}, lenv, budget))
        case TProd(a, b):
            return Pair(_atom(rng, a, env, lenv, budget),
                        _atom(rng, b, env, lenv, budget))
        case _:  # bottom; the budget stops runs through label types
            labs = [(l, lt) for l, lt in lenv.items() if lt != TBOT]
            if labs and budget > 0 and rng.random() < 0.7:
                l, lt = rng.choice(labs)
                return Named(l, _atom(rng, lt, env, lenv, budget - 1))
            return mk_omega(TBOT)
    raise AssertionError


def gen_term(rng, ty, env=None, lenv=None, depth=6, fix_budget=2):
    """A closed (given empty env/lenv) term of the requested type.

    Recursive terms get a tiny guarded body that mentions the self-variable
    exactly once, so reduction sequences grow by a constant per unfolding
    and suites that typecheck every reduct stay affordable.
    """
    env = env or {}
    lenv = lenv or {}
    if depth <= 0:
        return _atom(rng, ty, env, lenv)

    prods = ["atom", "app", "mu", "ifz", "proj"]
    match ty:
        case TArr(_, _):
            prods += ["lam", "lam"]
        case TProd(_, _):
            prods += ["pair", "pair"]
        case x if x == NAT:
            prods += ["sp", "sp"]
        case _:
            prods += ["named", "named", "named"]
    if fix_budget > 0 and (isinstance(ty, TArr) or ty == NAT):
        prods.append("fix")

    def sub(want, env=env, lenv=lenv, budget=None):
        return gen_term(rng, want, env, lenv, depth - 1,
                        fix_budget if budget is None else budget)

    match rng.choice(prods):
        case "atom":
            return _atom(rng, ty, env, lenv)
        case "lam":
            x = f"v{len(env)}"
            return Lam(x, ty.left, sub(ty.right, env={**env, x: ty.left}))
        case "pair":
            return Pair(sub(ty.left), sub(ty.right))
        case "app":
            at = rand_type(rng, 1)
            return LApp(sub(TArr(at, ty)), sub(at))
        case "proj":
            other = rand_type(rng, 1)
            i = rng.choice([1, 2])
            pt = TProd(ty, other) if i == 1 else TProd(other, ty)
            return Proj(i, sub(pt))
        case "mu":
            l = f"l{len(lenv)}"
            return Mu(l, ty, sub(TBOT, lenv={**lenv, l: ty}))
        case "named":
            labs = list(lenv.items())
            if not labs:
                return _atom(rng, ty, env, lenv)
            l, lt = rng.choice(labs)
            return Named(l, sub(lt))
        case "ifz":
            return lapp(mk_ifz(ty), sub(NAT), sub(ty), sub(ty))
        case "sp":
            op = rng.choice(["succ", "pred"])
            return LApp(Prim(op), sub(NAT))
        case "fix":
            x = f"v{len(env)}"
            body = lapp(mk_ifz(ty),
                        _atom(rng, NAT, env, lenv),
                        _atom(rng, ty, env, lenv),
                        LVar(x))
            return LApp(mk_fix(ty), Lam(x, ty, body))
    raise AssertionError
