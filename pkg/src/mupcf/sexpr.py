"""S-expression reader and writer for the surface format.

Values are nested Python lists; atoms are ints or strings (symbols).
Comments run from ';' to end of line.
"""

from .errors import UserError

_DELIMS = set("() \t\r\n;")


def tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            toks.append(c)
            i += 1
        else:
            j = i
            while j < n and text[j] not in _DELIMS:
                j += 1
            toks.append(text[i:j])
            i = j
    return toks


def _atom(tok):
    try:
        return int(tok)
    except ValueError:
        return tok


def parse_all(text):
    """Parse every top-level form in text."""
    toks = tokenize(text)
    forms = []
    stack = []
    for tok in toks:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise UserError("unbalanced ')'")
            done = stack.pop()
            if stack:
                stack[-1].append(done)
            else:
                forms.append(done)
        else:
            atom = _atom(tok)
            if stack:
                stack[-1].append(atom)
            else:
                forms.append(atom)
    if stack:
        raise UserError("unbalanced '('")
    return forms


def parse_one(text):
    forms = parse_all(text)
    if len(forms) != 1:
        raise UserError(f"expected exactly one form, got {len(forms)}")
    return forms[0]


def to_text(form):
    """Canonical single-line rendering; parse_one(to_text(f)) == f."""
    if isinstance(form, list):
        return "(" + " ".join(to_text(x) for x in form) + ")"
    return str(form)


def to_pretty(form, width=100):
    """Multi-line rendering with indentation for long forms."""
    flat = to_text(form)
    if len(flat) <= width or not isinstance(form, list):
        return flat

    def go(f, indent):
        s = to_text(f)
        if len(s) + indent <= width or not isinstance(f, list) or len(f) < 2:
            return s
        head = to_text(f[0])
        pad = " " * (indent + 2)
        parts = [go(x, indent + 2) for x in f[1:]]
        return "(" + head + "\n" + "\n".join(pad + p for p in parts) + ")"

    return go(form, 0)
