"""Proof checker and program extraction for classical arithmetic in finite
types, with a control-operator term calculus in the middle."""

__version__ = "0.1.0"
