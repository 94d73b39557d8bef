"""Scalar-field expressions, exact jets and flat exterior calculus."""
from .expr import Binary, Const, Expr, Unary, Var, diff, eval_expr, to_text
from .forms import OneForm, TwoForm2D, exterior_d_oneform, interior_product_2form
from .jets import Jet2, Tape, fd_jet, jet_eval
from .parser import parse_expr

__all__ = [
    "Binary", "Const", "Expr", "Unary", "Var", "diff", "eval_expr", "to_text",
    "OneForm", "TwoForm2D", "exterior_d_oneform", "interior_product_2form",
    "Jet2", "Tape", "fd_jet", "jet_eval", "parse_expr",
]
