"""Truncated noncommutative power series and the multiplicative feedback calculus."""
from .hopf import Coord, HElem, HTensor, antipode, delta_shuffle, delta_star, eval_character, rho, star_inverse_via_antipode
from .interconnect import compose, feedback, feedback_residual, mixed_compose, star, star_inverse
from .prelie import EndoG, bullet, diamond, is_admissible, lie_bracket, mathring_delta, mathring_rho, triangle
from .series import DomainError, Series, ShapeError, StructuralKind, VectorSeries, shuffle, shuffle_inverse
from .structure import class_of, relative_degree
from .textio import ParseError, format_series, parse_series

__all__ = [
    "Coord",
    "DomainError",
    "EndoG",
    "HElem",
    "HTensor",
    "ParseError",
    "Series",
    "ShapeError",
    "StructuralKind",
    "VectorSeries",
    "antipode",
    "bullet",
    "class_of",
    "compose",
    "delta_shuffle",
    "delta_star",
    "diamond",
    "eval_character",
    "feedback",
    "feedback_residual",
    "format_series",
    "is_admissible",
    "lie_bracket",
    "mathring_delta",
    "mathring_rho",
    "mixed_compose",
    "parse_series",
    "relative_degree",
    "rho",
    "shuffle",
    "shuffle_inverse",
    "star",
    "star_inverse",
    "star_inverse_via_antipode",
    "triangle",
]
