"""Numerics for the conformable derivative D^a f = x^(1-a) f'.

The package is organized around the natural variable u = x^a/a, in which
every conformable equation handled here becomes a classical one.
"""
from .conformable_core import Order, apply_A2alpha, conformable_derivative, from_natural, to_natural
from .eigenbasis import JBasis, eigenvalue, get_basis, j_eval
from .errors import ConformableError

__version__ = "0.1.0"

__all__ = [
    "Order", "apply_A2alpha", "conformable_derivative", "from_natural", "to_natural",
    "JBasis", "eigenvalue", "get_basis", "j_eval", "ConformableError",
]
