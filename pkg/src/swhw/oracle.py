"""Brute-force solvability oracle for the Hilbert symbol.

The oracle decides whether z^2 = a x^2 + b y^2 has a nontrivial solution
over a completion of Q by sheer congruence search: a primitive solution
mod p^3 for odd p, mod 2^6 for p = 2, and a sign check over R.  It shares
no code with the epsilon/omega/Legendre formulas in coh.hilbert_symbol.

A primitive triple has some unit coordinate; dividing by its square turns
the search into three one-variable sweeps (a + b Y^2 = Z^2, a X^2 + b = Z^2,
a X^2 + b Y^2 = 1 over all residues), which numpy scans directly.  Results
depend only on the square classes of a and b, so they are cached per class.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .coh import _as_integer_pair, squarefree_part
from .fields import Place


@lru_cache(maxsize=None)
def _squares_mod(m: int) -> np.ndarray:
    x = np.arange(m, dtype=np.int64)
    return (x * x) % m


@lru_cache(maxsize=None)
def _square_set(m: int) -> np.ndarray:
    return np.unique(_squares_mod(m))


def _solvable_mod(a: int, b: int, m: int) -> bool:
    """Is there a primitive (x, y, z) mod m with a x^2 + b y^2 = z^2?"""
    a %= m
    b %= m
    sq = _squares_mod(m)
    sqset = _square_set(m)
    # x a unit: a + b Y^2 = Z^2 for some residues Y, Z
    if np.isin((a + b * sq) % m, sqset).any():
        return True
    # y a unit: a X^2 + b = Z^2
    if np.isin((a * sq + b) % m, sqset).any():
        return True
    # z a unit: a X^2 + b Y^2 = 1; scan X, test (1 - a X^2) against b * squares
    bsq = np.unique((b * sq) % m)
    if np.isin((1 - a * sq) % m, bsq).any():
        return True
    return False


@lru_cache(maxsize=None)
def _solvable_class(a: int, b: int, p: int) -> bool:
    m = 64 if p == 2 else p**3
    return _solvable_mod(a, b, m)


def solvable(a, b, v: Place) -> bool:
    """Nontrivial solvability of z^2 = a x^2 + b y^2 over the completion at v."""
    na = _as_integer_pair(Fraction(a))
    nb = _as_integer_pair(Fraction(b))
    if v.is_real:
        return na > 0 or nb > 0
    # scaling by squares is an isomorphism of the conic, so normalize first
    return _solvable_class(squarefree_part(na), squarefree_part(nb), v.p)


def hilbert_oracle(a, b, v: Place) -> int:
    return 1 if solvable(a, b, v) else -1
