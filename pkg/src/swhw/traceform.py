"""Trace forms of etale Q-algebras Q[x]/(f) and the Serre-formula checker.

The Gram matrix of (x, y) -> Tr(xy) in the power basis is the Hankel matrix
of power sums of the roots of f, computed exactly by Newton's identities.
The degree-2 comparison sw_2 = hw_2 + {2, disc} is checked against an
independent left-hand side available for abelian algebras: products of
quadratic fields (permutation representation 1 + chi_a per factor) and
odd-abelian factors (which contribute nothing in degree 2, since odd-order
characters are squares).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .coh import H2Class, cup, h2_add, h2_zero, sq_one, sqclass, trunc, trunc_mul, trunc_one
from .errors import DimensionMismatch, NotSquarefree, SwhwError, ZeroInput
from .fields import QQ, BaseField
from .quadform import QuadSpace, diagonalize, disc, hw2

MAX_DEGREE_DEFAULT = 24

# ---------------------------------------------------------------------------
# integer polynomials, ascending coefficient lists


def poly_mul(f: list[int], g: list[int]) -> list[int]:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return out


def poly_add(f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i, a in enumerate(f):
        out[i] += a
    for i, b in enumerate(g):
        out[i] += b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_neg(f: list[int]) -> list[int]:
    return [-a for a in f]


class _PolyParser:
    """Recursive-descent parser for integer polynomial expressions in x.

    Grammar: sums/differences of products of powers of atoms, where an atom
    is an integer, 'x', or a parenthesized expression.  Adjacent atoms
    multiply, so "(x^2-2)(x^2-3)" works.
    """

    def __init__(self, text: str):
        self.text = text.replace(" ", "")
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def parse(self) -> list[int]:
        out = self.expr()
        if self.pos != len(self.text):
            raise SwhwError(f"trailing input in polynomial: {self.text[self.pos:]!r}")
        return out

    def expr(self) -> list[int]:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take() == "-" else 1
        out = self.term()
        if sign < 0:
            out = poly_neg(out)
        while self.peek() in "+-":
            op = self.take()
            t = self.term()
            out = poly_add(out, poly_neg(t) if op == "-" else t)
        return out

    def term(self) -> list[int]:
        out = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.take()
                out = poly_mul(out, self.factor())
            elif ch == "(" or ch == "x" or ch.isdigit():
                out = poly_mul(out, self.factor())
            else:
                return out

    def factor(self) -> list[int]:
        base = self.atom()
        while self.peek() == "^":
            self.take()
            exp = self.integer()
            if exp < 0:
                raise SwhwError("negative exponent in polynomial")
            out = [1]
            for _ in range(exp):
                out = poly_mul(out, base)
            base = out
        return base

    def atom(self) -> list[int]:
        ch = self.peek()
        if ch == "(":
            self.take()
            out = self.expr()
            if self.take() != ")":
                raise SwhwError("unbalanced parentheses in polynomial")
            return out
        if ch == "x":
            self.take()
            return [0, 1]
        if ch.isdigit():
            return [self.integer()]
        raise SwhwError(f"unexpected character {ch!r} in polynomial")

    def integer(self) -> int:
        sign = 1
        if self.peek() in "+-":
            sign = -1 if self.take() == "-" else 1
        digits = ""
        while self.peek().isdigit():
            digits += self.take()
        if not digits:
            raise SwhwError("expected an integer in polynomial")
        return sign * int(digits)


def parse_poly(text: str) -> list[int]:
    return _PolyParser(text).parse()


def poly_derivative(f: list[int]) -> list[Fraction]:
    return [Fraction(i * a) for i, a in enumerate(f)][1:]


def _poly_gcd_degree(f, g) -> int:
    """Degree of gcd(f, g) over Q, by the Euclidean algorithm."""
    a = [Fraction(c) for c in f]
    b = [Fraction(c) for c in g]

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        # a mod b
        while len(a) >= len(b) and a:
            q = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[i + shift] -= q * c
            a = trim(a)
        a, b = b, a
    return len(a) - 1


@dataclass(frozen=True)
class EtaleAlgebra:
    """Q[x]/(f) for a monic squarefree integer polynomial f."""

    coeffs: tuple[int, ...]  # ascending; leading coefficient 1

    def __post_init__(self):
        c = self.coeffs
        if len(c) < 2:
            raise ZeroInput("polynomial must have degree >= 1")
        if c[-1] != 1:
            raise SwhwError("polynomial must be monic")
        if _poly_gcd_degree(list(c), poly_derivative(list(c))) != 0:
            raise NotSquarefree("polynomial has a repeated root")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def etale(text_or_coeffs) -> EtaleAlgebra:
    if isinstance(text_or_coeffs, str):
        return EtaleAlgebra(tuple(parse_poly(text_or_coeffs)))
    return EtaleAlgebra(tuple(text_or_coeffs))


def power_sums(f: tuple[int, ...], count: int) -> list[int]:
    """p_0 .. p_{count-1} for the roots of monic f, by Newton's identities:
    p_k = e_1 p_{k-1} - e_2 p_{k-2} + ... with the (-1)^{k-1} k e_k tail."""
    n = len(f) - 1
    # f = x^n + c_{n-1} x^{n-1} + ... + c_0 has e_i = (-1)^i c_{n-i}
    e = [0] * (n + 1)
    e[0] = 1
    for i in range(1, n + 1):
        e[i] = (-1) ** i * f[n - i]
    p = [n]
    for k in range(1, count):
        s = 0
        for i in range(1, min(k, n) + 1):
            if i < k:
                s += (-1) ** (i - 1) * e[i] * p[k - i]
            else:
                s += (-1) ** (k - 1) * k * e[k]
        p.append(s)
    return p


def trace_gram(A: EtaleAlgebra, max_degree: int = MAX_DEGREE_DEFAULT) -> QuadSpace:
    """Gram matrix of the trace form in the power basis: Gram[i][j] = p_{i+j}."""
    n = A.degree
    if n > max_degree:
        raise SwhwError(f"degree {n} exceeds the cap {max_degree}")
    p = power_sums(A.coeffs, 2 * n - 1)
    rows = [[p[i + j] for j in range(n)] for i in range(n)]
    return QuadSpace(linalg.mat(rows), QQ)


def poly_disc_class(A: EtaleAlgebra):
    """Square class of disc(f), read off the trace form determinant."""
    return sqclass(QQ, linalg.det(trace_gram(A).gram))


# ---------------------------------------------------------------------------
# abelian splittings and the independent degree-2 oracle


@dataclass(frozen=True)
class QuadraticField:
    """The factor Q(sqrt(a)), a squarefree."""

    a: int

    def __post_init__(self):
        from .coh import squarefree_part

        if self.a in (0, 1) or squarefree_part(self.a) != self.a:
            raise SwhwError(f"need a squarefree integer != 0, 1: {self.a}")

    @property
    def dim(self) -> int:
        return 2


@dataclass(frozen=True)
class OddAbelian:
    """An abelian factor of odd degree; contributes nothing to sw_2."""

    dim: int

    def __post_init__(self):
        if self.dim < 1 or self.dim % 2 == 0:
            raise SwhwError(f"odd-abelian factor needs odd dim: {self.dim}")


@dataclass(frozen=True)
class AbelianSplitting:
    factors: tuple

    @property
    def dim(self) -> int:
        return sum(f.dim for f in self.factors)


def splitting(*factors) -> AbelianSplitting:
    return AbelianSplitting(tuple(factors))


def perm_sw2_oracle(split: AbelianSplitting, field: BaseField = QQ) -> H2Class:
    """sw_2 of the permutation representation of an abelian etale algebra.

    Each Q(sqrt(a)) contributes the total class of 1 + chi_a, each odd
    factor the trivial total class; the degree-2 part of the product is the
    oracle value.
    """
    total = trunc_one(field)
    for f in split.factors:
        if isinstance(f, QuadraticField):
            total = trunc_mul(total, trunc(sqclass(field, f.a)))
        elif isinstance(f, OddAbelian):
            pass  # odd-order characters are squares: cbar1 vanishes
        else:
            raise SwhwError(f"unknown splitting factor {f!r}")
    return total.s2


@dataclass(frozen=True)
class SerreReport:
    lhs: H2Class | None
    rhs: H2Class
    equal: bool | None

    @property
    def oracle_unavailable(self) -> bool:
        return self.lhs is None


def serre_rhs(A: EtaleAlgebra) -> H2Class:
    """hw_2 of the trace form plus {2, disc}."""
    d = diagonalize(trace_gram(A))
    return h2_add(hw2(d), cup(sqclass(QQ, 2), disc(d)))


def serre_check(A: EtaleAlgebra, split: AbelianSplitting | None) -> SerreReport:
    """Compare the permutation-representation sw_2 with hw_2 + {2, disc}."""
    rhs = serre_rhs(A)
    if split is None:
        return SerreReport(None, rhs, None)
    if split.dim != A.degree:
        raise DimensionMismatch(f"splitting dim {split.dim} != degree {A.degree}")
    lhs = perm_sw2_oracle(split, QQ)
    return SerreReport(lhs, rhs, lhs == rhs)


def quadratic_product_poly(discs) -> EtaleAlgebra:
    """The polynomial prod (x^2 - a) for distinct squarefree a's."""
    f = [1]
    for a in discs:
        f = poly_mul(f, [-a, 0, 1])
    return EtaleAlgebra(tuple(f))
