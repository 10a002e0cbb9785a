"""Quadratic vector spaces and their Hasse-Witt classes.

A QuadSpace is a nondegenerate symmetric Gram matrix of exact rationals
over a base field; DiagForm is its list of diagonal square classes.  The
module provides diagonalization by congruence, discriminants, hw_1/hw_2,
the isotropic-reduction and scaling identities, graded Hasse-Witt classes
and real signatures.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .coh import (
    H2Class,
    SquareClass,
    TruncClass,
    binom2,
    cup,
    h2_add,
    h2_scale,
    h2_sum,
    h2_zero,
    one_plus_minus_one,
    sq_add,
    sq_minus_one,
    sq_scale,
    sq_sum,
    sqclass,
    trunc_mul,
    trunc_pow,
)
from .errors import Degenerate, FieldMismatch, NotIndependent, NotIsotropic
from .fields import QQ, BaseField
from .linalg import Matrix


@dataclass(frozen=True)
class QuadSpace:
    """A nondegenerate symmetric bilinear form given by its Gram matrix."""

    gram: Matrix
    field: BaseField = QQ

    def __post_init__(self):
        g = self.gram
        n, c = linalg.shape(g)
        if n != c:
            raise Degenerate("Gram matrix must be square")
        if g != linalg.transpose(g):
            raise Degenerate("Gram matrix must be symmetric")
        if n and linalg.det(g) == 0:
            raise Degenerate("Gram matrix is singular")

    @property
    def dim(self) -> int:
        return len(self.gram)


def quad_space(rows, field: BaseField = QQ) -> QuadSpace:
    return QuadSpace(linalg.mat(rows), field)


def diag_space(entries, field: BaseField = QQ) -> QuadSpace:
    return QuadSpace(linalg.mat([[e if i == j else 0 for j in range(len(entries))] for i, e in enumerate(entries)]), field)


@dataclass(frozen=True)
class DiagForm:
    """An orthogonal basis recorded by the square classes of its values."""

    field: BaseField
    entries: tuple[SquareClass, ...]

    def __post_init__(self):
        for e in self.entries:
            if e.field != self.field:
                raise FieldMismatch(f"{e.field} vs {self.field}")

    @property
    def rank(self) -> int:
        return len(self.entries)


def diag_form(field: BaseField, values) -> DiagForm:
    return DiagForm(field, tuple(sqclass(field, v) for v in values))


def diagonalize(D: QuadSpace, order: str = "first") -> DiagForm:
    """Congruence diagonalization; entries are returned as square classes."""
    entries, _ = linalg.congruence_diagonalize(D.gram, order)
    return DiagForm(D.field, tuple(sqclass(D.field, e) for e in entries))


def diagonalize_with_transform(D: QuadSpace, order: str = "first") -> tuple[DiagForm, Matrix]:
    entries, p = linalg.congruence_diagonalize(D.gram, order)
    return DiagForm(D.field, tuple(sqclass(D.field, e) for e in entries)), p


def disc(d: DiagForm) -> SquareClass:
    """Discriminant: the class of the product of the diagonal values."""
    return sq_sum(d.field, d.entries)


def hw1(d: DiagForm) -> SquareClass:
    return disc(d)


def hw2(d: DiagForm) -> H2Class:
    """hw_2 = sum of {a_i, a_j} over i < j."""
    out = h2_zero(d.field)
    es = d.entries
    for i in range(len(es)):
        for j in range(i + 1, len(es)):
            out = h2_add(out, cup(es[i], es[j]))
    return out


def hw_total(d: DiagForm) -> TruncClass:
    return TruncClass(hw1(d), hw2(d))


def direct_sum(d1: DiagForm, d2: DiagForm) -> DiagForm:
    if d1.field != d2.field:
        raise FieldMismatch(f"{d1.field} vs {d2.field}")
    return DiagForm(d1.field, d1.entries + d2.entries)


def isotropic_reduce(D: QuadSpace, W) -> tuple[QuadSpace, int]:
    """Reduce by a totally isotropic subspace W: returns (W_perp/W, dim W).

    hw_2(D) = hw_2(D0) + r {-1, disc D0} + C(r,2) {-1,-1} then holds for the
    returned D0 and r.
    """
    w = linalg.mat(W)
    r = len(w)
    n = D.dim
    if linalg.rank(w) != r:
        raise NotIndependent("isotropic basis is linearly dependent")
    gw = linalg.mul(linalg.mul(w, D.gram), linalg.transpose(w))
    if not linalg.is_zero(gw):
        raise NotIsotropic("the form does not vanish on W")
    # W_perp = kernel of v -> (w_i^T G v)_i
    perp = linalg.nullspace(linalg.mul(w, D.gram))
    # complement of W inside W_perp: greedily extend the row space of w
    chosen = [list(v) for v in w]
    comp = []
    for v in perp:
        cand = chosen + [list(v)]
        if linalg.rank(linalg.mat(cand)) > len(chosen):
            chosen = cand
            comp.append(v)
    if len(comp) != n - 2 * r:
        raise NotIsotropic("W_perp/W has the wrong dimension")
    if comp:
        basis = linalg.mat(comp)
        g0 = linalg.mul(linalg.mul(basis, D.gram), linalg.transpose(basis))
    else:
        g0 = linalg.mat([])
    return QuadSpace(g0, D.field), r


def scale_hw(d: DiagForm, a: SquareClass) -> TruncClass:
    """Total Hasse-Witt class of the a-scaled form, by the closed formula

    hw(D, a b) = 1 + [dim{a} + disc D] +
                 [C(dim,2){a,a} + (dim-1){a, disc D} + hw_2(D)].
    """
    if a.field != d.field:
        raise FieldMismatch(f"{a.field} vs {d.field}")
    n = d.rank
    dd = disc(d)
    s1 = sq_add(sq_scale(n, a), dd)
    s2 = h2_sum(
        d.field,
        [
            h2_scale(binom2(n), cup(a, a)),
            h2_scale(n - 1, cup(a, dd)),
            hw2(d),
        ],
    )
    return TruncClass(s1, s2)


def scale_entries(d: DiagForm, a: SquareClass) -> DiagForm:
    return DiagForm(d.field, tuple(sq_add(e, a) for e in d.entries))


@dataclass(frozen=True)
class GradedQuadSpace:
    """A graded quadratic space: middle piece plus paired isotropic weights.

    Only the dimensions of the q < 0 pieces matter for the invariants, so
    offdiag records (q, dim D^q) for q < 0.
    """

    middle: QuadSpace
    offdiag: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for q, dim in self.offdiag:
            if q >= 0 or dim < 0:
                raise Degenerate(f"offdiag entries need q < 0, dim >= 0: ({q},{dim})")

    @property
    def shift_count(self) -> int:
        """r = sum over q < 0 of (-1)^q dim D^q."""
        return sum((-1) ** q * dim for q, dim in self.offdiag)


def graded_hw(Dg: GradedQuadSpace) -> tuple[SquareClass, H2Class]:
    """(hw_1, hw_2) of the graded space:

    hw_1 = disc D0 + r{-1},
    hw_2 = hw_2(D0) + r{-1, disc D0} + C(r,2){-1,-1}.
    """
    d0 = diagonalize(Dg.middle)
    field = d0.field
    r = Dg.shift_count
    m1 = sq_minus_one(field)
    g1 = sq_add(disc(d0), sq_scale(r, m1))
    g2 = h2_sum(
        field,
        [
            hw2(d0),
            h2_scale(r, cup(m1, disc(d0))),
            h2_scale(binom2(r), cup(m1, m1)),
        ],
    )
    return g1, g2


def graded_hw_product_form(Dg: GradedQuadSpace) -> TruncClass:
    """Equivalent product formulation hw(D0) * (1 + {-1})^r."""
    d0 = diagonalize(Dg.middle)
    return trunc_mul(hw_total(d0), trunc_pow(one_plus_minus_one(d0.field), Dg.shift_count))


def signature(D: QuadSpace) -> tuple[int, int]:
    """(positive, negative) inertia counts of a rational Gram matrix."""
    entries, _ = linalg.congruence_diagonalize(D.gram)
    plus = sum(1 for e in entries if e > 0)
    minus = sum(1 for e in entries if e < 0)
    return plus, minus


def hyperbolic_plane(field: BaseField = QQ) -> QuadSpace:
    return quad_space([[0, 1], [1, 0]], field)


def real_hw_from_signature(field: BaseField, dminus: int) -> tuple[SquareClass, H2Class]:
    """Over R: hw_1 = d^- {-1} and hw_2 = C(d^-, 2) {-1,-1}."""
    m1 = sq_minus_one(field)
    return sq_scale(dminus, m1), h2_scale(binom2(dminus), cup(m1, m1))
