"""Orthogonal representations given by quadratic characters and hyperbolic
summands, their Stiefel-Whitney classes, the order-2 twist formula, graded
classes, and the residue formulas for tamely ramified inputs over Q_p.

Every representation here is a direct sum of one-dimensional orthogonal
pieces (order-<=2 characters, encoded as square classes) and hyperbolic
summands W + W*, recorded by det W and rank W.  This is the class of
inputs on which sw_2 is determined by the Whitney product rule, the
hyperbolic rule sw_2 = cbar1(det W), and the twist formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coh import (
    CharClass,
    H2Class,
    SquareClass,
    TruncClass,
    binom2,
    boundary,
    cbar1,
    cup,
    h2_add,
    h2_scale,
    h2_sum,
    h2_zero,
    residue_class,
    sq_add,
    sq_minus_one,
    sq_one,
    sq_scale,
    sq_sum,
    sqclass,
)
from .errors import BadValuation, EvenResidueChar, FieldMismatch
from .fields import BaseField, Padic, ResidueField
from .quadform import DiagForm


@dataclass(frozen=True)
class HypSummand:
    """A hyperbolic summand W + W*, recorded by det W and rank W."""

    det: CharClass
    rank: int = 1

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("hyperbolic summand needs rank >= 1")


@dataclass(frozen=True)
class OrthRep:
    field: BaseField
    chars: tuple[SquareClass, ...] = ()
    hyps: tuple[HypSummand, ...] = ()

    def __post_init__(self):
        for c in self.chars:
            if c.field != self.field:
                raise FieldMismatch(f"{c.field} vs {self.field}")
        for h in self.hyps:
            if h.det.field != self.field:
                raise FieldMismatch(f"{h.det.field} vs {self.field}")

    @property
    def dim(self) -> int:
        return len(self.chars) + 2 * sum(h.rank for h in self.hyps)


def orth_rep(field: BaseField, chars=(), hyps=()) -> OrthRep:
    return OrthRep(field, tuple(sqclass(field, c) for c in chars), tuple(hyps))


def direct_sum(a: OrthRep, b: OrthRep) -> OrthRep:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return OrthRep(a.field, a.chars + b.chars, a.hyps + b.hyps)


def sw1(V: OrthRep) -> SquareClass:
    """det of the representation; hyperbolic summands contribute trivially
    (det of g + g*^-1 is 1)."""
    return sq_sum(V.field, V.chars)


def sw2(V: OrthRep) -> H2Class:
    """Whitney expansion: pairwise cups of the characters, plus cbar1 of the
    determinant of each hyperbolic summand."""
    out = h2_zero(V.field)
    cs = V.chars
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            out = h2_add(out, cup(cs[i], cs[j]))
    for h in V.hyps:
        out = h2_add(out, cbar1(h.det))
    return out


def sw_total(V: OrthRep) -> TruncClass:
    return TruncClass(sw1(V), sw2(V))


def twist(V: OrthRep, chi: SquareClass) -> OrthRep:
    """Tensor with an order-<=2 character: characters multiply, and a
    hyperbolic summand's det picks up chi^rank."""
    if chi.field != V.field:
        raise FieldMismatch(f"{chi.field} vs {V.field}")
    chars = tuple(sq_add(c, chi) for c in V.chars)
    hyps = tuple(
        HypSummand(
            CharClass(sq_add(h.det.eps, sq_scale(h.rank, chi)), h.det.k, h.det.ell),
            h.rank,
        )
        for h in V.hyps
    )
    return OrthRep(V.field, chars, hyps)


def twist_sw2_formula(V: OrthRep, chi: SquareClass) -> H2Class:
    """sw_2(rho (x) chi) = sw_2(rho) + (n-1) det rho u chi + C(n,2) chi u chi."""
    if chi.field != V.field:
        raise FieldMismatch(f"{chi.field} vs {V.field}")
    n = V.dim
    return h2_sum(
        V.field,
        [
            sw2(V),
            h2_scale(n - 1, cup(sw1(V), chi)),
            h2_scale(binom2(n), cup(chi, chi)),
        ],
    )


def graded_sw2(V0: OrthRep, lower) -> H2Class:
    """sw_2 of a graded representation: sw_2(V0) + sum of cbar1(det V^q)
    over the strictly negative weights; lower is a list of (q, CharClass)."""
    out = sw2(V0)
    for q, det in lower:
        if q >= 0:
            raise ValueError(f"graded pieces need q < 0, got {q}")
        out = h2_add(out, cbar1(det))
    return out


# ---------------------------------------------------------------------------
# tame boundary formulas over Q_p


def _require_odd_padic(field: BaseField) -> int:
    if not isinstance(field, Padic):
        raise FieldMismatch(f"expected a p-adic field, got {field}")
    if field.p == 2:
        raise EvenResidueChar("residue formulas assume odd p")
    return field.p


def _require_unramified(V: OrthRep, p: int) -> None:
    for c in V.chars:
        if c.rep % p == 0:
            raise BadValuation(f"character {c.rep} is ramified over Q_{p}")
    for h in V.hyps:
        if h.det.eps.rep % p == 0 or (h.det.k % 2 and h.det.ell == p):
            raise BadValuation("hyperbolic determinant is ramified")


def ramified_sum(V0: OrthRep, V1: OrthRep, chi: SquareClass) -> OrthRep:
    """The representation V0 + (V1 (x) chi), for the two-path cross-check."""
    return direct_sum(V0, twist(V1, chi))


def tame_boundary_sw2(
    V0: OrthRep,
    V1: OrthRep,
    det_total: SquareClass | None = None,
    chi: SquareClass | None = None,
) -> SquareClass:
    """Residue of sw_2 of V0 + (V1 (x) chi) over Q_p, p odd, by the closed
    formula

        d sw_2(V) = C(r,2){-1} + det V1 + (det V / chi if r is odd),

    with r = dim V1, everything reduced to square classes of F_p.  chi is
    the ramified quadratic character of the totally ramified quadratic
    extension (default: the class of p); V0 and V1 must be unramified.
    """
    p = _require_odd_padic(V0.field)
    if V1.field != V0.field:
        raise FieldMismatch(f"{V1.field} vs {V0.field}")
    if chi is None:
        chi = sqclass(V0.field, p)
    if chi.rep % p != 0:
        raise BadValuation(f"chi = {chi.rep} is not ramified over Q_{p}")
    _require_unramified(V0, p)
    _require_unramified(V1, p)
    r = V1.dim
    if det_total is None:
        det_total = sq_add(sq_add(sw1(V0), sw1(V1)), sq_scale(r, chi))
    F = ResidueField(p)
    out = sq_scale(binom2(r), sqclass(F, -1))
    out = sq_add(out, residue_class(sw1(V1)))
    if r % 2:
        unit = sq_add(det_total, chi)
        out = sq_add(out, residue_class(unit))
    return out


def tame_boundary_sw2_direct(V0: OrthRep, V1: OrthRep, chi: SquareClass) -> SquareClass:
    """The other path: assemble V0 + (V1 (x) chi) and push sw_2 through the
    residue boundary of H^2(Q_p)."""
    return boundary(sw2(ramified_sum(V0, V1, chi)))


def tame_boundary_hw2(d: DiagForm, chi: SquareClass | None = None) -> SquareClass:
    """Residue of hw_2 of a p-adic diagonal form with entries of valuation
    0 or 1 (Jordan splitting):

        d hw_2(D) = C(r,2){-1} + disc Lbar_1 + (disc D / d_{K'/K} if r odd),

    with r the number of valuation-1 entries and Lbar_1 their reduced unit
    parts.  chi = d_{K'/K} defaults to the class of p.
    """
    p = _require_odd_padic(d.field)
    if chi is None:
        chi = sqclass(d.field, p)
    if chi.rep % p != 0:
        raise BadValuation(f"chi = {chi.rep} is not ramified over Q_{p}")
    F = ResidueField(p)
    units_of_ramified = []
    for e in d.entries:
        if e.rep % (p * p) == 0:
            raise BadValuation(f"entry {e.rep} has valuation >= 2")
        if e.rep % p == 0:
            units_of_ramified.append(sqclass(d.field, e.rep // p))
    r = len(units_of_ramified)
    disc_l1 = residue_class(sq_sum(d.field, units_of_ramified))
    out = sq_add(sq_scale(binom2(r), sqclass(F, -1)), disc_l1)
    if r % 2:
        disc_total = sq_sum(d.field, d.entries)
        out = sq_add(out, residue_class(sq_add(disc_total, chi)))
    return out


def tame_boundary_hw2_direct(d: DiagForm) -> SquareClass:
    """The other path: hw_2 over Q_p followed by the residue boundary."""
    from .quadform import hw2

    return boundary(hw2(d))
