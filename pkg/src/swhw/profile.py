"""Cohomological profiles of proper smooth even-dimensional varieties.

A CohomProfile bundles the numeric data (Betti numbers, Hodge diamond) and
the class data (middle de Rham discriminant and Hasse-Witt class, the
determinant characters e_q, optionally the middle Stiefel-Whitney class)
of such a variety over Q, Q_p or R.  On top of it the module evaluates the
degree-2 comparison identity in its three equivalent formulations (plain,
primed, graded), solves for the Stiefel-Whitney class, checks the
determinant formula, the Hodge/de Rham comparison, the characteristic-0
congruences and the Lefschetz refinements, the good-reduction residue
identity, and the real-place identity for synthesized polarized Hodge
structures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .coh import (
    H2Class,
    SquareClass,
    binom2,
    boundary,
    c_ell,
    cup,
    h2_add,
    h2_scale,
    h2_sum,
    h2_zero,
    sq_add,
    sq_minus_one,
    sq_one,
    sq_scale,
    sq_sum,
    sqclass,
)
from .errors import (
    HodgeConditionViolated,
    InconsistentSynthesis,
    MissingInput,
    ParityViolation,
    SwhwError,
    ValidationFailed,
)
from .fields import QQ, BaseField, Padic, Place, Rationals, REAL_PLACE, is_prime, parse_field

PLAIN = "plain"
PRIMED = "primed"
GRADED = "graded"
FORMS = (PLAIN, PRIMED, GRADED)


@dataclass(frozen=True)
class LefschetzData:
    """Dimensions and determinant characters of the primitive pieces P^q,
    q even, q <= n."""

    prim_dims: tuple[int, ...]  # index q/2, q = 0, 2, ..., n
    prim_dets: tuple[SquareClass, ...]


@dataclass(frozen=True)
class CohomProfile:
    n: int
    betti: tuple[int, ...]  # b_0 .. b_{2n}
    hodge: tuple[tuple[int, ...], ...]  # h[p][q], 0 <= p, q <= n
    dX: SquareClass
    eq_chars: tuple[SquareClass, ...]  # e_0 .. e_n
    hw2_in: H2Class
    ell: int
    field: BaseField
    sw2_in: H2Class | None = None
    lef: LefschetzData | None = None

    def __post_init__(self):
        validate_profile(self)

    # -- numeric accessors --------------------------------------------------

    def b(self, q: int) -> int:
        return self.betti[q] if 0 <= q <= 2 * self.n else 0

    def h(self, p: int, q: int) -> int:
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return self.hodge[p][q]
        return 0


def validate_profile(P: CohomProfile) -> None:
    n = P.n
    if n < 0 or n % 2:
        raise ValidationFailed(f"dimension must be even and >= 0: {n}")
    if isinstance(P.field, Padic) and P.field.p == P.ell:
        pass  # ell = p is allowed (crystalline comparisons use it)
    if not is_prime(P.ell):
        raise ValidationFailed(f"ell must be prime: {P.ell}")
    if len(P.betti) != 2 * n + 1:
        raise ValidationFailed("betti must list b_0 .. b_{2n}")
    if len(P.hodge) != n + 1 or any(len(row) != n + 1 for row in P.hodge):
        raise ValidationFailed("hodge must be an (n+1) x (n+1) table")
    if len(P.eq_chars) != n + 1:
        raise ValidationFailed("eq_chars must list e_0 .. e_n")
    for p in range(n + 1):
        for q in range(n + 1):
            if P.hodge[p][q] != P.hodge[q][p]:
                raise ValidationFailed(f"Hodge symmetry fails at ({p},{q})")
            if P.hodge[p][q] != P.hodge[n - p][n - q]:
                raise ValidationFailed(f"Serre duality fails at ({p},{q})")
    for q in range(2 * n + 1):
        total = sum(P.h(p, q - p) for p in range(n + 1))
        if total != P.betti[q]:
            raise ValidationFailed(f"b_{q} != sum of Hodge numbers: {P.betti[q]} vs {total}")
        if q % 2 and P.betti[q] % 2:
            raise ValidationFailed(f"odd-degree Betti number b_{q} must be even")
    for q in range(n + 1):
        if q % 2 and not P.eq_chars[q].is_trivial:
            raise ValidationFailed(f"e_{q} must be trivial for odd q")
    for c in (P.dX, *P.eq_chars):
        if c.field != P.field:
            raise ValidationFailed("class data must live over the profile field")
    if P.hw2_in.field != P.field:
        raise ValidationFailed("hw2 must live over the profile field")
    if P.sw2_in is not None and P.sw2_in.field != P.field:
        raise ValidationFailed("sw2 must live over the profile field")
    if P.lef is not None:
        dims = P.lef.prim_dims
        if len(dims) != n // 2 + 1 or len(P.lef.prim_dets) != n // 2 + 1:
            raise ValidationFailed("Lefschetz data must cover q = 0, 2, ..., n")
        if dims[0] != P.betti[0]:
            raise ValidationFailed("dim P^0 must equal b_0")
        for q in range(2, n + 1, 2):
            if P.betti[q] - P.betti[q - 2] != dims[q // 2]:
                raise ValidationFailed(f"dim P^{q} must equal b_{q} - b_{q-2}")


# ---------------------------------------------------------------------------
# derived invariants


def euler_omega(P: CohomProfile, q: int) -> int:
    """chi(X, Omega^q) = sum over p of (-1)^p h^{q,p}."""
    return sum((-1) ** p * P.h(q, p) for p in range(P.n + 1))


def derive_invariants(P: CohomProfile) -> dict:
    n = P.n
    m = n // 2
    r = sum((-1) ** q * P.b(q) for q in range(n))
    two_beta = sum((-1) ** q * (n - q) * P.b(q) for q in range(n))
    if two_beta % 2:
        raise ValidationFailed("beta is not an integer")
    beta = two_beta // 2
    eta = sum((-1) ** q * (m - q) * euler_omega(P, q) for q in range(m))
    h = sum((m - q) * P.h(q, n - q) for q in range(m))
    if n % 4 == 0:
        rprime = sum((-1) ** (q // 2) * P.b(q) for q in range(0, n, 2))
    else:
        rprime = -sum((-1) ** (q // 2) * P.b(q) for q in range(0, n, 2)) + P.b(n)
    if (P.b(n) - P.h(m, m)) % 2:
        raise ParityViolation("b_n and h^{m,m} have different parities")
    s = (P.b(n) - P.h(m, m)) // 2
    e = sq_sum(P.field, (P.eq_chars[q] for q in range(n)))
    return {"r": r, "beta": beta, "eta": eta, "h": h, "rprime": rprime, "s": s, "e": e}


# ---------------------------------------------------------------------------
# the three formulations of the comparison identity


def _primed_data(P: CohomProfile) -> tuple[H2Class, SquareClass]:
    """(hw_2', d') of the middle form scaled by (-1)^{n/2}."""
    if P.n % 4 == 0:
        return P.hw2_in, P.dX
    bn = P.b(P.n)
    m1 = sq_minus_one(P.field)
    hw2p = h2_sum(
        P.field,
        [P.hw2_in, h2_scale(bn - 1, cup(P.dX, m1)), h2_scale(binom2(bn), cup(m1, m1))],
    )
    dp = sq_add(P.dX, sq_scale(bn, m1))
    return hw2p, dp


def graded_sw2_lhs(P: CohomProfile) -> H2Class:
    """sw_2 of the graded ell-adic object: sw_2 plus the cbar1 of the
    twisted determinants det H^q = e_q * chi_ell^{(n-q) b_q / 2}, q < n."""
    if P.sw2_in is None:
        raise MissingInput("profile has no sw2 input")
    n = P.n
    m1 = sq_minus_one(P.field)
    out = P.sw2_in
    for q in range(n):
        out = h2_add(out, cup(P.eq_chars[q], m1))
        k = ((n - q) * P.b(q)) // 2
        out = h2_add(out, h2_scale(k, c_ell(P.ell, P.field)))
    return out


def conjecture_sides(P: CohomProfile, form: str = PLAIN) -> tuple[H2Class, H2Class]:
    """Both sides of the comparison identity in the requested formulation.

    The three formulations are equivalent as exact class identities: they
    must agree in verdict and in difference class on any profile.
    """
    if form not in FORMS:
        raise SwhwError(f"unknown form {form!r}")
    if P.sw2_in is None:
        raise MissingInput("profile has no sw2 input")
    inv = derive_invariants(P)
    field = P.field
    m1 = sq_minus_one(field)
    cl = c_ell(P.ell, field)
    c2 = c_ell(2, field)

    if form == GRADED:
        lhs = graded_sw2_lhs(P)
    else:
        lhs = h2_sum(
            field,
            [P.sw2_in, cup(inv["e"], m1), h2_scale(inv["beta"], cl)],
        )

    common = h2_add(cup(sqclass(field, 2), P.dX), h2_scale(inv["eta"], h2_add(cl, c2)))
    if form == PLAIN:
        r_eff = inv["r"] if P.n % 4 == 0 else inv["r"] + P.b(P.n)
        shift = P.n % 4 != 0
        rhs = h2_sum(
            field,
            [
                P.hw2_in,
                h2_scale(r_eff - (1 if shift else 0), cup(P.dX, m1)),
                h2_scale(binom2(r_eff), cup(m1, m1)),
                common,
            ],
        )
    else:
        hw2p, dp = _primed_data(P)
        rhs = h2_sum(
            field,
            [
                hw2p,
                h2_scale(inv["r"], cup(dp, m1)),
                h2_scale(binom2(inv["r"]), cup(m1, m1)),
                common,
            ],
        )
    return lhs, rhs


def solve_sw2(P: CohomProfile) -> H2Class:
    """The middle Stiefel-Whitney class forced by the comparison identity."""
    inv = derive_invariants(P)
    field = P.field
    m1 = sq_minus_one(field)
    cl = c_ell(P.ell, field)
    c2 = c_ell(2, field)
    r_eff = inv["r"] if P.n % 4 == 0 else inv["r"] + P.b(P.n)
    shift = P.n % 4 != 0
    rhs = h2_sum(
        field,
        [
            P.hw2_in,
            h2_scale(r_eff - (1 if shift else 0), cup(P.dX, m1)),
            h2_scale(binom2(r_eff), cup(m1, m1)),
            cup(sqclass(field, 2), P.dX),
            h2_scale(inv["eta"], h2_add(cl, c2)),
        ],
    )
    # move the lhs corrections across (everything is 2-torsion)
    return h2_sum(field, [rhs, cup(inv["e"], m1), h2_scale(inv["beta"], cl)])


def det_formula_check(P: CohomProfile) -> bool:
    """e_n = {d_X} + r{-1} (resp. (r + b_n){-1} for n = 2 mod 4)."""
    inv = derive_invariants(P)
    r_eff = inv["r"] if P.n % 4 == 0 else inv["r"] + P.b(P.n)
    expected = sq_add(P.dX, sq_scale(r_eff, sq_minus_one(P.field)))
    return P.eq_chars[P.n] == expected


def hodge_dR_check(P: CohomProfile, hw2_hodge: H2Class, disc_hodge: SquareClass) -> bool:
    """Middle de Rham vs middle Hodge: hw_2 = hw_2(Hodge) + s{-1, disc} +
    C(s,2){-1,-1} and disc = disc(Hodge) + s{-1}, with b_n = h^{m,m} + 2s."""
    inv = derive_invariants(P)
    s = inv["s"]
    m1 = sq_minus_one(P.field)
    expected_hw2 = h2_sum(
        P.field,
        [hw2_hodge, h2_scale(s, cup(m1, disc_hodge)), h2_scale(binom2(s), cup(m1, m1))],
    )
    expected_d = sq_add(disc_hodge, sq_scale(s, m1))
    return P.hw2_in == expected_hw2 and P.dX == expected_d


# ---------------------------------------------------------------------------
# congruences


@dataclass(frozen=True)
class CongruenceReport:
    entries: tuple[tuple[str, bool], ...]

    @property
    def all_pass(self) -> bool:
        return all(ok for _, ok in self.entries)

    def __str__(self):
        return "; ".join(f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in self.entries)


def congruence_checks(P: CohomProfile) -> CongruenceReport:
    """The characteristic-0 congruences among the derived invariants, and
    the Lefschetz refinements when primitive data is present."""
    inv = derive_invariants(P)
    n, bn = P.n, P.b(P.n)
    r, beta, eta, h, rp = inv["r"], inv["beta"], inv["eta"], inv["h"], inv["rprime"]
    r_eff = r if n % 4 == 0 else r + bn
    out = [
        ("beta = eta + h (mod 2)", (beta - eta - h) % 2 == 0),
        ("r' = r (mod 2, shifted)", (rp - r_eff) % 2 == 0),
        ("C(r',2) = beta + C(r,2) (mod 2, shifted)", (binom2(rp) - beta - binom2(r_eff)) % 2 == 0),
    ]
    if P.lef is not None:
        dims = P.lef.prim_dims
        if n % 4 == 0:
            opposite = sum(dims[q // 2] for q in range(2, n, 4))  # q = 2 mod 4, q < n
        else:
            opposite = sum(dims[q // 2] for q in range(0, n, 4))  # q = 0 mod 4, q < n
        out.append(("r + 2 beta = -dim P (mod 4)", (r + 2 * beta + opposite) % 4 == 0))
        dets = P.lef.prim_dets
        if n % 4 == 0:
            det_side = sq_sum(P.field, (dets[q // 2] for q in range(2, n, 4)))
        else:
            det_side = sq_sum(P.field, (dets[q // 2] for q in range(0, n, 4)))
        out.append(("e = det P (Lefschetz branch)", inv["e"] == det_side))
    return CongruenceReport(tuple(out))


# ---------------------------------------------------------------------------
# good-reduction residue identity


def crystalline_boundary_check(P: CohomProfile) -> bool:
    """d(solve_sw2) = h * d(c_p) over Q_p under the good-reduction and
    Hodge-vanishing hypotheses."""
    if not isinstance(P.field, Padic):
        raise MissingInput("the residue identity lives over Q_p")
    p = P.field.p
    if P.ell != p:
        raise MissingInput("the residue identity compares at ell = p")
    n, m = P.n, P.n // 2
    for q in range(n + 1):
        if abs(q - m) >= (p - 1) // 2 and P.h(q, n - q) != 0:
            raise HodgeConditionViolated(
                f"h^({q},{n-q}) must vanish for |q - n/2| >= (p-1)/2"
            )
    if P.hw2_in != h2_zero(P.field):
        raise MissingInput("good reduction requires an unramified hw2 input")
    if P.dX.rep % p == 0:
        raise MissingInput("good reduction requires a unit discriminant")
    inv = derive_invariants(P)
    if inv["e"].rep % p == 0:
        raise MissingInput("good reduction requires a unit e")
    lhs = boundary(solve_sw2(P))
    rhs = sq_scale(inv["h"], boundary(c_ell(p, P.field)))
    return lhs == rhs


# ---------------------------------------------------------------------------
# the real place


@dataclass(frozen=True)
class RealHodge:
    """A polarized weight-0 real Hodge structure, recorded by the dimensions
    h^{p,-p} (p > 0) and the two eigenvalue multiplicities on the (0,0) part."""

    hpq: tuple[int, ...] = ()  # h^{p,-p} for p = 1, 2, ...
    h00plus: int = 0
    h00minus: int = 0

    def __post_init__(self):
        if any(x < 0 for x in self.hpq) or self.h00plus < 0 or self.h00minus < 0:
            raise InconsistentSynthesis("multiplicities must be nonnegative")

    @property
    def dim(self) -> int:
        return 2 * sum(self.hpq) + self.h00plus + self.h00minus


def real_counts(H: RealHodge) -> tuple[int, int]:
    """(v^-, d^-): both equal sum of h^{p,-p} (p > 0) plus h^{0,0,-}."""
    v = sum(H.hpq) + H.h00minus
    return v, v


def real_identity_check(n: int, pieces: dict[int, RealHodge], odd_betti: dict[int, int] | None = None) -> bool:
    """The real-place identity, evaluated on a variety synthesized from
    polarized primitive pieces P^q (q even, q <= n) plus optional even
    odd-degree Betti numbers.

    Both sides live in H^2(R, Z/2) = Z/2: the left side is computed from
    conjugation eigenvalue counts (sw_2 = C(v^-, 2){-1,-1}), the right side
    from the signature of the twisted de Rham form assembled piecewise.
    """
    if n < 0 or n % 2:
        raise InconsistentSynthesis("n must be even and >= 0")
    odd_betti = dict(odd_betti or {})
    for q, b in odd_betti.items():
        if q % 2 == 0 or not (0 < q < n) or b < 0 or b % 2:
            raise InconsistentSynthesis(f"odd Betti numbers must be even, 0 < q < n: b_{q}={b}")
    for q in pieces:
        if q % 2 or not (0 <= q <= n):
            raise InconsistentSynthesis(f"primitive pieces live in even degrees <= n: {q}")

    dims = {q: pieces.get(q, RealHodge()).dim for q in range(0, n + 1, 2)}
    vminus = {q: real_counts(pieces.get(q, RealHodge()))[0] for q in range(0, n + 1, 2)}

    # Betti numbers: hard Lefschetz stacks the primitive pieces
    betti = {}
    for q in range(0, n + 1, 2):
        betti[q] = sum(dims[qq] for qq in range(0, q + 1, 2))
    for q, b in odd_betti.items():
        betti[q] = b

    r = sum((-1) ** q * betti.get(q, 0) for q in range(n))
    two_beta = sum((-1) ** q * (n - q) * betti.get(q, 0) for q in range(n))
    if two_beta % 2:
        raise InconsistentSynthesis("beta failed to be an integer")
    beta = two_beta // 2

    # eigenvalue -1 multiplicities accumulate along the Lefschetz filtration
    e_minus_at = {}
    acc = 0
    for q in range(0, n + 1, 2):
        acc += vminus[q]
        e_minus_at[q] = acc
    en_minus = e_minus_at[n]
    e_minus = sum(e_minus_at[q] for q in range(0, n, 2))

    # twisted de Rham signature: piece q contributes v^- negatives when
    # q = n mod 4 and dim - v^- otherwise
    dprime_minus = sum(
        vminus[q] if (n - q) % 4 == 0 else dims[q] - vminus[q]
        for q in range(0, n + 1, 2)
    )

    lhs_bit = (binom2(en_minus) + e_minus + beta) % 2
    rhs_bit = (binom2(dprime_minus) + r * dprime_minus + binom2(r)) % 2
    return lhs_bit == rhs_bit


def real_parity_congruence(n: int, pieces: dict[int, RealHodge]) -> bool:
    """The mod-4 congruence behind the real identity:
    e_n^- - 2 e^- = d'^- - dim P^(opposite branch) (mod 4)."""
    dims = {q: pieces.get(q, RealHodge()).dim for q in range(0, n + 1, 2)}
    vminus = {q: real_counts(pieces.get(q, RealHodge()))[0] for q in range(0, n + 1, 2)}
    acc = 0
    e_at = {}
    for q in range(0, n + 1, 2):
        acc += vminus[q]
        e_at[q] = acc
    en_minus = e_at[n]
    e_minus = sum(e_at[q] for q in range(0, n, 2))
    dprime_minus = sum(
        vminus[q] if (n - q) % 4 == 0 else dims[q] - vminus[q]
        for q in range(0, n + 1, 2)
    )
    if n % 4 == 0:
        wrong_branch = sum(dims[q] for q in range(2, n, 4))
    else:
        wrong_branch = sum(dims[q] for q in range(0, n, 4))
    return (en_minus - 2 * e_minus - dprime_minus + wrong_branch) % 4 == 0


# ---------------------------------------------------------------------------
# profile builders


def _hilbert_series_coeffs(d: int, vars_: int, upto: int) -> list[int]:
    """Coefficients of ((1 - t^{d-1}) / (1 - t))^vars_ up to degree upto."""
    base = [1] * (d - 1)  # 1 + t + ... + t^{d-2}
    out = [1]
    for _ in range(vars_):
        new = [0] * min(len(out) + len(base) - 1, upto + 1)
        for i, a in enumerate(out):
            if a:
                for j, b in enumerate(base):
                    if i + j <= upto:
                        new[i + j] += a * b
        out = new
    return out + [0] * (upto + 1 - len(out))


def hypersurface_profile(
    n: int,
    d: int,
    ell: int = 5,
    field: BaseField = QQ,
    with_lefschetz: bool = True,
) -> CohomProfile:
    """Profile of a smooth degree-d hypersurface in P^{n+1} (n even).

    Middle primitive Hodge numbers come from the Jacobian-ring dimension
    count: h^{q, n-q}_prim is the degree-((q+1)d - (n+2)) coefficient of
    ((1 - t^{d-1})/(1 - t))^{n+2}.  Off-middle cohomology is spanned by
    powers of the hyperplane class.  All e_q are trivial except e_n, which
    is set by the determinant formula so the profile is self-consistent.
    """
    if n < 0 or n % 2:
        raise SwhwError("n must be even and >= 0")
    if d < 2:
        raise SwhwError("d must be >= 2")
    top = (n + 2) * (d - 2)
    series = _hilbert_series_coeffs(d, n + 2, max(top, 0))
    prim = []
    for q in range(n + 1):
        degree = (q + 1) * d - (n + 2)
        prim.append(series[degree] if 0 <= degree <= top else 0)
    hodge = [[0] * (n + 1) for _ in range(n + 1)]
    for p in range(n + 1):
        hodge[p][p] = 1 if p != n // 2 else 0
    for q in range(n + 1):
        hodge[q][n - q] += prim[q]
    hodge[n // 2][n // 2] += 1  # the power of the hyperplane class
    betti = [0] * (2 * n + 1)
    for q in range(0, 2 * n + 1, 2):
        betti[q] = 1
    betti[n] = sum(prim) + 1
    dX = sq_one(field)
    eq = [sq_one(field) for _ in range(n + 1)]
    r = sum((-1) ** q * betti[q] for q in range(n))
    r_eff = r if n % 4 == 0 else r + betti[n]
    eq[n] = sq_add(dX, sq_scale(r_eff, sq_minus_one(field)))
    lef = None
    if with_lefschetz and n > 0:
        dims = [betti[0]] + [betti[q] - betti[q - 2] for q in range(2, n + 1, 2)]
        dets = [eq[0]]
        for q in range(2, n + 1, 2):
            dets.append(sq_add(eq[q], eq[q - 2]))
        lef = LefschetzData(tuple(dims), tuple(dets))
    return CohomProfile(
        n=n,
        betti=tuple(betti),
        hodge=tuple(tuple(row) for row in hodge),
        dX=dX,
        eq_chars=tuple(eq),
        hw2_in=h2_zero(field),
        ell=ell,
        field=field,
        sw2_in=None,
        lef=lef,
    )


def abelian_surface_profile(
    field: BaseField,
    ell: int,
    dX: SquareClass | None = None,
    hw2_in: H2Class | None = None,
    with_lefschetz: bool = True,
) -> CohomProfile:
    """The abelian-surface profile: b = (1,4,6,4,1), h^{p,q} = C(2,p)C(2,q).

    Defaults describe good reduction: trivial discriminant and characters,
    zero hw_2.
    """
    from math import comb

    hodge = tuple(tuple(comb(2, p) * comb(2, q) for q in range(3)) for p in range(3))
    dX = dX if dX is not None else sq_one(field)
    hw2_in = hw2_in if hw2_in is not None else h2_zero(field)
    eq = [sq_one(field)] * 3
    lef = None
    if with_lefschetz:
        lef = LefschetzData((1, 5), (sq_one(field), sq_one(field)))
    return CohomProfile(
        n=2,
        betti=(1, 4, 6, 4, 1),
        hodge=hodge,
        dX=dX,
        eq_chars=tuple(eq),
        hw2_in=hw2_in,
        ell=ell,
        field=field,
        sw2_in=None,
        lef=lef,
    )


# ---------------------------------------------------------------------------
# JSON interchange


def _parse_h2(field: BaseField, spec) -> H2Class:
    if isinstance(field, Rationals):
        places = frozenset(
            REAL_PLACE if s in ("inf", "oo") else Place(int(s)) for s in spec
        )
        return H2Class(field, places)
    return H2Class(field, int(spec) % 2)


def profile_from_json(text: str) -> CohomProfile:
    data = json.loads(text)
    field = parse_field(data.get("field", "Q"))
    n = int(data["n"])
    betti = tuple(int(b) for b in data["betti"])
    hodge = tuple(tuple(int(x) for x in row) for row in data["hodge"])
    dX = sqclass(field, Fraction(str(data.get("dX", "1"))))
    eq_raw = [sqclass(field, Fraction(str(x))) for x in data.get("eq", [])]
    while len(eq_raw) < n:
        eq_raw.append(sq_one(field))
    hw2_in = _parse_h2(field, data["hw2"]) if data.get("hw2") is not None else h2_zero(field)
    sw2_in = _parse_h2(field, data["sw2"]) if data.get("sw2") is not None else None
    ell = int(data.get("ell", 5))
    if len(eq_raw) == n:
        # e_n defaults to the determinant-formula value
        r = sum((-1) ** q * betti[q] for q in range(n))
        r_eff = r if n % 4 == 0 else r + betti[n]
        eq_raw.append(sq_add(dX, sq_scale(r_eff, sq_minus_one(field))))
    return CohomProfile(
        n=n,
        betti=betti,
        hodge=hodge,
        dX=dX,
        eq_chars=tuple(eq_raw[: n + 1]),
        hw2_in=hw2_in,
        ell=ell,
        field=field,
        sw2_in=sw2_in,
        lef=None,
    )


def h2_to_json(x: H2Class):
    if isinstance(x.field, Rationals):
        from .fields import sorted_places

        return [str(v) for v in sorted_places(x.rep)]
    return x.rep
