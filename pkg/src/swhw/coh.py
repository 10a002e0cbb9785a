"""Mod-2 Galois cohomology in degrees 1 and 2 over Q, Q_p, R and F_p.

H^1(K, Z/2) is the square-class group K*/K*^2 with a canonical integer
representative per field.  H^2(K, Z/2) is represented over Q by the finite
set of places where a class has nonzero local invariant (always of even
cardinality, by Hilbert reciprocity), over Q_p and R by a single bit, and
is zero over a finite field.  Cup products are computed through the
classical Hilbert symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    CharacteristicClash,
    EvenResidueChar,
    FieldMismatch,
    SwhwError,
    ZeroInput,
)
from .fields import (
    QQ,
    BaseField,
    Padic,
    Place,
    Rationals,
    Reals,
    REAL_PLACE,
    ResidueField,
    is_prime,
    sorted_places,
)

Rational = int | Fraction


def _as_integer_pair(a: Rational) -> int:
    """A nonzero rational times a square is an integer: n/d ~ n*d."""
    f = Fraction(a)
    if f == 0:
        raise ZeroInput("0 has no square class")
    return f.numerator * f.denominator


@lru_cache(maxsize=None)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of |n| as ((p, exponent), ...)."""
    n = abs(n)
    out = []
    for p in (2, 3, 5):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    d = 7
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@lru_cache(maxsize=None)
def squarefree_part(n: int) -> int:
    if n == 0:
        raise ZeroInput("0 has no squarefree part")
    s = -1 if n < 0 else 1
    for p, e in _factor(n):
        if e % 2:
            s *= p
    return s


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for odd p and a prime to p."""
    a %= p
    if a == 0:
        raise ZeroInput(f"{a} is not a unit mod {p}")
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


@lru_cache(maxsize=None)
def least_nonsquare(p: int) -> int:
    """Least positive nonsquare unit mod an odd prime p."""
    u = 2
    while legendre(u, p) == 1:
        u += 1
    return u


def _padic_val(n: int, p: int) -> tuple[int, int]:
    """(v, u) with n = p^v * u and p not dividing u."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


# ---------------------------------------------------------------------------
# square classes


@dataclass(frozen=True)
class SquareClass:
    """An element of K*/K*^2 in canonical form.

    Canonical representatives: over Q a squarefree integer; over Q_p (p odd)
    one of {1, u, p, up} with u the least positive nonsquare mod p; over Q_2
    one of {1, -1, 5, -5, 2, -2, 10, -10}; over R a sign; over F_p either 1
    or the least positive nonsquare.
    """

    field: BaseField
    rep: int

    def __str__(self):
        return str(self.rep)

    @property
    def is_trivial(self) -> bool:
        return self.rep == 1


def sqclass(field: BaseField, a: Rational) -> SquareClass:
    """Canonical square class of a nonzero rational over the given field."""
    n = _as_integer_pair(a)
    if isinstance(field, Rationals):
        return SquareClass(field, squarefree_part(n))
    if isinstance(field, Reals):
        return SquareClass(field, 1 if n > 0 else -1)
    if isinstance(field, Padic):
        p = field.p
        v, u = _padic_val(n, p)
        if p == 2:
            # unit classes of Q_2 are cut out by the residue mod 8
            um = u % 8
            unit = {1: 1, 3: -5, 5: 5, 7: -1}[um]
        else:
            unit = 1 if legendre(u, p) == 1 else least_nonsquare(p)
        rep = unit * (p if v % 2 else 1)
        return SquareClass(field, rep)
    if isinstance(field, ResidueField):
        p = field.p
        if n % p == 0:
            raise ZeroInput(f"{a} is not a unit in F_{p}")
        return SquareClass(field, 1 if legendre(n, p) == 1 else least_nonsquare(p))
    raise SwhwError(f"unsupported field {field}")


def sq_one(field: BaseField) -> SquareClass:
    return sqclass(field, 1)


def sq_minus_one(field: BaseField) -> SquareClass:
    return sqclass(field, -1)


def sq_add(a: SquareClass, b: SquareClass) -> SquareClass:
    """Group law of K*/K*^2 (written additively in H^1)."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    return sqclass(a.field, a.rep * b.rep)


def sq_sum(field: BaseField, classes) -> SquareClass:
    out = sq_one(field)
    for c in classes:
        out = sq_add(out, c)
    return out


def sq_scale(n: int, a: SquareClass) -> SquareClass:
    """n*a in additive notation; only the parity of n matters."""
    return a if n % 2 else sq_one(a.field)


def residue_class(a: SquareClass) -> SquareClass:
    """Reduction of a unit square class over Q_p (p odd) to F_p."""
    if not isinstance(a.field, Padic):
        raise FieldMismatch(f"expected a p-adic class, got {a.field}")
    p = a.field.p
    if p == 2:
        raise EvenResidueChar("no residue square classes in characteristic 2")
    if a.rep % p == 0:
        from .errors import BadValuation

        raise BadValuation(f"{a.rep} is not a unit over {a.field}")
    return sqclass(ResidueField(p), a.rep)


# ---------------------------------------------------------------------------
# Hilbert symbols


def _eps(u: int) -> int:
    return ((u - 1) // 2) % 2


def _omega(u: int) -> int:
    return ((u * u - 1) // 8) % 2


def hilbert_symbol(a: Rational, b: Rational, v: Place) -> int:
    """Hilbert symbol (a,b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
    solution over the completion of Q at v."""
    na, nb = _as_integer_pair(a), _as_integer_pair(b)
    if v.is_real:
        return -1 if (na < 0 and nb < 0) else 1
    p = v.p
    alpha, u = _padic_val(na, p)
    beta, w = _padic_val(nb, p)
    if p == 2:
        e = _eps(u) * _eps(w) + alpha * _omega(w) + beta * _omega(u)
        return -1 if e % 2 else 1
    s = 1
    if (alpha * beta) % 2 and legendre(-1, p) == -1:
        s = -s
    if beta % 2 and legendre(u, p) == -1:
        s = -s
    if alpha % 2 and legendre(w, p) == -1:
        s = -s
    return s


def relevant_places(a: Rational, b: Rational) -> list[Place]:
    """Places where (a,b)_v can be nontrivial: 2, infinity, primes of ab."""
    na, nb = _as_integer_pair(a), _as_integer_pair(b)
    ps = {2}
    for p, _ in _factor(na) + _factor(nb):
        ps.add(p)
    return [Place(p) for p in sorted(ps)] + [REAL_PLACE]


# ---------------------------------------------------------------------------
# H^2 classes


@dataclass(frozen=True)
class H2Class:
    """An element of H^2(K, Z/2).

    rep is a frozenset of Places over Q (even cardinality) and an int bit
    over Q_p and R.  Over F_p the group vanishes and rep is always 0.
    """

    field: BaseField
    rep: frozenset | int

    def __post_init__(self):
        if isinstance(self.field, Rationals):
            if not isinstance(self.rep, frozenset) or len(self.rep) % 2:
                raise SwhwError(f"bad global H2 representative: {self.rep!r}")
        elif isinstance(self.rep, frozenset) or self.rep not in (0, 1):
            raise SwhwError(f"bad local H2 representative: {self.rep!r}")

    def __str__(self):
        if isinstance(self.field, Rationals):
            if not self.rep:
                return "0"
            return "{" + ", ".join(str(v) for v in sorted_places(self.rep)) + "}"
        return str(self.rep)


def h2_zero(field: BaseField) -> H2Class:
    if isinstance(field, Rationals):
        return H2Class(field, frozenset())
    return H2Class(field, 0)


def h2_add(x: H2Class, y: H2Class) -> H2Class:
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    if isinstance(x.field, Rationals):
        return H2Class(x.field, x.rep ^ y.rep)
    return H2Class(x.field, (x.rep + y.rep) % 2)


def h2_sum(field: BaseField, classes) -> H2Class:
    out = h2_zero(field)
    for c in classes:
        out = h2_add(out, c)
    return out


def h2_scale(n: int, x: H2Class) -> H2Class:
    return x if n % 2 else h2_zero(x.field)


def h2_is_zero(x: H2Class) -> bool:
    return x == h2_zero(x.field)


@lru_cache(maxsize=None)
def _cup_global(ra: int, rb: int) -> frozenset:
    ramified = frozenset(
        v for v in relevant_places(ra, rb) if hilbert_symbol(ra, rb, v) == -1
    )
    if len(ramified) % 2:  # Hilbert reciprocity guarantees this never fires
        raise SwhwError(f"odd ramification set for ({ra},{rb}): {ramified}")
    return ramified


def cup(a: SquareClass, b: SquareClass) -> H2Class:
    """Cup product H^1 x H^1 -> H^2, computed by Hilbert symbols."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field} vs {b.field}")
    field = a.field
    if isinstance(field, Rationals):
        return H2Class(field, _cup_global(a.rep, b.rep))
    if isinstance(field, Reals):
        return H2Class(field, 1 if (a.rep < 0 and b.rep < 0) else 0)
    if isinstance(field, Padic):
        s = hilbert_symbol(a.rep, b.rep, Place(field.p))
        return H2Class(field, 0 if s == 1 else 1)
    if isinstance(field, ResidueField):
        return h2_zero(field)
    raise SwhwError(f"unsupported field {field}")


def cup_values(field: BaseField, a: Rational, b: Rational) -> H2Class:
    return cup(sqclass(field, a), sqclass(field, b))


def restrict(x: H2Class, field: Padic | Reals) -> H2Class:
    """Restriction H^2(Q) -> H^2(Q_v): read off the local invariant."""
    if not isinstance(x.field, Rationals):
        raise FieldMismatch("restriction starts from a class over Q")
    if isinstance(field, Padic):
        return H2Class(field, 1 if Place(field.p) in x.rep else 0)
    if isinstance(field, Reals):
        return H2Class(field, 1 if REAL_PLACE in x.rep else 0)
    raise FieldMismatch(f"cannot restrict to {field}")


def restrict_sq(a: SquareClass, field: BaseField) -> SquareClass:
    """Restriction of a square class over Q to a completion."""
    if not isinstance(a.field, Rationals):
        raise FieldMismatch("restriction starts from a class over Q")
    return sqclass(field, a.rep)


def c_ell(ell: int, field: BaseField) -> H2Class:
    """The class ramified exactly at ell and infinity, and its restrictions;
    zero over a field of positive characteristic."""
    if not is_prime(ell):
        raise SwhwError(f"not a prime: {ell}")
    if isinstance(field, ResidueField):
        if field.p == ell:
            raise CharacteristicClash(f"c_{ell} undefined over F_{ell}")
        return h2_zero(field)
    global_rep = H2Class(QQ, frozenset({Place(ell), REAL_PLACE}))
    if isinstance(field, Rationals):
        return global_rep
    return restrict(global_rep, field)


# ---------------------------------------------------------------------------
# order-2-times-cyclotomic characters and their obstruction class


@dataclass(frozen=True)
class CharClass:
    """A character eps * chi_ell^k: a quadratic part and a cyclotomic part."""

    eps: SquareClass
    k: int = 0
    ell: int = 2

    def __post_init__(self):
        if not is_prime(self.ell):
            raise SwhwError(f"not a prime: {self.ell}")

    @property
    def field(self) -> BaseField:
        return self.eps.field


def trivial_char(field: BaseField) -> CharClass:
    return CharClass(sq_one(field))


def cbar1(chi: CharClass) -> H2Class:
    """Obstruction class of a character against the squaring extension of G_m.

    Additive in the character: cbar1(eps * chi_ell^k) = {eps, -1} + k * c_ell.
    """
    field = chi.field
    out = cup(chi.eps, sq_minus_one(field))
    if chi.k % 2:
        out = h2_add(out, c_ell(chi.ell, field))
    return out


# ---------------------------------------------------------------------------
# the boundary of the local exact sequence


def boundary(x: H2Class) -> SquareClass:
    """Residue map H^2(Q_p, Z/2) -> H^1(F_p, Z/2) for odd p.

    For odd p the unramified part H^2(F_p) vanishes, so the map is injective:
    the zero class maps to the trivial square class and the nonzero class to
    the nonsquare class.
    """
    if not isinstance(x.field, Padic):
        raise FieldMismatch(f"boundary needs a class over Q_p, got {x.field}")
    p = x.field.p
    if p == 2:
        raise EvenResidueChar("the residue boundary assumes odd p")
    F = ResidueField(p)
    return sqclass(F, 1 if x.rep == 0 else least_nonsquare(p))


def tame_symbol_class(a: SquareClass, b: SquareClass) -> SquareClass:
    """Independent oracle for boundary(cup(a, b)): the reduction of the tame
    symbol (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)} mod p."""
    if a.field != b.field or not isinstance(a.field, Padic):
        raise FieldMismatch("tame symbol needs two classes over the same Q_p")
    p = a.field.p
    if p == 2:
        raise EvenResidueChar("the tame symbol oracle assumes odd p")
    va, ua = _padic_val(a.rep, p)
    vb, ub = _padic_val(b.rep, p)
    val = Fraction((-1) ** (va * vb)) * Fraction(ua) ** vb / Fraction(ub) ** va
    return sqclass(ResidueField(p), val)


# ---------------------------------------------------------------------------
# the truncated total-class group 1 + H^1 + H^2


def binom2(n: int) -> int:
    """n(n-1)/2, valid for negative n via the polynomial extension."""
    return n * (n - 1) // 2


@dataclass(frozen=True)
class TruncClass:
    """A unit 1 + s1 + s2 of the degree-<=2 truncated cohomology ring."""

    s1: SquareClass
    s2: H2Class

    def __post_init__(self):
        if self.s1.field != self.s2.field:
            raise FieldMismatch(f"{self.s1.field} vs {self.s2.field}")

    @property
    def field(self) -> BaseField:
        return self.s1.field

    def __str__(self):
        return f"(1, {self.s1}, {self.s2})"


def trunc(s1: SquareClass, s2: H2Class | None = None) -> TruncClass:
    return TruncClass(s1, s2 if s2 is not None else h2_zero(s1.field))


def trunc_one(field: BaseField) -> TruncClass:
    return TruncClass(sq_one(field), h2_zero(field))


def trunc_mul(x: TruncClass, y: TruncClass) -> TruncClass:
    """(1,a1,a2)(1,b1,b2) = (1, a1+b1, a2+b2+a1 u b1)."""
    if x.field != y.field:
        raise FieldMismatch(f"{x.field} vs {y.field}")
    s1 = sq_add(x.s1, y.s1)
    s2 = h2_add(h2_add(x.s2, y.s2), cup(x.s1, y.s1))
    return TruncClass(s1, s2)


def trunc_inv(x: TruncClass) -> TruncClass:
    """Inverse (1, a1, a2 + a1 u a1)."""
    return TruncClass(x.s1, h2_add(x.s2, cup(x.s1, x.s1)))


def trunc_pow(x: TruncClass, n: int) -> TruncClass:
    """x^n = (1, n a1, n a2 + C(n,2) a1 u a1), for any integer n."""
    s1 = sq_scale(n, x.s1)
    s2 = h2_add(h2_scale(n, x.s2), h2_scale(binom2(n), cup(x.s1, x.s1)))
    return TruncClass(s1, s2)


def one_plus_minus_one(field: BaseField) -> TruncClass:
    """The class 1 + {-1}, the total class of a hyperbolic line pair."""
    return trunc(sq_minus_one(field))
