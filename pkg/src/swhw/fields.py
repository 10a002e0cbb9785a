"""Base fields and places.

The workbench computes over Q, Q_p, R and the residue fields F_p (p odd).
Fields are small frozen value objects so classes over them hash and compare
structurally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SwhwError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class Place:
    """A place of Q: a finite prime, or the real place (p is None)."""

    # order=True sorts finite places by p; the real place is sorted last by hand.
    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise SwhwError(f"not a prime: {self.p}")

    @property
    def is_real(self) -> bool:
        return self.p is None

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)


REAL_PLACE = Place(None)


def finite_place(p: int) -> Place:
    return Place(p)


def sorted_places(places) -> list[Place]:
    """Finite places in increasing order, the real place last."""
    return sorted(places, key=lambda v: (v.p is None, v.p if v.p is not None else 0))


@dataclass(frozen=True)
class Rationals:
    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class Padic:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise SwhwError(f"not a prime: {self.p}")

    def __str__(self):
        return f"Q{self.p}"


@dataclass(frozen=True)
class Reals:
    def __str__(self):
        return "R"


@dataclass(frozen=True)
class ResidueField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise SwhwError(f"residue characteristic must be an odd prime: {self.p}")

    def __str__(self):
        return f"F{self.p}"


BaseField = Rationals | Padic | Reals | ResidueField

QQ = Rationals()
RR = Reals()


def parse_field(spec: str) -> BaseField:
    """Parse command-line field specs: "Q", "R", "Qp:5", "Fp:7"."""
    s = spec.strip()
    if s in ("Q", "q"):
        return QQ
    if s in ("R", "r"):
        return RR
    if s.lower().startswith("qp:"):
        return Padic(int(s[3:]))
    if s.lower().startswith("fp:"):
        return ResidueField(int(s[3:]))
    raise SwhwError(f"unknown field spec: {spec!r}")
