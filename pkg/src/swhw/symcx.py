"""Symmetric strict perfect complexes over Q and their truncated total class.

Complexes are bounded cochain complexes of finite-dimensional Q-vector
spaces with exact rational matrices.  The module fixes the sign
conventions once (dual, bidual, cone, fiber, triple complexes and their
dual isomorphism), builds the M-construction that presents a symmetric
complex by a symmetric bundle, and defines the degree-<=2 total class

    w(K) = w(E) * cbar(K^{>0}),   E = H^0 of the degree-0 reduction,

where w of a symmetric bundle is (1, hw_1, hw_2) of a diagonalization and
cbar of a complex is (1 + {-1})^euler over a field base.  All the laws
(Whitney, quasi-isomorphism invariance, Lagrangean reduction, the q/-q
product rule, cohomological reduction surfaces, even shifts) are
executable and exercised by the law suite on seeded random instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .coh import TruncClass, one_plus_minus_one, trunc_inv, trunc_mul, trunc_one, trunc_pow
from .errors import Degenerate, NotHomotopy, NotQuasiIso, NotSymmetricHomotopy, SwhwError
from .fields import QQ
from .linalg import Matrix
from .quadform import QuadSpace, diagonalize, hw_total

# ---------------------------------------------------------------------------
# complexes and maps


def _degree_window(dims: dict[int, int]) -> range:
    if not dims:
        return range(0, 0)
    lo = min(dims)
    hi = max(dims)
    return range(lo, hi + 1)


@dataclass(frozen=True)
class Cx:
    """A bounded complex: dims per degree and differentials d^i: K^i -> K^{i+1}."""

    dims: tuple[tuple[int, int], ...]  # sorted (degree, dim), dim > 0
    diffs: tuple[tuple[int, Matrix], ...]  # (degree, matrix of d^i)

    def dim(self, i: int) -> int:
        return dict(self.dims).get(i, 0)

    def d(self, i: int) -> Matrix:
        m = dict(self.diffs).get(i)
        if m is None:
            return linalg.zeros(self.dim(i + 1), self.dim(i))
        return m

    @property
    def degrees(self) -> range:
        return _degree_window(dict(self.dims))

    @property
    def total_dim(self) -> int:
        return sum(d for _, d in self.dims)

    def euler(self) -> int:
        return sum((-1) ** i * d for i, d in self.dims)


def make_cx(dims: dict[int, int], diffs: dict[int, Matrix]) -> Cx:
    dims = {i: d for i, d in dims.items() if d > 0}
    kept = {}
    for i, m in diffs.items():
        r, c = linalg.shape(m)
        if dims.get(i, 0) != c or dims.get(i + 1, 0) != r:
            if not linalg.is_zero(m):
                raise SwhwError(f"differential at degree {i} has wrong shape")
            continue
        kept[i] = m
    K = Cx(tuple(sorted(dims.items())), tuple(sorted(kept.items())))
    for i in K.degrees:
        if not linalg.is_zero(linalg.mul(K.d(i + 1), K.d(i))):
            raise SwhwError(f"d^2 != 0 at degree {i}")
    return K


def zero_cx() -> Cx:
    return Cx((), ())


def bundle_cx(n: int, degree: int = 0) -> Cx:
    return make_cx({degree: n}, {}) if n else zero_cx()


@dataclass(frozen=True)
class CxMap:
    """A degree-0 chain map, recorded per degree."""

    src: Cx
    dst: Cx
    comps: tuple[tuple[int, Matrix], ...]

    def f(self, i: int) -> Matrix:
        m = dict(self.comps).get(i)
        if m is None:
            return linalg.zeros(self.dst.dim(i), self.src.dim(i))
        return m


def make_map(src: Cx, dst: Cx, comps: dict[int, Matrix], check: bool = True) -> CxMap:
    kept = {}
    for i, m in comps.items():
        if linalg.shape(m) != (dst.dim(i), src.dim(i)):
            raise SwhwError(f"map component at degree {i} has wrong shape")
        if not linalg.is_zero(m):
            kept[i] = m
    f = CxMap(src, dst, tuple(sorted(kept.items())))
    if check:
        for i in set(src.degrees) | set(dst.degrees):
            lhs = linalg.mul(dst.d(i), f.f(i))
            rhs = linalg.mul(f.f(i + 1), src.d(i))
            if lhs != rhs:
                raise SwhwError(f"not a chain map at degree {i}")
    return f


def zero_map(src: Cx, dst: Cx) -> CxMap:
    return CxMap(src, dst, ())


def identity_map(K: Cx) -> CxMap:
    return CxMap(K, K, tuple((i, linalg.eye(d)) for i, d in K.dims))


def map_add(f: CxMap, g: CxMap) -> CxMap:
    comps = {}
    for i in set(dict(f.comps)) | set(dict(g.comps)):
        comps[i] = linalg.add(f.f(i), g.f(i))
    return make_map(f.src, f.dst, comps, check=False)


def map_scale(c, f: CxMap) -> CxMap:
    return CxMap(f.src, f.dst, tuple((i, linalg.scale(c, m)) for i, m in f.comps))


def compose(g: CxMap, f: CxMap) -> CxMap:
    """g after f."""
    comps = {}
    for i in set(dict(g.comps)) | set(dict(f.comps)):
        comps[i] = linalg.mul(g.f(i), f.f(i))
    return make_map(f.src, g.dst, comps, check=False)


def direct_sum_cx(K: Cx, L: Cx) -> tuple[Cx, CxMap, CxMap, CxMap, CxMap]:
    """K + L with the two inclusions and the two projections."""
    dims = {}
    for i in set(dict(K.dims)) | set(dict(L.dims)):
        dims[i] = K.dim(i) + L.dim(i)
    diffs = {}
    for i in dims:
        diffs[i] = linalg.block_diag(K.d(i), L.d(i))
    S = make_cx(dims, diffs)
    inc1 = make_map(K, S, {i: linalg.blocks([[linalg.eye(K.dim(i))], [linalg.zeros(L.dim(i), K.dim(i))]]) for i in dims if K.dim(i)}, check=False)
    inc2 = make_map(L, S, {i: linalg.blocks([[linalg.zeros(K.dim(i), L.dim(i))], [linalg.eye(L.dim(i))]]) for i in dims if L.dim(i)}, check=False)
    pr1 = make_map(S, K, {i: linalg.blocks([[linalg.eye(K.dim(i)), linalg.zeros(K.dim(i), L.dim(i))]]) for i in dims if K.dim(i)}, check=False)
    pr2 = make_map(S, L, {i: linalg.blocks([[linalg.zeros(L.dim(i), K.dim(i)), linalg.eye(L.dim(i))]]) for i in dims if L.dim(i)}, check=False)
    return S, inc1, inc2, pr1, pr2


# ---------------------------------------------------------------------------
# duality with the fixed sign conventions


def dual(K: Cx) -> Cx:
    """(DK)^i = D(K^{-i}) with d^i = (-1)^{i+1} transpose(d^{-i-1})."""
    dims = {-i: d for i, d in K.dims}
    diffs = {}
    for i in _degree_window(dims):
        m = K.d(-i - 1)
        if not linalg.is_zero(m):
            diffs[i] = linalg.scale((-1) ** (i + 1), linalg.transpose(m))
    return make_cx(dims, diffs)


def dual_map(f: CxMap) -> CxMap:
    """Df: D(dst) -> D(src), (Df)^i = transpose(f^{-i})."""
    comps = {-i: linalg.transpose(m) for i, m in f.comps}
    return make_map(dual(f.dst), dual(f.src), comps, check=False)


def bidual_can(K: Cx) -> CxMap:
    """c_K: K -> DDK, (-1)^i times the identity in each degree."""
    comps = {i: linalg.eye(d, (-1) ** i) for i, d in K.dims}
    return make_map(K, dual(dual(K)), comps, check=False)


def shift(K: Cx, n: int) -> Cx:
    """(K[n])^i = K^{n+i}, differential scaled by (-1)^n."""
    dims = {i - n: d for i, d in K.dims}
    diffs = {i - n: linalg.scale((-1) ** n, m) for i, m in K.diffs}
    return make_cx(dims, diffs)


@dataclass(frozen=True)
class Homotopy:
    """Degree -1 maps t^i: src^i -> dst^{i-1}."""

    src: Cx
    dst: Cx
    comps: tuple[tuple[int, Matrix], ...]

    def t(self, i: int) -> Matrix:
        m = dict(self.comps).get(i)
        if m is None:
            return linalg.zeros(self.dst.dim(i - 1), self.src.dim(i))
        return m


def make_homotopy(src: Cx, dst: Cx, comps: dict[int, Matrix]) -> Homotopy:
    kept = {}
    for i, m in comps.items():
        if linalg.shape(m) != (dst.dim(i - 1), src.dim(i)):
            raise SwhwError(f"homotopy component at degree {i} has wrong shape")
        if not linalg.is_zero(m):
            kept[i] = m
    return Homotopy(src, dst, tuple(sorted(kept.items())))


def zero_homotopy(src: Cx, dst: Cx) -> Homotopy:
    return Homotopy(src, dst, ())


def homotopy_boundary(t: Homotopy) -> CxMap:
    """The chain map t d + d t."""
    comps = {}
    for i in set(t.src.degrees) | set(t.dst.degrees):
        comps[i] = linalg.add(
            linalg.mul(t.t(i + 1), t.src.d(i)), linalg.mul(t.dst.d(i - 1), t.t(i))
        )
    return make_map(t.src, t.dst, comps, check=False)


def connects(t: Homotopy, f: CxMap) -> bool:
    """Does t realize f = t d + d t (i.e. connect f to 0)?"""
    g = homotopy_boundary(t)
    return all(g.f(i) == f.f(i) for i in set(f.src.degrees) | set(f.dst.degrees))


def dual_homotopy(t: Homotopy) -> Homotopy:
    """(Dt)^i = (-1)^i transpose(t^{1-i}): a homotopy D(dst) -> D(src)."""
    comps = {}
    for i, m in t.comps:
        comps[1 - i] = linalg.scale((-1) ** (1 - i), linalg.transpose(m))
    return make_homotopy(dual(t.dst), dual(t.src), comps)


def solve_homotopy(f: CxMap) -> Homotopy | None:
    """Exact solve for t with f = t d + d t, or None.

    Unknowns are the entries of all t^i; the constraints are linear, so a
    single Gaussian elimination answers null-homotopy questions exactly.
    """
    src, dst = f.src, f.dst
    degrees = sorted(set(src.degrees) | set(dst.degrees) | {i + 1 for i in src.degrees})
    slots = []  # (degree, rows, cols, offset)
    offset = 0
    for i in degrees:
        r, c = dst.dim(i - 1), src.dim(i)
        if r and c:
            slots.append((i, r, c, offset))
            offset += r * c
    nvars = offset
    rows = []
    rhs = []
    slot_of = {i: (r, c, off) for i, r, c, off in slots}
    for i in degrees:
        fi = f.f(i)
        ri, ci = linalg.shape(fi)
        if ri == 0 or ci == 0:
            continue
        d_src = src.d(i)  # src^i -> src^{i+1}
        d_dst = dst.d(i - 1)  # dst^{i-1} -> dst^i
        for a in range(ri):
            for b in range(ci):
                row = [Fraction(0)] * nvars
                # term (t^{i+1} d_src)[a][b] = sum_k t^{i+1}[a][k] d_src[k][b]
                if i + 1 in slot_of:
                    r1, c1, off1 = slot_of[i + 1]
                    for k in range(c1):
                        coeff = d_src[k][b]
                        if coeff:
                            row[off1 + a * c1 + k] += coeff
                # term (d_dst t^i)[a][b] = sum_k d_dst[a][k] t^i[k][b]
                if i in slot_of:
                    r0, c0, off0 = slot_of[i]
                    for k in range(r0):
                        coeff = d_dst[a][k]
                        if coeff:
                            row[off0 + k * c0 + b] += coeff
                rows.append(tuple(row))
                rhs.append(fi[a][b])
    if not rows:
        return zero_homotopy(src, dst) if all(
            linalg.is_zero(f.f(i)) for i in degrees
        ) else None
    sol = linalg.solve(tuple(rows), tuple(rhs))
    if sol is None:
        return None
    comps = {}
    for i, r, c, off in slots:
        comps[i] = linalg.mat([[sol[off + a * c + b] for b in range(c)] for a in range(r)])
    return make_homotopy(src, dst, comps)


def is_nullhomotopic(f: CxMap) -> bool:
    return solve_homotopy(f) is not None


# ---------------------------------------------------------------------------
# cones, fibers, triple complexes


def cone(f: CxMap) -> Cx:
    """Cone(f)^i = K^{i+1} + L^i with the standard upper-left sign."""
    K, L = f.src, f.dst
    dims = {}
    for i in set(d - 1 for d, _ in K.dims) | set(dict(L.dims)):
        dims[i] = K.dim(i + 1) + L.dim(i)
    diffs = {}
    for i in dims:
        diffs[i] = linalg.blocks(
            [
                [linalg.scale(-1, K.d(i + 1)), linalg.zeros(K.dim(i + 2), L.dim(i))],
                [f.f(i + 1), L.d(i)],
            ]
        )
    return make_cx(dims, diffs)


def fib(f: CxMap) -> Cx:
    """Fib(f)^i = K^i + L^{i-1}; Fib(f)[1] is Cone(-f)."""
    K, L = f.src, f.dst
    dims = {}
    for i in set(dict(K.dims)) | set(d + 1 for d, _ in L.dims):
        dims[i] = K.dim(i) + L.dim(i - 1)
    diffs = {}
    for i in dims:
        diffs[i] = linalg.blocks(
            [
                [K.d(i), linalg.zeros(K.dim(i + 1), L.dim(i - 1))],
                [f.f(i), linalg.scale(-1, L.d(i - 1))],
            ]
        )
    return make_cx(dims, diffs)


def cone_in(f: CxMap) -> CxMap:
    """Canonical L -> Cone(f)."""
    C = cone(f)
    K, L = f.src, f.dst
    comps = {}
    for i, d in L.dims:
        comps[i] = linalg.blocks([[linalg.zeros(K.dim(i + 1), d)], [linalg.eye(d)]])
    return make_map(L, C, comps, check=False)


def cone_out(f: CxMap) -> CxMap:
    """Canonical Cone(f) -> K[1]."""
    C = cone(f)
    K, L = f.src, f.dst
    K1 = shift(K, 1)
    comps = {}
    for i in C.degrees:
        if K.dim(i + 1):
            comps[i] = linalg.blocks([[linalg.eye(K.dim(i + 1)), linalg.zeros(K.dim(i + 1), L.dim(i))]])
    return make_map(C, K1, comps, check=False)


def cone_map(f: CxMap, g: CxMap, t: Homotopy) -> CxMap:
    """(g, t): Cone(f) -> M for a homotopy t connecting g f to 0."""
    return cone_map_of(Triple(f, g, t))


@dataclass(frozen=True)
class Triple:
    """K -f-> L -g-> M with a homotopy t connecting g f to 0."""

    f: CxMap
    g: CxMap
    t: Homotopy

    def __post_init__(self):
        if self.f.dst != self.g.src:
            raise SwhwError("triple maps do not compose")
        if self.t.src != self.f.src or self.t.dst != self.g.dst:
            raise SwhwError("homotopy endpoints are wrong")
        if not connects(self.t, compose(self.g, self.f)):
            raise NotHomotopy("t does not connect g f to 0")


def cone_map_of(tr: Triple) -> CxMap:
    """(g, t): Cone(f) -> M."""
    K, L, M = tr.f.src, tr.f.dst, tr.g.dst
    C = cone(tr.f)
    comps = {}
    for i in C.degrees:
        comps[i] = linalg.blocks([[tr.t.t(i + 1), tr.g.f(i)]])
    return make_map(C, M, comps, check=False)


def fib_map_of(tr: Triple) -> CxMap:
    """(f, t): K -> Fib(g)."""
    K, M = tr.f.src, tr.g.dst
    F = fib(tr.g)
    comps = {}
    for i in K.degrees:
        comps[i] = linalg.blocks([[tr.f.f(i)], [tr.t.t(i)]])
    return make_map(K, F, comps, check=False)


def triple_complex(tr: Triple) -> Cx:
    """C(K -> L -> M)_t with C^i = K^{i+1} + L^i + M^{i-1}."""
    K, L, M = tr.f.src, tr.f.dst, tr.g.dst
    dims = {}
    for i in (
        set(d - 1 for d, _ in K.dims)
        | set(dict(L.dims))
        | set(d + 1 for d, _ in M.dims)
    ):
        dims[i] = K.dim(i + 1) + L.dim(i) + M.dim(i - 1)
    diffs = {}
    for i in dims:
        diffs[i] = linalg.blocks(
            [
                [
                    linalg.scale(-1, K.d(i + 1)),
                    linalg.zeros(K.dim(i + 2), L.dim(i)),
                    linalg.zeros(K.dim(i + 2), M.dim(i - 1)),
                ],
                [
                    tr.f.f(i + 1),
                    L.d(i),
                    linalg.zeros(L.dim(i + 1), M.dim(i - 1)),
                ],
                [
                    tr.t.t(i + 1),
                    tr.g.f(i),
                    linalg.scale(-1, M.d(i - 1)),
                ],
            ]
        )
    return make_cx(dims, diffs)


def dual_triple(tr: Triple) -> Triple:
    """DM -Dg-> DL -Df-> DK with the dual homotopy."""
    return Triple(dual_map(tr.g), dual_map(tr.f), dual_homotopy(tr.t))


def triple_dual_iso(tr: Triple) -> CxMap:
    """The canonical isomorphism D(C(K->L->M)_t) -> C(DM->DL->DK)_{Dt},
    given by (-1)^i, 1, (-1)^{i+1} on D(M^{-1-i}), D(L^{-i}), D(K^{1-i})."""
    K, L, M = tr.f.src, tr.f.dst, tr.g.dst
    src = dual(triple_complex(tr))
    dst = triple_complex(dual_triple(tr))
    comps = {}
    for i in dst.degrees:
        a = M.dim(-1 - i)  # D(M^{-1-i}) block
        b = L.dim(-i)
        c = K.dim(1 - i)
        # source D(C^{-i}) carries blocks in the order (DK, DL, DM)
        comps[i] = linalg.blocks(
            [
                [linalg.zeros(a, c), linalg.zeros(a, b), linalg.eye(a, (-1) ** i)],
                [linalg.zeros(b, c), linalg.eye(b), linalg.zeros(b, a)],
                [linalg.eye(c, (-1) ** (i + 1)), linalg.zeros(c, b), linalg.zeros(c, a)],
            ]
        )
    return make_map(src, dst, comps, check=False)


def induced_triple_map(tr: Triple, tr2: Triple, a: CxMap, b: CxMap, c: CxMap) -> CxMap:
    """Functoriality of the triple complex for (a, b, c) with c t = t' a."""
    lhs = compose_homotopy_map(c, tr.t)
    rhs = homotopy_after_map(tr2.t, a)
    if lhs.comps != rhs.comps:
        raise NotHomotopy("compatibility c t = t' a fails")
    src = triple_complex(tr)
    dst = triple_complex(tr2)
    comps = {}
    for i in set(src.degrees) | set(dst.degrees):
        comps[i] = linalg.block_diag(a.f(i + 1), b.f(i), c.f(i - 1))
    return make_map(src, dst, comps, check=False)


def compose_homotopy_map(c: CxMap, t: Homotopy) -> Homotopy:
    """c t as a homotopy src(t) -> dst(c)."""
    comps = {i: linalg.mul(c.f(i - 1), t.t(i)) for i, _ in t.comps}
    return make_homotopy(t.src, c.dst, comps)


def homotopy_after_map(t: Homotopy, a: CxMap) -> Homotopy:
    """t a as a homotopy src(a) -> dst(t)."""
    comps = {}
    for i in set(d for d, _ in a.comps) | set(d for d, _ in t.comps):
        m = linalg.mul(t.t(i), a.f(i))
        if not linalg.is_zero(m):
            comps[i] = m
    return make_homotopy(a.src, t.dst, comps)


# ---------------------------------------------------------------------------
# cohomology and acyclicity (exact ranks)


def h_dim(K: Cx, i: int) -> int:
    rank_in = linalg.rank(K.d(i - 1)) if K.dim(i - 1) and K.dim(i) else 0
    rank_out = linalg.rank(K.d(i)) if K.dim(i) and K.dim(i + 1) else 0
    return K.dim(i) - rank_in - rank_out


def is_acyclic(K: Cx) -> bool:
    return all(h_dim(K, i) == 0 for i in K.degrees)


def is_quasi_iso(f: CxMap) -> bool:
    return is_acyclic(cone(f))


def h0_basis(K: Cx) -> list[tuple]:
    """Vectors of K^0 spanning a complement of im d^{-1} inside ker d^0."""
    n0 = K.dim(0)
    if n0 == 0:
        return []
    kernel = linalg.nullspace(K.d(0)) if K.dim(1) else [
        tuple(linalg.eye(n0)[i]) for i in range(n0)
    ]
    dm = K.d(-1)
    image_rows = [tuple(linalg.mulv(dm, v)) for v in _std_basis(K.dim(-1))]
    chosen = [list(v) for v in image_rows]
    base_rank = linalg.rank(linalg.mat(chosen)) if chosen else 0
    out = []
    for v in kernel:
        cand = chosen + [list(v)]
        if linalg.rank(linalg.mat(cand)) > base_rank:
            chosen = cand
            base_rank += 1
            out.append(v)
    return out


def _std_basis(n: int) -> list[tuple]:
    return [tuple(linalg.eye(n)[i]) for i in range(n)]


# ---------------------------------------------------------------------------
# symmetric structures


@dataclass(frozen=True)
class SymBundle:
    """A nondegenerate symmetric Gram matrix over Q."""

    gram: Matrix

    def __post_init__(self):
        n, c = linalg.shape(self.gram)
        if n != c or self.gram != linalg.transpose(self.gram):
            raise Degenerate("symmetric bundle needs a symmetric square Gram")
        if n and linalg.det(self.gram) == 0:
            raise Degenerate("symmetric bundle is degenerate")

    @property
    def rank(self) -> int:
        return len(self.gram)


def is_symmetric_map(q: CxMap) -> bool:
    """Dq c_K = q, i.e. transpose(q^{-i}) (-1)^i = q^i for all i."""
    K = q.src
    for i in set(K.degrees):
        lhs = linalg.scale((-1) ** i, linalg.transpose(q.f(-i)))
        if lhs != q.f(i):
            return False
    return True


@dataclass(frozen=True)
class SymCx:
    """A symmetric strict perfect complex: q: K -> DK symmetric quasi-iso."""

    K: Cx
    q: CxMap

    def __post_init__(self):
        if self.q.src != self.K or self.q.dst != dual(self.K):
            raise SwhwError("q must map K to DK")
        if not is_symmetric_map(self.q):
            raise SwhwError("q is not symmetric")
        if not is_quasi_iso(self.q):
            raise NotQuasiIso("q is not a quasi-isomorphism")


def sym_bundle_cx(E: SymBundle) -> SymCx:
    K = bundle_cx(E.rank)
    return SymCx(K, make_map(K, dual(K), {0: E.gram}, check=False))


def negate(S: SymCx) -> SymCx:
    return SymCx(S.K, map_scale(-1, S.q))


def sym_direct_sum(S1: SymCx, S2: SymCx) -> SymCx:
    K, i1, i2, p1, p2 = direct_sum_cx(S1.K, S2.K)
    DK = dual(K)
    comps = {}
    for i in K.degrees:
        comps[i] = linalg.block_diag(S1.q.f(i), S2.q.f(i))
    # D(K1+K2)^i has blocks (DK1^i, DK2^i) in the same order
    return SymCx(K, make_map(K, DK, comps, check=False))


def make_symmetric(K: Cx, q_raw: CxMap) -> SymCx:
    """Symmetrize a quasi-isomorphism q with Dq c_K homotopic to q:
    (q + Dq c_K)/2 is exactly symmetric and homotopic to q."""
    if not is_quasi_iso(q_raw):
        raise NotQuasiIso("q_raw is not a quasi-isomorphism")
    sym_part = compose(dual_map(q_raw), bidual_can(K))
    if not is_nullhomotopic(map_add(q_raw, map_scale(-1, sym_part))):
        raise NotQuasiIso("Dq c_K is not homotopic to q")
    q = map_scale(Fraction(1, 2), map_add(q_raw, sym_part))
    return SymCx(K, make_map(K, dual(K), dict(q.comps), check=True))


def is_symmetric_homotopy(t: Homotopy, L: Cx) -> bool:
    """Dt c_L = t for a homotopy t: L -> DL."""
    dt = dual_homotopy(t)
    # (Dt c_L)^i = transpose(t^{1-i}) under the bidual identification
    for i in set(d for d, _ in t.comps) | set(1 - d for d, _ in t.comps):
        lhs = linalg.transpose(t.t(1 - i))
        if lhs != t.t(i):
            return False
    return True


def symmetrize_homotopy(t: Homotopy) -> Homotopy:
    """(t + Dt c_L)/2, the symmetric homotopy with the same boundary when
    the boundary map is symmetric."""
    comps = {}
    for i in set(d for d, _ in t.comps) | set(1 - d for d, _ in t.comps):
        m = linalg.scale(Fraction(1, 2), linalg.add(t.t(i), linalg.transpose(t.t(1 - i))))
        if not linalg.is_zero(m):
            comps[i] = m
    return make_homotopy(t.src, t.dst, comps)


def m_construction(f: CxMap, S: SymCx, t: Homotopy) -> SymCx:
    """M(L -f-> K)_{q,t}: the triple complex C(L -> K -> DL)_t with the
    induced symmetric structure.

    t must be a symmetric homotopy connecting Df q f to 0.
    """
    L, K, q = f.src, f.dst, S.q
    if f.dst != S.K:
        raise SwhwError("f must land in the symmetric complex")
    dfqf = compose(dual_map(f), compose(q, f))
    if not is_symmetric_homotopy(t, L):
        raise NotSymmetricHomotopy("t is not symmetric")
    if not connects(t, dfqf):
        raise NotSymmetricHomotopy("t does not connect Df q f to 0")
    g = compose(dual_map(f), q)  # K -> DL
    tr = Triple(f, g, t)
    M = triple_complex(tr)
    # induced map into the dual-side triple DDL -> DK -> DL, via (c_L, q, id)
    target = _dual_triple_for_m(f, q, t)
    qt = induced_triple_map(tr, target, bidual_can(L), q, identity_map(dual(L)))
    # compose with the inverse of the dual isomorphism of the triple complex
    iso = triple_dual_iso(tr)
    inv_comps = {}
    for i in triple_complex(target).degrees:
        m = iso.f(i)
        if linalg.shape(m)[0]:
            inv_comps[i] = linalg.inverse(m)
    q_M = compose(
        make_map(triple_complex(target), dual(M), inv_comps, check=False), qt
    )
    return SymCx(M, q_M)


def _dual_triple_for_m(f: CxMap, q: CxMap, t: Homotopy) -> Triple:
    """DDL -> DK -> DL with the dual homotopy: the lower row of the defining
    diagram of the symmetric structure on the M-construction."""
    df = dual_map(f)
    ddf = dual_map(df)
    dq = dual_map(q)
    return Triple(compose(dq, ddf), df, dual_homotopy(t))


def truncate_positive(K: Cx) -> tuple[Cx, CxMap]:
    """K^{>0} with its inclusion into K."""
    dims = {i: d for i, d in K.dims if i > 0}
    diffs = {i: m for i, m in K.diffs if i > 0 and (i + 1) in dims}
    sub = make_cx(dims, diffs)
    inc = make_map(sub, K, {i: linalg.eye(d) for i, d in sub.dims}, check=False)
    return sub, inc


def k_natural(S: SymCx) -> tuple[SymCx, SymBundle]:
    """The degree-0 reduction M(K^{>0} -> K)_q and its symmetric bundle
    E = H^0 with the induced form."""
    sub, inc = truncate_positive(S.K)
    t = zero_homotopy(sub, dual(sub))
    Kn = m_construction(inc, S, t)
    if any(h_dim(Kn.K, i) != 0 for i in Kn.K.degrees if i != 0):
        raise SwhwError("degree-0 reduction is not concentrated in degree 0")
    basis = h0_basis(Kn.K)
    q0 = Kn.q.f(0)
    gram = linalg.mat(
        [
            [
                sum(x * y for x, y in zip(linalg.mulv(q0, va), vb))
                for vb in basis
            ]
            for va in basis
        ]
    )
    return Kn, SymBundle(gram)


def h0_form(S: SymCx) -> SymBundle:
    """The induced symmetric form on H^0(K) directly (corw.2 input)."""
    basis = h0_basis(S.K)
    q0 = S.q.f(0)
    gram = linalg.mat(
        [
            [sum(x * y for x, y in zip(linalg.mulv(q0, va), vb)) for vb in basis]
            for va in basis
        ]
    )
    return SymBundle(gram)


# ---------------------------------------------------------------------------
# the truncated total class


def w_bundle(E: SymBundle) -> TruncClass:
    """(1, hw_1, hw_2) of a diagonalization, over Q."""
    if E.rank == 0:
        return trunc_one(QQ)
    d = diagonalize(QuadSpace(E.gram, QQ))
    return hw_total(d)


def cbar(K: Cx) -> TruncClass:
    """(1 + {-1})^euler(K): over a field only the ranks contribute."""
    return trunc_pow(one_plus_minus_one(QQ), K.euler())


def w(S: SymCx) -> TruncClass:
    """w(K) = w(E) cbar(K^{>0}) for the degree-0 reduction bundle E."""
    sub, _ = truncate_positive(S.K)
    _, E = k_natural(S)
    return trunc_mul(w_bundle(E), cbar(sub))


def lagrangean_check(f: CxMap, S: SymCx, t: Homotopy) -> bool:
    """Is f: L -> K Lagrangean, i.e. is M(L -> K)_{q,t} acyclic?"""
    M = m_construction(f, S, t)
    return is_acyclic(M.K)


def shifted_symmetric(K: Cx, q_comps: dict[int, Matrix], n: int) -> SymCx:
    """A symmetric complex from q: K -> DK[-2n] (n even), realized as
    (K[n], q') with the (-1)^{n/2} sign on the canonical shift identification."""
    if n % 2:
        raise SwhwError("the shift count must be even")
    Kn = shift(K, n)
    comps = {}
    for i in Kn.degrees:
        m = q_comps.get(i + n)
        if m is not None and not linalg.is_zero(m):
            comps[i] = linalg.scale((-1) ** (n // 2), m)
    qp = make_map(Kn, dual(Kn), comps, check=True)
    return SymCx(Kn, qp)
