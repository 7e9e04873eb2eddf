"""Finite graded modules over the exterior algebra, their linear complexes over
the symmetric algebra, and exactness/regularity decided by exact degree-slice ranks.

Grading convention: piece j of a module holds the cohomological index-j summand
(module degree d-j), the algebra generators act with index +1, and the linear
complex runs spot 0 -> spot 1 -> ... -> spot d with differentials of S-degree +1.

Homology dimensions are certified exactly.  Ranks of degree slices are first
bounded from below modulo a fixed prime; since a modular rank never exceeds the
rational rank, a zero homology candidate is already a proof of exactness at
that slice.  Any nonzero candidate is recomputed with fraction-free exact
elimination before being reported.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from .chern import HodgeProfile, hilbert_poly_F
from .linforms import LinFormMatrix
from .ringkit import MatrixQ, format_rational, parse_rational, rank

_PRIME = 2147483647  # 2^31 - 1; modular products stay within int64
_DENSE_MODP_LIMIT = 20_000_000  # entries; beyond this the sparse path is used
_DENSE_EXACT_LIMIT = 40_000


class ModuleAxiomError(ValueError):
    """Raised when the square-zero / anticommutation axioms fail; carries a witness."""

    def __init__(self, i: int, i2: int, piece: int):
        self.pair = (i, i2)
        self.piece = piece
        kind = "e_i^2 = 0" if i == i2 else "anticommutation"
        super().__init__(
            f"{kind} fails for generators ({i}, {i2}) on graded piece {piece}"
        )


@dataclass(frozen=True)
class ExteriorModule:
    """Graded module over the exterior algebra on q generators.

    piece_dims[j] is the dimension of piece j for j = 0..d; actions[i][j] is
    the matrix of generator e_i mapping piece j to piece j+1.
    """

    q: int
    piece_dims: tuple[int, ...]
    actions: tuple[tuple[MatrixQ, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "piece_dims", tuple(int(x) for x in self.piece_dims))
        object.__setattr__(self, "actions", tuple(tuple(row) for row in self.actions))
        if self.q < 1:
            raise ValueError("q must be positive")
        if not self.piece_dims or any(x < 0 for x in self.piece_dims):
            raise ValueError("piece_dims must be non-negative and non-empty")
        d = self.d
        if len(self.actions) != self.q:
            raise ValueError("need one action list per generator")
        for acts in self.actions:
            if len(acts) != d:
                raise ValueError("need one action matrix per adjacent piece pair")
            for j, mat in enumerate(acts):
                if (mat.rows, mat.cols) != (self.piece_dims[j + 1], self.piece_dims[j]):
                    raise ValueError(f"action matrix at piece {j} has wrong shape")

    @property
    def d(self) -> int:
        return len(self.piece_dims) - 1


def validate_module(m: ExteriorModule) -> None:
    """Check the exterior-algebra module axioms exactly; raise with a witness on failure."""
    d = m.d
    for i in range(m.q):
        for i2 in range(i, m.q):
            for j in range(d - 1):
                comp = m.actions[i][j + 1].matmul(m.actions[i2][j])
                if i != i2:
                    comp = comp.add(m.actions[i2][j + 1].matmul(m.actions[i][j]))
                if not comp.is_zero():
                    raise ModuleAxiomError(i, i2, j)


def module_to_dict(m: ExteriorModule) -> dict:
    return {
        "q": m.q,
        "piece_dims": list(m.piece_dims),
        "actions": [
            [[[format_rational(x) for x in mat.row(r)] for r in range(mat.rows)] for mat in acts]
            for acts in m.actions
        ],
    }


def module_from_dict(doc: dict) -> ExteriorModule:
    try:
        q = int(doc["q"])
        dims = tuple(int(x) for x in doc["piece_dims"])
        raw = doc["actions"]
    except KeyError as exc:
        raise ValueError(f"module document missing key {exc}") from exc
    d = len(dims) - 1
    actions = []
    if len(raw) != q:
        raise ValueError("actions must list one entry per generator")
    for acts in raw:
        if len(acts) != d:
            raise ValueError("each generator needs one matrix per adjacent piece pair")
        mats = []
        for j, rows in enumerate(acts):
            flat = [parse_rational(x) for row in rows for x in row]
            mats.append(MatrixQ(dims[j + 1], dims[j], tuple(flat)))
        actions.append(tuple(mats))
    return ExteriorModule(q, dims, tuple(actions))


def direct_sum(m1: ExteriorModule, m2: ExteriorModule) -> ExteriorModule:
    """Block direct sum of two modules over the same algebra with the same top degree."""
    if m1.q != m2.q or m1.d != m2.d:
        raise ValueError("direct sum needs matching q and top degree")
    dims = tuple(a + b for a, b in zip(m1.piece_dims, m2.piece_dims))
    actions = []
    for i in range(m1.q):
        mats = []
        for j in range(m1.d):
            a, b = m1.actions[i][j], m2.actions[i][j]
            rows = []
            for r in range(a.rows):
                rows.append(list(a.row(r)) + [Fraction(0)] * b.cols)
            for r in range(b.rows):
                rows.append([Fraction(0)] * a.cols + list(b.row(r)))
            flat = tuple(x for row in rows for x in row)
            mats.append(MatrixQ(a.rows + b.rows, a.cols + b.cols, flat))
        actions.append(tuple(mats))
    return ExteriorModule(m1.q, dims, tuple(actions))


@dataclass(frozen=True)
class LinearComplex:
    """Complex of free S-modules with matrices of linear forms as differentials.

    spots[j] is the multiplicity of the free term at spot j; diffs[j] maps spot
    j to spot j+1.  Consecutive differentials must compose to zero, which is
    checked exactly on construction by expanding the quadratic forms.
    """

    q: int
    spots: tuple[int, ...]
    diffs: tuple[LinFormMatrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "spots", tuple(int(x) for x in self.spots))
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if self.q < 1:
            raise ValueError("q must be positive")
        if len(self.diffs) != max(len(self.spots) - 1, 0):
            raise ValueError("need one differential per adjacent spot pair")
        for j, u in enumerate(self.diffs):
            if (u.a, u.b, u.q) != (self.spots[j + 1], self.spots[j], self.q):
                raise ValueError(f"differential {j} has wrong shape")
        _check_composition(self.diffs)

    @property
    def length(self) -> int:
        return len(self.spots) - 1


def _check_composition(diffs) -> None:
    for j in range(len(diffs) - 1):
        d1, d0 = diffs[j + 1], diffs[j]
        for r in range(d1.a):
            for c in range(d0.b):
                for i in range(d0.q):
                    for i2 in range(i, d0.q):
                        acc = Fraction(0)
                        for m in range(d0.a):
                            acc += d1.T[r][m][i] * d0.T[m][c][i2]
                            if i2 != i:
                                acc += d1.T[r][m][i2] * d0.T[m][c][i]
                        if acc != 0:
                            raise ValueError(
                                f"differentials {j} and {j + 1} do not compose to zero"
                            )


def bgg_complex(m: ExteriorModule) -> LinearComplex:
    """Linear complex with differential s (x) p -> sum_i x_i s (x) e_i p."""
    validate_module(m)
    diffs = []
    for j in range(m.d):
        a, b = m.piece_dims[j + 1], m.piece_dims[j]
        T = tuple(
            tuple(
                tuple(m.actions[i][j].entry(r, c) for i in range(m.q))
                for c in range(b)
            )
            for r in range(a)
        )
        diffs.append(LinFormMatrix(a, b, m.q, T))
    return LinearComplex(m.q, m.piece_dims, tuple(diffs))


@dataclass(frozen=True)
class ExactnessReport:
    """Window-certified homology profile of a linear complex.

    homology[j][p] is the homology dimension at spot j in internal degree p,
    for p = 0..p_max.  Verdicts are proofs only within the window; the window
    is part of the report so truncated evidence is never mistaken for more.
    """

    p_max: int
    spots: tuple[int, ...]
    homology: tuple[tuple[int, ...], ...]
    first_failure: tuple[int, int] | None
    regularity: int | None

    def total_homology(self, spot: int) -> int:
        return sum(self.homology[spot])


def default_p_max(d: int, q: int) -> int:
    """Generous default truncation window for exactness certification."""
    return 2 * (d + q)


@lru_cache(maxsize=None)
def _monomials(q: int, p: int):
    if p < 0:
        return (), {}
    monos = tuple(combinations_with_replacement(range(q), p))
    return monos, {m: i for i, m in enumerate(monos)}


def sym_dim(q: int, p: int) -> int:
    """Dimension of the degree-p piece of the symmetric algebra on q variables."""
    if p < 0:
        return 0
    return math.comb(p + q - 1, q - 1)


@lru_cache(maxsize=None)
def _mult_table(q: int, p: int):
    # index of m * x_i in the degree p+1 monomial basis, per variable i
    monos, _ = _monomials(q, p)
    _, idx1 = _monomials(q, p + 1)
    return tuple(
        tuple(idx1[tuple(sorted(m + (i,)))] for m in monos) for i in range(q)
    )


def _slice_coo(u: LinFormMatrix, p: int):
    """COO triples of the degree-p slice S_p^b -> S_{p+1}^a of a linear-form matrix.

    Values are ints when the tensor is integral, exact Fractions otherwise.
    """
    monos, _ = _monomials(u.q, p)
    _, idx1 = _monomials(u.q, p + 1)
    dim_p, dim_p1 = len(monos), len(idx1)
    integral = all(
        x.denominator == 1 for row in u.T for col in row for x in col
    )
    mult = _mult_table(u.q, p)
    coo = []
    for r in range(u.a):
        rbase = r * dim_p1
        for c in range(u.b):
            cbase = c * dim_p
            for i in range(u.q):
                theta = u.T[r][c][i]
                if not theta:
                    continue
                if integral:
                    theta = theta.numerator
                tgt = mult[i]
                coo.extend(
                    (rbase + tgt[mi], cbase + mi, theta) for mi in range(dim_p)
                )
    return u.a * dim_p1, u.b * dim_p, coo


def degree_slice(c: LinearComplex, j: int, p: int) -> tuple[MatrixQ, MatrixQ]:
    """Exact (incoming, outgoing) degree-slice matrices at spot j, internal degree p.

    dim H(j, p) = spots[j]*dim(S_p) - rank(outgoing) - rank(incoming).
    """
    if not 0 <= j <= c.length:
        raise ValueError("spot out of range")
    if p < 0:
        raise ValueError("internal degree must be non-negative")
    rows_here = c.spots[j] * sym_dim(c.q, p)
    if j >= 1 and p >= 1:
        nr, nc, coo = _slice_coo(c.diffs[j - 1], p - 1)
        incoming = _coo_to_matrix(nr, nc, coo)
    else:
        incoming = MatrixQ.zero(rows_here, 0)
    if j < c.length:
        nr, nc, coo = _slice_coo(c.diffs[j], p)
        outgoing = _coo_to_matrix(nr, nc, coo)
    else:
        outgoing = MatrixQ.zero(0, rows_here)
    return incoming, outgoing


def _coo_to_matrix(nr: int, nc: int, coo) -> MatrixQ:
    ent = [Fraction(0)] * (nr * nc)
    for r, c, v in coo:
        ent[r * nc + c] = v
    return MatrixQ(nr, nc, tuple(ent))


def _coo_int(nr: int, coo):
    # Integer fast path; otherwise clear denominators per row (rank-preserving).
    if not coo or isinstance(coo[0][2], int):
        return coo
    dens = defaultdict(lambda: 1)
    for r, _, v in coo:
        dens[r] = dens[r] * v.denominator // math.gcd(dens[r], v.denominator)
    return [(r, c, int(v * dens[r])) for r, c, v in coo]


def _modp_rank_dense(nr: int, nc: int, coo_int) -> int:
    a = np.zeros((nr, nc), dtype=np.int64)
    if coo_int:
        rows, cols, vals = zip(*coo_int)
        a[np.array(rows), np.array(cols)] = np.array([v % _PRIME for v in vals], dtype=np.int64)
    rnk = 0
    for c in range(nc):
        if rnk == nr:
            break
        col = a[rnk:, c]
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        pr = rnk + int(nz[0])
        if pr != rnk:
            a[[rnk, pr]] = a[[pr, rnk]]
        inv = pow(int(a[rnk, c]), _PRIME - 2, _PRIME)
        row = (a[rnk, c:] * inv) % _PRIME
        a[rnk, c:] = row
        below = a[rnk + 1 :, c]
        nzr = np.flatnonzero(below)
        if nzr.size:
            idx = rnk + 1 + nzr
            a[idx, c:] = (a[idx, c:] - below[nzr, None] * row[None, :]) % _PRIME
        rnk += 1
    return rnk


def _modp_rank_sparse(coo_int) -> int:
    rows = defaultdict(dict)
    for r, c, v in coo_int:
        w = v % _PRIME
        if w:
            rows[r][c] = w
    work = {i: d for i, d in enumerate(rows.values())}
    col_rows = defaultdict(set)
    for rid, d in work.items():
        for c in d:
            col_rows[c].add(rid)
    heap = [(len(d), rid) for rid, d in work.items()]
    import heapq as _hq

    _hq.heapify(heap)
    rnk = 0
    while heap:
        sz, rid = _hq.heappop(heap)
        if rid not in work or len(work[rid]) != sz:
            continue
        piv = work.pop(rid)
        rnk += 1
        c = min(piv, key=lambda cc: (len(col_rows[cc]), cc))
        pv = piv[c]
        if pv != 1:
            inv = _PRIME - 1 if pv == _PRIME - 1 else pow(pv, _PRIME - 2, _PRIME)
            piv = {cc: (vv * inv) % _PRIME for cc, vv in piv.items()}
        for cc in piv:
            col_rows[cc].discard(rid)
        for other in list(col_rows[c]):
            row = work.get(other)
            if row is None or c not in row:
                col_rows[c].discard(other)
                continue
            f = row.pop(c)
            col_rows[c].discard(other)
            for cc, vv in piv.items():
                if cc == c:
                    continue
                w = (row.get(cc, 0) - f * vv) % _PRIME
                if w:
                    if cc not in row:
                        col_rows[cc].add(other)
                    row[cc] = w
                elif cc in row:
                    del row[cc]
                    col_rows[cc].discard(other)
            if row:
                _hq.heappush(heap, (len(row), other))
            else:
                del work[other]
    return rnk


def _exact_rank_sparse(coo) -> int:
    rows = defaultdict(dict)
    for r, c, v in coo:
        if v:
            rows[r][c] = Fraction(v)
    work = list(rows.values())
    rnk = 0
    while work:
        work.sort(key=len)
        piv = work.pop(0)
        rnk += 1
        c = min(piv)
        pv = piv[c]
        nxt = []
        for row in work:
            f = row.pop(c, None)
            if f is not None:
                f = f / pv
                for cc, vv in piv.items():
                    if cc == c:
                        continue
                    w = row.get(cc, Fraction(0)) - f * vv
                    if w:
                        row[cc] = w
                    else:
                        row.pop(cc, None)
            if row:
                nxt.append(row)
        work = nxt
    return rnk


def _certified_slice_rank(nr: int, nc: int, coo, exact: bool) -> int:
    """Rank of a slice: modular lower bound by default, exact elimination on demand."""
    if nr == 0 or nc == 0 or not coo:
        return 0
    if exact:
        if nr * nc <= _DENSE_EXACT_LIMIT:
            return rank(_coo_to_matrix(nr, nc, coo))
        return _exact_rank_sparse(coo)
    coo_int = _coo_int(nr, coo)
    if nr * nc <= _DENSE_MODP_LIMIT:
        return _modp_rank_dense(nr, nc, coo_int)
    return _modp_rank_sparse(coo_int)


class _RankLedger:
    """Caches slice ranks of one complex, certified per the module docstring."""

    def __init__(self, c: LinearComplex):
        self.c = c
        self._coo = {}
        self._mod = {}
        self._exact = {}

    def _slice(self, j: int, p: int):
        key = (j, p)
        if key not in self._coo:
            self._coo[key] = _slice_coo(self.c.diffs[j], p)
        return self._coo[key]

    def _in_range(self, j: int, p: int) -> bool:
        return 0 <= j < self.c.length and p >= 0

    def lower(self, j: int, p: int) -> int:
        if not self._in_range(j, p):
            return 0
        if (j, p) in self._exact:
            return self._exact[(j, p)]
        if (j, p) not in self._mod:
            nr, nc, coo = self._slice(j, p)
            self._mod[(j, p)] = _certified_slice_rank(nr, nc, coo, exact=False)
        return self._mod[(j, p)]

    def exact(self, j: int, p: int) -> int:
        if not self._in_range(j, p):
            return 0
        if (j, p) not in self._exact:
            nr, nc, coo = self._slice(j, p)
            val = _certified_slice_rank(nr, nc, coo, exact=True)
            assert val >= self._mod.get((j, p), 0)
            self._exact[(j, p)] = val
        return self._exact[(j, p)]

    def homology(self, j: int, p: int) -> int:
        term = self.c.spots[j] * sym_dim(self.c.q, p)
        if term == 0:
            return 0
        cand = term - self.lower(j, p) - self.lower(j - 1, p - 1)
        assert cand >= 0
        if cand == 0:
            return 0
        h = term - self.exact(j, p) - self.exact(j - 1, p - 1)
        assert 0 <= h <= cand
        return h


def exactness_profile(c: LinearComplex, p_max: int | None = None) -> ExactnessReport:
    """Homology dimensions at every spot and internal degree 0..p_max.

    first_failure is the leftmost spot (then lowest degree) with nonzero
    homology inside the window; regularity = length - failing spot, clamped
    at 0, per the exactness criterion for the dual module.
    """
    if p_max is None:
        p_max = default_p_max(c.length, c.q)
    if p_max < 0:
        raise ValueError("p_max must be non-negative")
    ledger = _RankLedger(c)
    homology = tuple(
        tuple(ledger.homology(j, p) for p in range(p_max + 1))
        for j in range(c.length + 1)
    )
    first_failure = None
    for j in range(c.length + 1):
        for p in range(p_max + 1):
            if homology[j][p]:
                first_failure = (j, p)
                break
        if first_failure:
            break
    _assert_strand_ledger(c, p_max, homology)
    reg = max(0, c.length - first_failure[0]) if first_failure else 0
    return ExactnessReport(
        p_max=p_max,
        spots=c.spots,
        homology=homology,
        first_failure=first_failure,
        regularity=reg,
    )


def _assert_strand_ledger(c: LinearComplex, p_max: int, homology) -> None:
    # Rank-nullity cross-check on every strand fully inside the window: the
    # alternating sums of term and homology dimensions must agree.
    d = c.length
    for s in range(-d, p_max - d + 1):
        terms = 0
        homs = 0
        for j in range(d + 1):
            p = s + j
            if p < 0:
                continue
            terms += (-1) ** j * c.spots[j] * sym_dim(c.q, p)
            homs += (-1) ** j * homology[j][p]
        if terms != homs:
            raise RuntimeError(f"internal rank ledger violated on strand {s}")


def regularity(m: ExteriorModule, p_max: int | None = None) -> int:
    """Smallest r such that the complex is exact at the first d-r spots in the window."""
    c = bgg_complex(m)
    if p_max is None:
        p_max = default_p_max(c.length, c.q)
    ledger = _RankLedger(c)
    for j in range(c.length + 1):
        for p in range(p_max + 1):
            if ledger.homology(j, p):
                return max(0, c.length - j)
    return 0


def betti_linear(m: ExteriorModule, h: HodgeProfile, i: int, p_max: int | None = None) -> int:
    """Betti number b_i of the linear resolution regime, via the Hilbert polynomial.

    Only valid for modules of regularity 0; anything else is rejected.
    """
    if i < 0:
        return 0
    if m.piece_dims != h.h0:
        raise ValueError("module piece dimensions do not match the Hodge profile")
    reg = regularity(m, p_max)
    if reg != 0:
        raise ValueError(
            f"regularity is {reg}, not 0: Betti numbers are not computed by the "
            "Hilbert polynomial outside the linear-resolution regime"
        )
    return hilbert_poly_F(h, i)
