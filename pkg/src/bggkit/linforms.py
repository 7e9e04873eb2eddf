"""Matrices of linear forms stored as 3-tensors: evaluation, the flip move,
bilinear-equation extraction, and rank sampling with a symbolic generic rank."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .ringkit import MatrixQ, format_rational, parse_rational, rank


@dataclass(frozen=True)
class LinFormMatrix:
    """a x b matrix whose entries are linear forms in q variables.

    T[r][c][i] is the coefficient of x_i in entry (r, c).
    """

    a: int
    b: int
    q: int
    T: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        if self.a < 0 or self.b < 0 or self.q < 1:
            raise ValueError("bad tensor shape")
        T = tuple(
            tuple(tuple(Fraction(x) for x in col) for col in row) for row in self.T
        )
        object.__setattr__(self, "T", T)
        if len(T) != self.a or any(len(row) != self.b for row in T):
            raise ValueError("tensor shape mismatch")
        for row in T:
            for col in row:
                if len(col) != self.q:
                    raise ValueError("tensor shape mismatch")

    @staticmethod
    def from_entries(entries, q: int | None = None) -> "LinFormMatrix":
        entries = [[list(col) for col in row] for row in entries]
        a = len(entries)
        b = len(entries[0]) if a else 0
        if q is None:
            q = len(entries[0][0]) if a and b else 1
        return LinFormMatrix(a, b, q, tuple(tuple(tuple(col) for col in row) for row in entries))


def tensor_to_dict(u: LinFormMatrix) -> dict:
    return {
        "a": u.a,
        "b": u.b,
        "q": u.q,
        "entries": [[[format_rational(x) for x in col] for col in row] for row in u.T],
    }


def tensor_from_dict(doc: dict) -> LinFormMatrix:
    try:
        a, b, q = int(doc["a"]), int(doc["b"]), int(doc["q"])
        entries = [
            [[parse_rational(x) for x in col] for col in row] for row in doc["entries"]
        ]
    except KeyError as exc:
        raise ValueError(f"tensor document missing key {exc}") from exc
    return LinFormMatrix(a, b, q, tuple(tuple(tuple(col) for col in row) for row in entries))


def eval_at(u: LinFormMatrix, v) -> MatrixQ:
    """Evaluate every linear form at the point v in Q^q; linear in v."""
    v = [Fraction(x) for x in v]
    if len(v) != u.q:
        raise ValueError(f"point has length {len(v)}, expected {u.q}")
    ent = []
    for r in range(u.a):
        for c in range(u.b):
            col = u.T[r][c]
            ent.append(sum((col[i] * v[i] for i in range(u.q)), Fraction(0)))
    return MatrixQ(u.a, u.b, tuple(ent))


def flip(u: LinFormMatrix) -> LinFormMatrix:
    """The a x b matrix of forms on C^q reread as an a x q matrix of forms on C^b.

    T'[r][i][c] = T[r][c][i]; flip is an involution up to the reshape.
    """
    T = tuple(
        tuple(tuple(u.T[r][c][i] for c in range(u.b)) for i in range(u.q))
        for r in range(u.a)
    )
    return LinFormMatrix(u.a, u.q, u.b, T)


def bilinear_equations(u: LinFormMatrix) -> list[tuple[Fraction, ...]]:
    """Canonical coefficient lists of the bilinear forms sum_{c,i} T[r][c][i] y_c x_i.

    Row r of u and row r of flip(u) define the same equation with the two
    factors swapped, so each form is normalized up to that swap: the
    coefficient matrix is flattened in (c, i) order with the shorter index
    first (lexicographically smaller flattening when b == q).  This makes
    bilinear_equations(u) == bilinear_equations(flip(u)) a list equality.
    """
    out = []
    for r in range(u.a):
        mat = tuple(tuple(u.T[r][c][i] for i in range(u.q)) for c in range(u.b))
        out.append(_canonical_form(mat))
    return out


def _canonical_form(mat) -> tuple[Fraction, ...]:
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    flat = tuple(x for row in mat for x in row)
    flat_t = tuple(mat[r][c] for c in range(cols) for r in range(rows))
    if rows < cols:
        return flat
    if rows > cols:
        return flat_t
    return min(flat, flat_t)


def rank_profile(u: LinFormMatrix, points) -> list[int]:
    """Exact rank of eval_at(u, v) for each sample point v (all must be nonzero)."""
    points = [tuple(Fraction(x) for x in p) for p in points]
    if not points:
        raise ValueError("empty sample")
    for p in points:
        if len(p) != u.q:
            raise ValueError("sample point of wrong length")
        if all(x == 0 for x in p):
            raise ValueError("sample points must be nonzero")
    return [rank(eval_at(u, p)) for p in points]


def sample_points(q: int, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    """Deterministic nonzero rational sample points for rank profiling."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = tuple(Fraction(rng.randint(-9, 9)) for _ in range(q))
        if any(x != 0 for x in p):
            out.append(p)
    return out


def generic_rank(u: LinFormMatrix) -> int:
    """Rank over the field of rational functions, by symbolic fraction-free elimination.

    A random integer evaluation is tried first as a lower bound; the symbolic
    pass is authoritative and always run.
    """
    # Fast path: an evaluation rank can only undershoot the generic rank.
    lower = 0
    rng = random.Random(20771)
    for _ in range(2):
        pt = [Fraction(rng.randint(-50, 50)) for _ in range(u.q)]
        lower = max(lower, rank(eval_at(u, pt)))
        if lower == min(u.a, u.b):
            return lower
    sym = _symbolic_rank(u)
    assert sym >= lower
    return sym


# Minimal multivariate polynomials over Q: {length-q exponent tuple: coefficient}.


def _p_is_zero(p) -> bool:
    return not p


def _p_add(p1, p2):
    out = dict(p1)
    for m, c in p2.items():
        s = out.get(m, Fraction(0)) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _p_neg(p):
    return {m: -c for m, c in p.items()}


def _p_mul(p1, p2):
    out = {}
    for m1, c1 in p1.items():
        for m2, c2 in p2.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(m, Fraction(0)) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _p_lead(p):
    m = max(p)
    return m, p[m]


def _p_divexact(p, d):
    """Exact division p/d in Q[x_1..x_q]; raises if the division is not exact."""
    if _p_is_zero(d):
        raise ZeroDivisionError("polynomial division by zero")
    if _p_is_zero(p):
        return {}
    quot = {}
    rem = dict(p)
    dm, dc = _p_lead(d)
    while rem:
        rm, rc = _p_lead(rem)
        qm = tuple(a - b for a, b in zip(rm, dm))
        if any(x < 0 for x in qm):
            raise ArithmeticError("inexact polynomial division")
        qc = rc / dc
        quot[qm] = quot.get(qm, Fraction(0)) + qc
        rem = _p_add(rem, _p_neg(_p_mul({qm: qc}, d)))
    return quot


def _symbolic_rank(u: LinFormMatrix) -> int:
    zero = (0,) * u.q
    mats = []
    for r in range(u.a):
        row = []
        for c in range(u.b):
            p = {}
            for i in range(u.q):
                if u.T[r][c][i]:
                    m = tuple(1 if k == i else 0 for k in range(u.q))
                    p[m] = Fraction(u.T[r][c][i])
            row.append(p)
        mats.append(row)
    nr, nc = u.a, u.b
    rnk = 0
    prev = {zero: Fraction(1)}
    for c in range(nc):
        if rnk == nr:
            break
        piv = None
        for i in range(rnk, nr):
            if not _p_is_zero(mats[i][c]):
                piv = i
                break
        if piv is None:
            continue
        if piv != rnk:
            mats[rnk], mats[piv] = mats[piv], mats[rnk]
        pivot = mats[rnk][c]
        for i in range(rnk + 1, nr):
            aic = mats[i][c]
            for j in range(c + 1, nc):
                num = _p_add(_p_mul(pivot, mats[i][j]), _p_neg(_p_mul(aic, mats[rnk][j])))
                mats[i][j] = _p_divexact(num, prev)
            mats[i][c] = {}
        prev = pivot
        rnk += 1
    return rnk
