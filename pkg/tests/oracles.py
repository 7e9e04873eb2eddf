"""Independent oracles used by the tests.

Everything here is deliberately written from scratch against the definitions,
without calling into the package's own elimination or series code, so that
agreement between the two is meaningful.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations, combinations_with_replacement


def gauss_rank(rows) -> int:
    """Plain Gaussian elimination over Fraction."""
    a = [[Fraction(x) for x in r] for r in rows]
    if not a:
        return 0
    nc = len(a[0])
    rank = 0
    for c in range(nc):
        piv = None
        for i in range(rank, len(a)):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        pr = a[rank]
        for i in range(rank + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / pr[c]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        rank += 1
    return rank


def conv_trunc(a, b, order):
    """Naive truncated convolution of coefficient lists (Fractions)."""
    out = [Fraction(0)] * (order + 1)
    for i in range(min(len(a), order + 1)):
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] += Fraction(a[i]) * Fraction(b[j])
    return out


def gen_binom_series(j, e, order):
    """(1 - j t)^e coefficient list by the recursion c_{k+1} = c_k (e-k)/(k+1) (-j)."""
    out = [Fraction(1)]
    for k in range(order):
        out.append(out[-1] * Fraction(e - k, k + 1) * (-j))
    return out


def gamma_oracle(d, h0):
    """Coefficients of prod (1-jt)^{(-1)^j h0[d-j]} to order h0[1]-1, naive path."""
    order = h0[1] - 1
    acc = [Fraction(1)] + [Fraction(0)] * order
    for j in range(1, d + 1):
        e = (-1) ** j * h0[d - j]
        acc = conv_trunc(acc, gen_binom_series(j, e, order), order)
    return acc


def chi_opn(n, k):
    """chi(O(k)) on n-dimensional projective space: product formula, signed."""
    num = 1
    for i in range(1, n + 1):
        num *= k + i
    return num // math.factorial(n)


def chi_forms(n, p, k):
    """chi of degree-k twisted p-forms on P^n by the wedge Euler-sequence recursion."""
    if p == 0:
        return chi_opn(n, k)
    return math.comb(n + 1, p) * chi_opn(n, k - p) - chi_forms(n, p - 1, k)


def koszul_slice(q, j, p):
    """Matrix of S_p (x) Wedge^j -> S_{p+1} (x) Wedge^{j+1}, wedge differential.

    Rows are indexed by (monomial of degree p+1, (j+1)-subset), columns by
    (monomial of degree p, j-subset); built directly from the definition.
    """
    monos_p = list(combinations_with_replacement(range(q), p)) if p >= 0 else []
    monos_p1 = list(combinations_with_replacement(range(q), p + 1))
    subs_j = list(combinations(range(q), j))
    subs_j1 = list(combinations(range(q), j + 1))
    row_index = {
        (m, s): i for i, (m, s) in enumerate((m, s) for m in monos_p1 for s in subs_j1)
    }
    rows = len(monos_p1) * len(subs_j1)
    cols = len(monos_p) * len(subs_j)
    mat = [[Fraction(0)] * cols for _ in range(rows)]
    for ci, (m, s) in enumerate((m, s) for m in monos_p for s in subs_j):
        for i in range(q):
            if i in s:
                continue
            sign = (-1) ** sum(1 for x in s if x < i)
            tgt = (tuple(sorted(m + (i,))), tuple(sorted(s + (i,))))
            mat[row_index[tgt]][ci] += sign
    return rows, cols, mat


def koszul_homology(q, j, p):
    """Brute-force homology dimension of the Koszul strand at spot j, degree p."""
    dim = math.comb(p + q - 1, q - 1) * math.comb(q, j) if p >= 0 else 0
    if dim == 0:
        return 0
    r_out = gauss_rank(koszul_slice(q, j, p)[2]) if j < q else 0
    r_in = gauss_rank(koszul_slice(q, j - 1, p - 1)[2]) if (j > 0 and p > 0) else 0
    return dim - r_out - r_in


def invert_matrix(rows):
    """Inverse of a square rational matrix by Gauss-Jordan; raises if singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(int(i == k)) for k in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            raise ValueError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        f = a[c][c]
        a[c] = [x / f for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                g = a[i][c]
                a[i] = [x - g * y for x, y in zip(a[i], a[c])]
    return [r[n:] for r in a]
