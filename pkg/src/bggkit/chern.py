"""Chern/Schur/Segre numbers, Hilbert polynomial and Bott dimensions from a Hodge profile.

Input convention: the user supplies h^{0,j} = h^j(O_X); the dual row h^{d,j}
is derived by Serre duality (h^{d,j} = h0[d-j]).  The analytic hypothesis
flags are caller assertions, never inferred.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ringkit import TruncSeries, binom_poly, binom_power, comb0, series_inv, series_mul


@dataclass(frozen=True)
class HodgeProfile:
    """Hodge numbers h^{0,j} of a compact d-fold, with the two hypothesis flags."""

    d: int
    h0: tuple[int, ...]
    no_irregular_fibrations: bool = False
    isolated_origin: bool = False

    def __post_init__(self):
        object.__setattr__(self, "h0", tuple(int(x) for x in self.h0))
        if self.d < 1:
            raise ValueError("dimension d must be positive")
        if len(self.h0) != self.d + 1:
            raise ValueError("h0 must list h^{0,0}..h^{0,d}")
        if self.h0[0] != 1:
            raise ValueError("h^{0,0} must be 1 (connected manifold)")
        if any(x < 0 for x in self.h0):
            raise ValueError("Hodge numbers must be non-negative")
        if self.h0[1] < 1:
            raise ValueError("irregularity q = h^{0,1} must be >= 1")

    @property
    def q(self) -> int:
        return self.h0[1]

    @property
    def n(self) -> int:
        return self.q - 1

    @property
    def p_g(self) -> int:
        return self.h0[self.d]

    def hd(self, j: int) -> int:
        """h^{d,j} via Serre duality."""
        if not 0 <= j <= self.d:
            raise ValueError("j out of range")
        return self.h0[self.d - j]


def profile_to_dict(h: HodgeProfile) -> dict:
    return {
        "dimension": h.d,
        "h0": list(h.h0),
        "no_irregular_fibrations": h.no_irregular_fibrations,
        "isolated_origin": h.isolated_origin,
    }


def profile_from_dict(doc: dict) -> HodgeProfile:
    try:
        return HodgeProfile(
            d=int(doc["dimension"]),
            h0=tuple(int(x) for x in doc["h0"]),
            no_irregular_fibrations=bool(doc.get("no_irregular_fibrations", False)),
            isolated_origin=bool(doc.get("isolated_origin", False)),
        )
    except KeyError as exc:
        raise ValueError(f"profile document missing key {exc}") from exc


@dataclass(frozen=True)
class ChernData:
    """Coefficients gamma_0..gamma_{q-1} of the Chern-type series, plus chi(omega)."""

    gamma: tuple[int, ...]
    rank: int

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(int(g) for g in self.gamma))
        if not self.gamma or self.gamma[0] != 1:
            raise ValueError("gamma must start with gamma_0 = 1")

    @property
    def q(self) -> int:
        return len(self.gamma)

    def gamma_at(self, k: int) -> int:
        """gamma_k with gamma_0 = 1 and gamma_k = 0 outside 0..q-1."""
        if k < 0 or k > self.q - 1:
            return 0
        return self.gamma[k]


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return Partition(())
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))


def partitions_of(n: int, max_part: int | None = None):
    """Yield partitions of n with parts bounded by max_part, in lex-descending order."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def partitions_up_to_weight(max_weight: int):
    """Yield all nonempty partitions of weight 1..max_weight."""
    for w in range(1, max_weight + 1):
        for parts in partitions_of(w):
            yield Partition(parts)


def euler_char(h: HodgeProfile) -> int:
    """chi(omega_X) = sum_i (-1)^i h^i(omega_X) = (-1)^d sum_j (-1)^j h^{0,j}."""
    return sum((-1) ** i * h.hd(i) for i in range(h.d + 1))


def gamma_series(h: HodgeProfile) -> ChernData:
    """Expand prod_{j=1}^{d} (1 - j*t)^{(-1)^j h^{d,j}} truncated at order q-1."""
    order = h.q - 1
    acc = TruncSeries.one(order)
    for j in range(1, h.d + 1):
        e = (-1) ** j * h.hd(j)
        if e:
            acc = series_mul(acc, binom_power(j, e, order))
    assert acc.is_integral(), "gamma coefficients must be integers"
    gamma = tuple(int(c) for c in acc.coeffs)
    assert gamma[0] == 1
    return ChernData(gamma=gamma, rank=euler_char(h))


def schur_number(c: ChernData, lam: Partition) -> int:
    """Giambelli determinant det(gamma_{lam_i + j - i}) for a partition of weight <= q-1.

    With gamma_i read as elementary symmetric functions of the Chern roots this
    determinant is the Schur function of the conjugate partition; the family
    of weights <= q-1 is closed under conjugation, and the column partition
    (1^k) yields the k-th Segre number of the dual bundle (see segre_number).
    """
    if lam.weight > c.q - 1:
        raise ValueError(f"partition weight {lam.weight} exceeds q-1 = {c.q - 1}")
    m = len(lam.parts)
    if m == 0:
        return 1
    rows = [[c.gamma_at(lam.parts[i] + j - i) for j in range(m)] for i in range(m)]
    return _det_int(rows)


def segre_number(c: ChernData, k: int) -> int:
    """Coefficient of t^k in the inverse of gamma(-t): the Segre series of the dual."""
    if not 0 <= k <= c.q - 1:
        raise ValueError(f"segre index {k} outside 0..q-1 = {c.q - 1}")
    order = c.q - 1
    signed = TruncSeries.make(order, [Fraction((-1) ** i * g) for i, g in enumerate(c.gamma)])
    inv = series_inv(signed)
    val = inv.coeff(k)
    assert val.denominator == 1
    return int(val)


def hilbert_poly_F(h: HodgeProfile, i: int) -> int:
    """chi(F(i)) on P^{q-1} from the length-d linear resolution of the BGG sheaf.

    Uses the polynomial binomial, so the value is an Euler characteristic for
    every integer i; it counts sections only in the 0-regular regime, i >= 0.
    """
    n = h.n
    return sum((-1) ** j * h.h0[h.d - j] * binom_poly(n + i - j, n) for j in range(h.d + 1))


def bott_dimension(n: int, p: int, k: int) -> list[int]:
    """Cohomology dimensions (h^0..h^n) of Omega^p(k) on P^n by the Bott formula."""
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= p <= n:
        raise ValueError("need 0 <= p <= n")
    dims = [0] * (n + 1)
    if k > p:
        dims[0] = comb0(k + n - p, k) * comb0(k - 1, p)
    elif k == 0:
        dims[p] = 1
    elif k < p - n:
        dims[n] = comb0(-k + p, -k) * comb0(-k - 1, n - p)
    return dims


def _det_int(rows: list[list[int]]) -> int:
    # Fraction-free Bareiss determinant with row pivoting.
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        acc = a[c][c]
        for i in range(c + 1, n):
            aic = a[i][c]
            for j in range(c + 1, n):
                a[i][j] = (acc * a[i][j] - aic * a[c][j]) // prev
            a[i][c] = 0
        prev = acc
    return sign * a[n - 1][n - 1]
