"""Exact arithmetic substrate: rationals, truncated power series, dense rational matrices.

Everything here is immutable and pure; no floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Arbitrary-precision rational, always reduced, denominator > 0, hashable.
Rational = Fraction


def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int, a Fraction, or a "p/q" string."""
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ValueError(f"cannot parse rational from {value!r}")


def format_rational(value: Fraction):
    """Encode a rational for JSON: bare int when integral, else a "p/q" string."""
    value = Fraction(value)
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


def comb0(n: int, k: int) -> int:
    """Binomial coefficient with the usual zero convention outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def binom_poly(m: int, k: int) -> int:
    """Polynomial binomial m(m-1)...(m-k+1)/k!, valid for any integer m (k >= 0)."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= m - i
    return num // math.factorial(k)


@dataclass(frozen=True)
class TruncSeries:
    """Power series over exact rationals, truncated at a fixed order.

    coeffs[i] is the coefficient of t^i; len(coeffs) == order + 1.  Arithmetic
    never changes the order implicitly: operands must share it.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if len(self.coeffs) != self.order + 1:
            raise ValueError("coefficient count must equal order + 1")

    @staticmethod
    def make(order: int, coeffs) -> "TruncSeries":
        coeffs = list(coeffs)
        if len(coeffs) < order + 1:
            coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return TruncSeries(order, tuple(Fraction(c) for c in coeffs[: order + 1]))

    @staticmethod
    def one(order: int) -> "TruncSeries":
        return TruncSeries.make(order, [Fraction(1)])

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k]

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self):
        terms = " + ".join(f"({c})t^{i}" for i, c in enumerate(self.coeffs) if c)
        return f"TruncSeries(order={self.order}: {terms or '0'})"


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product truncated at the shared order; mixed orders are rejected."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")
    n = a.order
    out = [Fraction(0)] * (n + 1)
    for i, ca in enumerate(a.coeffs):
        if not ca:
            continue
        for j in range(n + 1 - i):
            cb = b.coeffs[j]
            if cb:
                out[i + j] += ca * cb
    return TruncSeries(n, tuple(out))


def series_inv(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse at the same order; the constant term must be nonzero."""
    c0 = a.coeffs[0]
    if c0 == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    n = a.order
    inv0 = Fraction(1) / c0
    out = [inv0] + [Fraction(0)] * n
    for k in range(1, n + 1):
        acc = Fraction(0)
        for i in range(1, k + 1):
            if a.coeffs[i]:
                acc += a.coeffs[i] * out[k - i]
        out[k] = -acc * inv0
    return TruncSeries(n, tuple(out))


def binom_power(j: int, e: int, order: int) -> TruncSeries:
    """(1 - j*t)**e truncated at the given order, for any integer exponent e.

    Negative e goes through the generalized binomial series; e == 0 gives 1.
    """
    if j < 1:
        raise ValueError("j must be a positive integer")
    out = []
    c = Fraction(1)
    for k in range(order + 1):
        out.append(c * (-j) ** k)
        # C(e, k+1) = C(e, k) * (e - k) / (k + 1)
        c = c * (e - k) / (k + 1)
    return TruncSeries(order, tuple(out))


@dataclass(frozen=True)
class MatrixQ:
    """Dense matrix over the rationals, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count must equal rows*cols")

    @staticmethod
    def zero(rows: int, cols: int) -> "MatrixQ":
        return MatrixQ(rows, cols, (Fraction(0),) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "MatrixQ":
        ent = [Fraction(0)] * (n * n)
        for i in range(n):
            ent[i * n + i] = Fraction(1)
        return MatrixQ(n, n, tuple(ent))

    @staticmethod
    def from_rows(rows) -> "MatrixQ":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged rows")
        flat = tuple(Fraction(x) for r in rows for x in r)
        return MatrixQ(nr, nc, flat)

    def entry(self, r: int, c: int) -> Fraction:
        return self.entries[r * self.cols + c]

    def row(self, r: int) -> tuple[Fraction, ...]:
        return self.entries[r * self.cols : (r + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(r)) for r in range(self.rows)]

    def transpose(self) -> "MatrixQ":
        ent = tuple(self.entry(r, c) for c in range(self.cols) for r in range(self.rows))
        return MatrixQ(self.cols, self.rows, ent)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def matmul(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        out = [Fraction(0)] * (self.rows * other.cols)
        for r in range(self.rows):
            base = r * self.cols
            for k in range(self.cols):
                a = self.entries[base + k]
                if not a:
                    continue
                obase = k * other.cols
                rbase = r * other.cols
                for c in range(other.cols):
                    b = other.entries[obase + c]
                    if b:
                        out[rbase + c] += a * b
        return MatrixQ(self.rows, other.cols, tuple(out))

    def add(self, other: "MatrixQ") -> "MatrixQ":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return MatrixQ(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))


def _integer_rows(m: MatrixQ) -> list[list[int]]:
    # Row scaling by the lcm of denominators preserves rank.
    out = []
    for r in range(m.rows):
        row = m.row(r)
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        out.append([int(x * lcm) for x in row])
    return out


def rank(m: MatrixQ) -> int:
    """Exact rank over Q via fraction-free (Bareiss) elimination with pivoting."""
    a = _integer_rows(m)
    nr, nc = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(nc):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        arc = a[r][c]
        for i in range(r + 1, nr):
            aic = a[i][c]
            ai, ar = a[i], a[r]
            if aic:
                for j in range(c + 1, nc):
                    ai[j] = (arc * ai[j] - aic * ar[j]) // prev
                ai[c] = 0
            else:
                for j in range(c + 1, nc):
                    ai[j] = (arc * ai[j]) // prev
        prev = arc
        r += 1
    return r
