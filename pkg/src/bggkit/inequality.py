"""Numerical inequality checks attached to a Hodge profile.

Checks gated on an analytic hypothesis are three-valued: pass, fail, or
not-applicable when the corresponding flag is absent.  All verdicts are exact;
square-root bounds are decided by sign analysis and squaring, never by
floating evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .chern import (
    HodgeProfile,
    euler_char,
    gamma_series,
    partitions_up_to_weight,
    schur_number,
    segre_number,
)
from .ringkit import TruncSeries, series_inv

EXORBITANT = "exorbitant"
NOT_EXORBITANT = "not-exorbitant"
OUTSIDE_CRITERION = "outside-criterion"


@dataclass(frozen=True)
class CheckRecord:
    """One inequality verdict: satisfied is None when the check is not applicable.

    For square-root bounds the right-hand side is rhs_base + sqrt(rhs_radicand)/2
    and the rhs field is left empty; all numeric fields are exact.
    """

    name: str
    requires: tuple[str, ...] = ()
    satisfied: bool | None = None
    lhs: Fraction | int | None = None
    rhs: Fraction | int | None = None
    rhs_base: Fraction | None = None
    rhs_radicand: int | None = None
    witness: object = None
    note: str | None = None


@dataclass(frozen=True)
class InequalityReport:
    checks: tuple[CheckRecord, ...]

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if c.satisfied is False]

    def all_applicable_pass(self) -> bool:
        return not self.failures()

    def merged(self, other: "InequalityReport") -> "InequalityReport":
        return InequalityReport(self.checks + other.checks)


@dataclass(frozen=True)
class GVData:
    """codims[i-1] = codim of the i-th vanishing locus at the origin, i = 1..d."""

    codims: tuple[int, ...]
    p_alpha: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "codims", tuple(int(x) for x in self.codims))
        if self.p_alpha is not None and self.p_alpha < 1:
            raise ValueError("p_alpha must be a positive integer when present")


def gv_data_from_dict(doc: dict) -> GVData:
    try:
        codims = tuple(int(x) for x in doc["codims"])
    except KeyError as exc:
        raise ValueError(f"gv document missing key {exc}") from exc
    p_alpha = doc.get("p_alpha")
    return GVData(codims, None if p_alpha is None else int(p_alpha))


def _na(name: str, requires: tuple[str, ...], note: str) -> CheckRecord:
    return CheckRecord(name=name, requires=requires, satisfied=None, note=note)


def check_theorem_C(h: HodgeProfile, partitions=None) -> InequalityReport:
    """Schur non-negativity, gamma vanishing above chi, and chi >= q - d.

    Requires the isolated-origin flag; without it all three checks are marked
    not-applicable.  The Schur check enumerates every partition of weight up
    to q-1 (or the supplied iterable); the reported witness is the canonically
    smallest violating partition, independent of enumeration order.
    """
    req = ("isolated_origin",)
    names = ("schur-nonnegative", "gamma-vanishing-above-chi", "chi-at-least-q-minus-d")
    if not h.isolated_origin:
        note = "isolated_origin flag not asserted"
        return InequalityReport(tuple(_na(n, req, note) for n in names))
    c = gamma_series(h)
    chi = c.rank
    q, d = h.q, h.d

    if partitions is None:
        partitions = partitions_up_to_weight(q - 1)
    values = [(lam, schur_number(c, lam)) for lam in partitions]
    violations = [(lam, v) for lam, v in values if v < 0]
    if violations:
        wit, val = min(violations, key=lambda t: (t[0].weight, t[0].parts))
        schur_rec = CheckRecord(
            name=names[0], requires=req, satisfied=False,
            lhs=val, rhs=0, witness=list(wit.parts),
        )
    else:
        val = min((v for _, v in values), default=0)
        schur_rec = CheckRecord(name=names[0], requires=req, satisfied=True, lhs=val, rhs=0)

    bad = [i for i in range(max(chi + 1, 1), q) if c.gamma[i] != 0]
    if bad:
        vanish_rec = CheckRecord(
            name=names[1], requires=req, satisfied=False,
            lhs=c.gamma[bad[0]], rhs=0, witness=bad[0],
        )
    else:
        vanish_rec = CheckRecord(name=names[1], requires=req, satisfied=True, lhs=0, rhs=0)

    chi_rec = CheckRecord(
        name=names[2], requires=req, satisfied=chi >= q - d, lhs=chi, rhs=q - d
    )
    return InequalityReport((schur_rec, vanish_rec, chi_rec))


def _sqrt_row(name: str, req, lhs: int, base: Fraction, radicand: int) -> CheckRecord:
    if radicand < 0:
        return CheckRecord(
            name=name, requires=req, satisfied=None, lhs=lhs,
            rhs_base=base, rhs_radicand=radicand,
            note="radicand negative; bound not applicable",
        )
    s = Fraction(lhs) - base
    ok = s >= 0 and 4 * s * s >= radicand
    return CheckRecord(
        name=name, requires=req, satisfied=ok, lhs=lhs,
        rhs_base=base, rhs_radicand=radicand,
    )


def solved_bounds(h: HodgeProfile) -> InequalityReport:
    """Closed-form lower bounds on Hodge numbers in dimensions 3, 4, 5.

    Includes the linear and solved-quadratic bounds, the threefold bound
    h^{0,3} >= h^{0,2} - 2, and h^{0,2} >= 4q - 10 for d >= 3.  Requires the
    no-irregular-fibrations flag.  Outside d in {3,4,5} only the rows whose
    dimension predicate holds are evaluated.
    """
    req = ("no_irregular_fibrations",)
    q, d, h0 = h.q, h.d, h.h0
    rows: list[CheckRecord] = []

    def linear(name, lhs, rhs):
        rows.append(CheckRecord(name=name, requires=req, satisfied=lhs >= rhs, lhs=lhs, rhs=rhs))

    applicable = h.no_irregular_fibrations
    if not applicable:
        names = ["h02-at-least-4q-10"] if d >= 3 else []
        if d == 3:
            names += ["gamma1-linear-d3", "gamma2-quadratic-d3", "h03-vs-h02-threefold"]
        elif d == 4:
            names += ["gamma1-linear-d4", "gamma2-quadratic-d4"]
        elif d == 5:
            names += ["gamma1-linear-d5", "gamma2-quadratic-d5"]
        note = "no_irregular_fibrations flag not asserted"
        return InequalityReport(tuple(_na(n, req, note) for n in names))

    if d >= 3:
        linear("h02-at-least-4q-10", h0[2], 4 * q - 10)
    if d == 3:
        linear("gamma1-linear-d3", h0[2], 2 * q - 3)
        rows.append(_sqrt_row("gamma2-quadratic-d3", req, h0[2], Fraction(-7, 2) + 2 * q, 8 * q - 23))
        linear("h03-vs-h02-threefold", h0[3], h0[2] - 2)
    elif d == 4:
        linear("gamma1-linear-d4", h0[3], 4 - 3 * q + 2 * h0[2])
        rows.append(
            _sqrt_row(
                "gamma2-quadratic-d4", req, h0[3],
                Fraction(7, 2) - 3 * q + 2 * h0[2], 49 - 24 * q + 8 * h0[2],
            )
        )
    elif d == 5:
        linear("gamma1-linear-d5", h0[4], -5 + 4 * q - 3 * h0[2] + 2 * h0[3])
        rows.append(
            _sqrt_row(
                "gamma2-quadratic-d5", req, h0[4],
                Fraction(-11, 2) + 4 * q - 3 * h0[2] + 2 * h0[3],
                71 + 48 * q - 24 * h0[2] + 8 * h0[3],
            )
        )
    return InequalityReport(tuple(rows))


def surface_h11_bound(q: int) -> int:
    """Lower bound for h^{1,1} of a surface of irregularity q without irrational pencils.

    Derived from the total Chern series 1/(1-t^2)^q of the monad cohomology
    bundle: the top nonzero coefficient index ell <= q-1 forces rank >= ell,
    so h^{1,1} >= 2q + ell.  Equals 3q-2 for even q, 3q-1 for odd q.
    """
    if q < 2:
        raise ValueError("surface bound needs q >= 2")
    order = q - 1
    coeffs = [Fraction(0)] * (order + 1)
    for k in range(0, order // 2 + 1):
        # (1 - t^2)^q truncated
        sign = -1 if k % 2 else 1
        coeffs[2 * k] = Fraction(sign * comb(q, k))
    ct = series_inv(TruncSeries(order, tuple(coeffs)))
    ell = max(i for i, c in enumerate(ct.coeffs) if c != 0)
    bound = 2 * q + ell
    assert bound == (3 * q - 2 if q % 2 == 0 else 3 * q - 1)
    return bound


def gv_check(g: GVData, h: HodgeProfile) -> InequalityReport:
    """chi >= gv_0 with gv_0 = min_i (codim_i - i), plus the isolated-point refinement."""
    if len(g.codims) != h.d:
        raise ValueError("codims must have one entry per index 1..d")
    if any(x < 0 or x > h.q for x in g.codims):
        raise ValueError("codims must lie in 0..q")
    chi = euler_char(h)
    gv0 = min(g.codims[i - 1] - i for i in range(1, h.d + 1))
    rows = [
        CheckRecord(name="chi-at-least-gv0", satisfied=chi >= gv0, lhs=chi, rhs=gv0)
    ]
    if g.p_alpha is not None:
        rhs = h.q - h.d + g.p_alpha
        rows.append(
            CheckRecord(
                name="chi-at-least-q-d-plus-palpha",
                satisfied=chi >= rhs, lhs=chi, rhs=rhs, witness=g.p_alpha,
            )
        )
    return InequalityReport(tuple(rows))


def exorbitance_verdict(h: HodgeProfile) -> str:
    """Decide exorbitance of the canonical series from the Hodge profile alone.

    Exorbitant iff the degree (p_g - chi) Segre number of the dual bundle
    vanishes, valid when p_g - chi <= q - 1.  When that hypothesis fails with
    chi > 0 the series is exorbitant outright; with chi <= 0 (or without the
    isolated-origin flag) the criterion does not decide and
    "outside-criterion" is returned.
    """
    return exorbitance_details(h)["verdict"]


def exorbitance_details(h: HodgeProfile) -> dict:
    if not h.isolated_origin:
        return {"verdict": OUTSIDE_CRITERION, "note": "isolated_origin flag not asserted"}
    chi = euler_char(h)
    k = h.p_g - chi
    if k < 0:
        return {"verdict": OUTSIDE_CRITERION, "note": f"p_g - chi = {k} is negative"}
    if k > h.q - 1:
        if chi > 0:
            return {
                "verdict": EXORBITANT,
                "note": f"p_g - chi = {k} exceeds q - 1 = {h.q - 1} with chi > 0",
            }
        return {
            "verdict": OUTSIDE_CRITERION,
            "note": f"p_g - chi = {k} exceeds q - 1 = {h.q - 1} and chi <= 0: criterion silent",
        }
    val = segre_number(gamma_series(h), k)
    verdict = EXORBITANT if val == 0 else NOT_EXORBITANT
    return {"verdict": verdict, "segre_index": k, "segre_value": val}
