"""Prime-limit transport of endomorphisms to the commutative model.

For each level l in a schedule the endomorphism is specialized at the
primitive l-th root, conjugated through the center isomorphism, and the
resulting polynomial's complex-embedded coefficients are tracked as
trajectories.  A trajectory family converges when the supports stabilize and
the last three values of every surviving coefficient agree to EPS_CONV;
converged limits are rounded to nearby small rationals so integrality of the
limit endomorphism is checkable without being assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .center import CenterPoly, NotCentralError, theta, theta_inverse
from .morphisms import Endomorphism, apply_endo, specialize_endomorphism
from .poisson import standard_bracket, transported_bracket
from .scalars import embed as _embed
from .weylcore import SYMBOLIC, power

__all__ = [
    "PrimeSchedule",
    "CentralityFailure",
    "ConvergenceReport",
    "HatEndoReport",
    "hat_step",
    "hat",
    "hat_endo",
    "check_center_preservation",
    "transport_limit",
    "EPS_CONV",
    "EPS_KILL",
    "ROUND_TOL",
    "MAX_ROUND_DEN",
    "DEFAULT_PRIMES",
]

EPS_CONV = 1e-6       # last-three stability window
EPS_KILL = 1e-9       # coefficients below this at the last two levels vanish
ROUND_TOL = 1e-6      # distance to a small rational that justifies rounding
MAX_ROUND_DEN = 64

# Largest default level keeps exact expansion sizes comfortably bounded.
DEFAULT_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)

VERDICT_CONVERGED = "converged"
VERDICT_DIVERGED = "diverged"
VERDICT_CENTRALITY_FAILED = "centrality-failed"


def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    k = 2
    while k * k <= m:
        if m % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeSchedule:
    """Ascending primes to evaluate at, minus an optional skip set."""

    primes: Tuple[int, ...] = DEFAULT_PRIMES
    skip: frozenset = frozenset()

    def __post_init__(self):
        if not self.primes:
            raise ValueError("empty schedule")
        if list(self.primes) != sorted(set(self.primes)):
            raise ValueError("schedule must be strictly ascending")
        for p in self.primes:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")

    @classmethod
    def default(cls) -> "PrimeSchedule":
        return cls()

    @classmethod
    def up_to(cls, bound: int) -> "PrimeSchedule":
        return cls(tuple(p for p in DEFAULT_PRIMES if p <= bound))

    def levels(self) -> List[int]:
        return [p for p in self.primes if p not in self.skip]


ScheduleLike = Union[PrimeSchedule, Sequence[int], None]


def _schedule_levels(schedule: ScheduleLike) -> List[int]:
    if schedule is None:
        levels = PrimeSchedule.default().levels()
    elif isinstance(schedule, PrimeSchedule):
        levels = schedule.levels()
    else:
        levels = [int(v) for v in schedule]
        if levels != sorted(set(levels)) or any(v < 2 for v in levels):
            raise ValueError("levels must be distinct, ascending, and >= 2")
    if len(levels) < 3:
        raise ValueError("the stability criterion needs at least three levels")
    return levels


@dataclass(frozen=True)
class CentralityFailure:
    """Recorded when the transported image has no central decomposition."""

    level: int
    reason: str


Mono = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class LimitCoeff:
    """Rounded limiting coefficient: exact (re, im) rational pair when the
    rounding tolerance justifies it, always the raw complex value."""

    exact: Optional[Tuple[Fraction, Fraction]]
    approx: complex

    def exact_text(self) -> Optional[str]:
        if self.exact is None:
            return None
        re, im = self.exact
        if im == 0:
            return str(re)
        return f"{re}{'+' if im >= 0 else '-'}{abs(im)}*i"


class ConvergenceReport:
    """Per-level polynomials, coefficient trajectories, and the verdict."""

    __slots__ = (
        "n",
        "poly",
        "levels",
        "results",
        "failed_levels",
        "trajectories",
        "verdict",
        "witness",
        "limit",
        "standard",
        "matches_standard",
    )

    def __init__(self, n, poly, levels, results, failed_levels, trajectories,
                 verdict, witness, limit, standard=None, matches_standard=None):
        self.n = n
        self.poly = poly
        self.levels = tuple(levels)
        self.results = list(results)
        self.failed_levels = tuple(failed_levels)
        self.trajectories = trajectories
        self.verdict = verdict
        self.witness = witness
        self.limit = limit
        self.standard = standard
        self.matches_standard = matches_standard

    @property
    def converged(self) -> bool:
        return self.verdict == VERDICT_CONVERGED

    def limit_polynomial(self) -> Optional[CenterPoly]:
        """The rounded limit as an exact polynomial, when every coefficient
        rounded to a real rational; None otherwise."""
        if self.verdict != VERDICT_CONVERGED:
            return None
        coeffs = {}
        for mono, lc in self.limit.items():
            if lc.exact is None or lc.exact[1] != 0:
                return None
            coeffs[mono] = lc.exact[0]
        return CenterPoly(self.n, coeffs)

    def limit_expr(self) -> Optional[str]:
        from .exprio import print_center

        poly = self.limit_polynomial()
        return None if poly is None else print_center(poly)

    def to_json(self) -> dict:
        from .exprio import print_center

        per_level = []
        for level, res in self.results:
            entry: dict = {"l": level}
            if isinstance(res, CentralityFailure):
                entry["centrality"] = False
                entry["reason"] = res.reason
            else:
                entry["centrality"] = True
                entry["coeffs"] = [
                    {
                        "monomial": [list(mono[0]), list(mono[1])],
                        "exact": str(res.coeffs[mono]),
                        "approx": _reim(_embed(res.coeffs[mono])),
                    }
                    for mono in sorted(res.coeffs)
                ]
            per_level.append(entry)
        out = {
            "poly": print_center(self.poly),
            "primes": per_level,
            "verdict": self.verdict,
            "tolerances": {
                "eps_conv": EPS_CONV,
                "eps_kill": EPS_KILL,
                "round_tol": ROUND_TOL,
                "max_round_den": MAX_ROUND_DEN,
            },
        }
        if self.witness is not None:
            out["witness"] = [list(self.witness[0]), list(self.witness[1])]
        if self.failed_levels:
            out["failed_levels"] = list(self.failed_levels)
        if self.verdict == VERDICT_CONVERGED:
            out["limit"] = {
                "expr": self.limit_expr(),
                "coeffs": [
                    {
                        "monomial": [list(mono[0]), list(mono[1])],
                        "exact": lc.exact_text(),
                        "approx": _reim(lc.approx),
                    }
                    for mono, lc in sorted(self.limit.items())
                ],
            }
        else:
            out["limit"] = None
        if self.standard is not None:
            out["standard"] = print_center(self.standard)
            out["matches_standard"] = self.matches_standard
        return out


def _reim(c: complex) -> List[float]:
    return [c.real, c.imag]


# ---------------------------------------------------------------------------
# single transport step
# ---------------------------------------------------------------------------


def hat_step(e: Endomorphism, p: CenterPoly, level: int,
             qpow: int = 1) -> Union[CenterPoly, CentralityFailure]:
    """Specialize at the level, push p through the center isomorphism, apply,
    and decompose; a missing decomposition is returned as data, because
    center preservation is only guaranteed for almost every root."""
    if e.context.kind != SYMBOLIC:
        raise ValueError("transport needs a symbolic endomorphism")
    if p.n != e.context.n:
        raise ValueError("polynomial arity mismatch")
    if level < 2:
        raise ValueError("need level >= 2")
    e_l = specialize_endomorphism(e, level, qpow)
    if not e_l.validated:
        return CentralityFailure(level, "specialized map violates the relations")
    image = apply_endo(e_l, theta(p, level, qpow))
    try:
        return theta_inverse(image)
    except NotCentralError as err:
        return CentralityFailure(level, str(err))


# ---------------------------------------------------------------------------
# convergence machinery
# ---------------------------------------------------------------------------


def is_stable(values: Sequence[complex]) -> bool:
    """Last-three stability: both earlier values within EPS_CONV of the last."""
    if len(values) < 3:
        return False
    last = values[-1]
    return abs(values[-2] - last) < EPS_CONV and abs(values[-3] - last) < EPS_CONV


def _round_component(x: float) -> Optional[Fraction]:
    for den in range(1, MAX_ROUND_DEN + 1):
        num = round(x * den)
        if abs(x - num / den) <= ROUND_TOL:
            return Fraction(num, den)
    return None


def round_coefficient(c: complex) -> LimitCoeff:
    re = _round_component(c.real)
    im = _round_component(c.imag)
    if re is not None and im is not None:
        return LimitCoeff((re, im), c)
    return LimitCoeff(None, c)


def _assemble_report(n: int, poly: CenterPoly, levels: Sequence[int],
                     results) -> ConvergenceReport:
    good_levels = []
    good_polys = []
    failed = []
    for level, res in results:
        if isinstance(res, CentralityFailure):
            failed.append(level)
        else:
            good_levels.append(level)
            good_polys.append(res)

    support = set()
    for gp in good_polys:
        support.update(gp.coeffs)
    trajectories: Dict[Mono, List[complex]] = {
        mono: [_embed(gp.coeffs[mono]) if mono in gp.coeffs else 0j for gp in good_polys]
        for mono in support
    }

    if len(good_levels) < 3:
        return ConvergenceReport(
            n, poly, levels, results, failed, trajectories,
            VERDICT_CENTRALITY_FAILED, None, {},
        )

    witness = None
    limit: Dict[Mono, LimitCoeff] = {}
    for mono in sorted(support):
        vals = trajectories[mono]
        if abs(vals[-1]) < EPS_KILL and abs(vals[-2]) < EPS_KILL:
            continue  # vanishing tail: excluded from the limit
        if not is_stable(vals):
            witness = mono
            break
        lc = round_coefficient(vals[-1])
        if lc.exact == (Fraction(0), Fraction(0)):
            continue  # rounds to zero: purge from the limit polynomial
        limit[mono] = lc

    if witness is not None:
        return ConvergenceReport(
            n, poly, levels, results, failed, trajectories,
            VERDICT_DIVERGED, witness, {},
        )
    return ConvergenceReport(
        n, poly, levels, results, failed, trajectories,
        VERDICT_CONVERGED, None, limit,
    )


def hat(e: Endomorphism, p: CenterPoly, schedule: ScheduleLike = None,
        qpow: int = 1) -> ConvergenceReport:
    """Run the transport over the schedule and judge convergence."""
    levels = _schedule_levels(schedule)
    results = [(level, hat_step(e, p, level, qpow)) for level in levels]
    return _assemble_report(p.n, p, levels, results)


@dataclass
class HatEndoReport:
    """Transport of all 2n coordinates plus the composite verdict."""

    reports: Dict[str, ConvergenceReport]
    converged: bool
    induced: Optional[Dict[str, CenterPoly]]

    def to_json(self) -> dict:
        out = {
            "converged": self.converged,
            "coordinates": {k: r.to_json() for k, r in sorted(self.reports.items())},
        }
        if self.induced is not None:
            from .exprio import print_center

            out["induced"] = {k: print_center(v) for k, v in sorted(self.induced.items())}
        else:
            out["induced"] = None
        return out


def hat_endo(e: Endomorphism, schedule: ScheduleLike = None,
             qpow: int = 1) -> HatEndoReport:
    """Transport every coordinate polynomial; converged iff all converge.

    When all coordinates converge to exact real-rational limits, the induced
    endomorphism of the polynomial ring is assembled.
    """
    n = e.context.n
    reports = {}
    for i in range(1, n + 1):
        reports[f"r{i}"] = hat(e, CenterPoly.r(n, i), schedule, qpow)
        reports[f"s{i}"] = hat(e, CenterPoly.s(n, i), schedule, qpow)
    converged = all(r.converged for r in reports.values())
    induced = None
    if converged:
        polys = {k: r.limit_polynomial() for k, r in reports.items()}
        if all(v is not None for v in polys.values()):
            induced = polys
    return HatEndoReport(reports, converged, induced)


def check_center_preservation(e: Endomorphism, level: int, qpow: int = 1) -> bool:
    """True iff the image of every generator's l-th power decomposes over
    the center at this level."""
    e_l = specialize_endomorphism(e, level, qpow)
    if not e_l.validated:
        return False
    ctx = e_l.context
    for i in range(1, ctx.n + 1):
        for gen in (ctx.x(i), ctx.d(i)):
            image = apply_endo(e_l, power(gen, level))
            try:
                theta_inverse(image)
            except NotCentralError:
                return False
    return True


def transport_limit(p: CenterPoly, q: CenterPoly,
                    schedule: ScheduleLike = None,
                    qpow: int = 1) -> ConvergenceReport:
    """Bracket transport over the schedule, compared against the standard
    symplectic bracket when a rounded exact limit exists."""
    levels = _schedule_levels(schedule)
    results = [(level, transported_bracket(p, q, level, qpow)) for level in levels]
    report = _assemble_report(p.n, p, levels, results)
    std = standard_bracket(p, q)
    report.standard = std
    if report.converged:
        lim = report.limit_polynomial()
        report.matches_standard = (lim == std) if lim is not None else None
    return report
