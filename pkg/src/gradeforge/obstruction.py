"""Evidence scans for infinite Hadamard grade.

Three semi-decision tests over a truncated series, each a necessary-condition
check run in reverse: unbounded denominator prime support, growth too fast
for any positive radius of convergence, and (for ±1 coefficient sequences)
failure of eventual periodicity.  Firing any one of them is *evidence* — a
truncation can never prove infinitude, so every report carries the
truncation order it was computed from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import NotSignSequence, TooSparse
from .series import TruncSeries

TRIAL_DIVISION_BOUND = 10 ** 6

ZERO_EVIDENCE_THRESHOLD = 0.5
POSITIVE_EVIDENCE_THRESHOLD = 0.1


class PrimeSupportScan(NamedTuple):
    """Primes dividing coefficient denominators, with first-occurrence index.

    `incomplete` lists indices whose denominator kept a residue that trial
    division up to 10^6 could neither remove nor certify prime.
    """

    primes: tuple[tuple[int, int], ...]
    still_growing: bool
    incomplete: tuple[int, ...]


class RadiusEstimate(NamedTuple):
    beta: float
    classification: str


@dataclass(frozen=True)
class Periodicity:
    """Outcome of the ±1 periodicity scan (report form)."""

    kind: str  # eventually-periodic | aperiodic-up-to | not-a-sign-sequence
    preperiod: Optional[int] = None
    period: Optional[int] = None
    bound: Optional[int] = None

    def to_json_dict(self) -> dict:
        if self.kind == "eventually-periodic":
            return {
                "kind": self.kind,
                "preperiod": self.preperiod,
                "period": self.period,
            }
        if self.kind == "aperiodic-up-to":
            return {"kind": self.kind, "bound": self.bound}
        return {"kind": self.kind}


def _factor_denominator(den: int) -> tuple[list[int], bool]:
    """Prime factors of den by trial division; flag true when a residue
    survived unfactored (composite with no factor <= 10^6)."""
    primes = []
    residue = den
    d = 2
    while d <= TRIAL_DIVISION_BOUND and d * d <= residue:
        if residue % d == 0:
            primes.append(d)
            while residue % d == 0:
                residue //= d
        d += 1 if d == 2 else 2
    if residue > 1:
        if d * d > residue:
            # no factor below sqrt: the residue is prime
            primes.append(residue)
            return primes, False
        return primes, True
    return primes, False


def prime_support_scan(f: TruncSeries, window: int) -> PrimeSupportScan:
    """Scan denominator prime support; flag support still growing near the end.

    still_growing is true iff some prime makes its first appearance within
    the final `window` indices — the signature of support that keeps
    expanding with the truncation, i.e. of a series that cannot have finite
    Hadamard grade.
    """
    if window < 1:
        raise ValueError("window must be positive")
    if f.order < 2 * window:
        raise ValueError(
            f"need at least {2 * window} coefficients for window {window}"
        )
    first: dict[int, int] = {}
    incomplete = []
    for n, c in enumerate(f.coeffs):
        den = c.denominator
        if den == 1:
            continue
        primes, leftover = _factor_denominator(den)
        if leftover:
            incomplete.append(n)
        for p in primes:
            first.setdefault(p, n)
    cutoff = f.order - window
    return PrimeSupportScan(
        primes=tuple(sorted(first.items())),
        still_growing=any(n >= cutoff for n in first.values()),
        incomplete=tuple(incomplete),
    )


def radius_estimate(f: TruncSeries, *,
                    zero_threshold: float = ZERO_EVIDENCE_THRESHOLD,
                    positive_threshold: float = POSITIVE_EVIDENCE_THRESHOLD,
                    ) -> RadiusEstimate:
    """Fit log|a_n| ~ beta·n·log n + c·n over the last half of the data.

    beta >= zero_threshold means factorial-type growth (radius zero);
    beta <= positive_threshold with the per-term exponential rate staying
    consistent with the fit means positive radius; anything else is
    inconclusive.
    """
    n_terms = f.order
    if n_terms < 16:
        raise ValueError("radius fit needs at least 16 coefficients")
    nonzero = sum(1 for c in f.coeffs if c != 0)
    if 2 * nonzero < n_terms:
        raise TooSparse(
            f"only {nonzero} of {n_terms} coefficients are nonzero"
        )
    points = [
        (n, math.log(abs(c.numerator)) - math.log(c.denominator))
        for n, c in enumerate(f.coeffs)
        if n >= n_terms // 2 and c != 0
    ]
    design = np.array([[n * math.log(n), float(n)] for n, _ in points])
    target = np.array([y for _, y in points])
    (beta, c_lin), *_ = np.linalg.lstsq(design, target, rcond=None)
    beta = float(beta)
    if beta >= zero_threshold:
        return RadiusEstimate(beta, "zero-evidence")
    if beta <= positive_threshold:
        # bounded |a_n|^(1/n): no point's exponential rate may drift far
        # above the fitted rate
        if all(y / n <= beta * math.log(n) + c_lin + 1.0 for n, y in points):
            return RadiusEstimate(beta, "positive-evidence")
    return RadiusEstimate(beta, "inconclusive")


def eventual_period(signs: Sequence[int], max_period: int) -> Periodicity:
    """Least (period, preperiod) consistent with a ±1 sequence, or aperiodic.

    A candidate period q with minimal preperiod ℓ is accepted only when the
    periodic tail covers at least two full periods *and* at least half the
    data (ℓ + 2q <= n and ℓ <= n/2).  Without the half-data guard, short
    accidental suffix matches — the Thue–Morse word echoes itself at shift 8
    over its final 16 letters — would masquerade as eventual periodicity.
    The result is a report about the supplied window, not a proof.
    """
    n = len(signs)
    if max_period < 1:
        raise ValueError("max_period must be positive")
    if n < 3 * max_period:
        raise ValueError(
            f"need at least {3 * max_period} signs for max_period "
            f"{max_period}, got {n}"
        )
    for s in signs:
        if s not in (1, -1):
            raise NotSignSequence(f"entry {s!r} is not ±1")
    for q in range(1, max_period + 1):
        pre = 0
        for i in range(n - q - 1, -1, -1):
            if signs[i] != signs[i + q]:
                pre = i + 1
                break
        if pre + 2 * q <= n and 2 * pre <= n:
            return Periodicity("eventually-periodic", preperiod=pre, period=q)
    return Periodicity("aperiodic-up-to", bound=max_period)


@dataclass(frozen=True)
class ObstructionReport:
    prime_support: tuple[tuple[int, int], ...]
    prime_still_growing: bool
    radius_beta: Optional[float]
    radius_class: str
    periodicity: Periodicity
    verdict: str
    truncation: int

    def to_json_dict(self) -> dict:
        return {
            "prime_support": [list(pair) for pair in self.prime_support],
            "radius": {"beta": self.radius_beta, "class": self.radius_class},
            "periodicity": self.periodicity.to_json_dict(),
            "verdict": self.verdict,
            "truncation": self.truncation,
        }


def obstruction_report(f: TruncSeries, *,
                       window: int = 10,
                       max_period: int = 60,
                       zero_threshold: float = ZERO_EVIDENCE_THRESHOLD,
                       positive_threshold: float = POSITIVE_EVIDENCE_THRESHOLD,
                       ) -> ObstructionReport:
    """Run all three scans and compose the verdict.

    The verdict is infinite-grade-evidence iff at least one scan fired:
    growing prime support, zero-radius growth, or an aperiodic ±1 sequence.
    Budgets are clamped to what the truncation supports.
    """
    window = max(1, min(window, f.order // 2))
    support = prime_support_scan(f, window)

    try:
        beta, radius_class = radius_estimate(
            f,
            zero_threshold=zero_threshold,
            positive_threshold=positive_threshold,
        )
        radius_beta: Optional[float] = beta
    except TooSparse:
        radius_beta, radius_class = None, "inconclusive"

    try:
        periodicity = eventual_period(
            list(f.coeffs),
            max(1, min(max_period, f.order // 3)),
        )
    except NotSignSequence:
        periodicity = Periodicity("not-a-sign-sequence")

    fired = (
        support.still_growing
        or radius_class == "zero-evidence"
        or periodicity.kind == "aperiodic-up-to"
    )
    return ObstructionReport(
        prime_support=support.primes,
        prime_still_growing=support.still_growing,
        radius_beta=radius_beta,
        radius_class=radius_class,
        periodicity=periodicity,
        verdict="infinite-grade-evidence" if fired else "no-obstruction-found",
        truncation=f.order,
    )
