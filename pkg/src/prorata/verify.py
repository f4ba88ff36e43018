"""Certification of the side conditions behind the equilibrium theory.

Three checks, each returning a :class:`ConditionReport` with replayable
witnesses:

* ``chord-strict`` — f(alpha*t) > alpha*f(t) on sampled (alpha, t); the
  strict version of concavity-through-the-origin that makes the
  symmetric equilibrium unique.
* ``linear-segment-at-zero`` — detects f(t)/t constant near 0, the way
  strictness typically fails (then every split of a total is
  payoff-equivalent and uniqueness breaks).
* ``rosen-monotone-probe`` — a two-point sample of the diagonal
  strict-monotonicity condition behind the classical uniqueness route;
  it fails even for well-behaved payoffs here, which is why the chord
  argument is the one that matters.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NoFiniteRoot
from .payoff import (
    CallablePayoff,
    PayoffFamily,
    TabulatedPayoff,
    _cached_diagnostics,
)

CHORD_STRICT = "chord-strict"
LINEAR_SEGMENT_AT_ZERO = "linear-segment-at-zero"
ROSEN_MONOTONE_PROBE = "rosen-monotone-probe"

DEFAULT_SAMPLES = 10_000
DEFAULT_STRICT_MARGIN = 1e-12
DEFAULT_RATIO_RTOL = 1e-10
_MAX_WITNESSES = 8


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    holds: bool
    witness: tuple[tuple[float, ...], ...]
    details: dict = field(default_factory=dict)


def _sample_ceiling(family: PayoffFamily, domain_hi: float | None) -> float:
    if domain_hi is not None:
        return float(domain_hi)
    if isinstance(family, TabulatedPayoff):
        # bounded tables may have no root (f still positive at the end)
        try:
            return _cached_diagnostics(family).root
        except NoFiniteRoot:
            return family.domain_max
    return _cached_diagnostics(family).root


def check_chord_condition(
    family: PayoffFamily,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    domain_hi: float | None = None,
    strict_margin: float = DEFAULT_STRICT_MARGIN,
) -> ConditionReport:
    """Sample the strict chord inequality f(alpha*t) > alpha*f(t).

    alpha ~ U(0, 1) and t ~ U(0, hi) with hi the positive root (or the
    table end); a deterministic geometric ladder of (alpha=1/2, t) probes
    is added so segments hiding near zero are found regardless of seed.
    Violations within ``strict_margin`` (relative) of equality count as
    failures; up to eight are returned as (alpha, t, gap) witnesses.
    """
    hi = _sample_ceiling(family, domain_hi)
    rng = np.random.default_rng(seed)
    alpha = rng.uniform(1e-9, 1.0 - 1e-9, size=samples)
    t = rng.uniform(0.0, hi, size=samples)
    keep = t > 0.0
    alpha, t = alpha[keep], t[keep]
    # Deterministic halving probes; stop at hi/2**12 — below that scale the
    # chord gap of a smooth curve (O(t^2)) drowns in the O(t) margin and
    # every function looks linear.
    ladder = hi * 2.0 ** -np.arange(0, 13, dtype=float)
    alpha = np.concatenate([alpha, np.full(ladder.shape, 0.5)])
    t = np.concatenate([t, ladder])

    lhs = family.value(alpha * t)
    rhs = alpha * family.value(t)
    gap = lhs - rhs
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0e-300)
    bad = gap <= strict_margin * scale
    idx = np.flatnonzero(bad)
    witness = tuple(
        (float(alpha[i]), float(t[i]), float(gap[i])) for i in idx[:_MAX_WITNESSES]
    )
    return ConditionReport(
        condition=CHORD_STRICT,
        holds=idx.size == 0,
        witness=witness,
        details={
            "samples": int(t.size),
            "violations": int(idx.size),
            "hi": hi,
            "strict_margin": strict_margin,
        },
    )


def _collinear_through_origin(
    family: PayoffFamily, slope: float, t: float, points: int = 17
) -> bool:
    s = np.linspace(t / points, t, points)
    resid = np.abs(family.value(s) - slope * s)
    return bool(np.all(resid <= 1e-8 * np.maximum(1.0, np.abs(slope * s))))


def detect_linear_segment_at_zero(
    family: PayoffFamily,
    t_pairs: Sequence[tuple[float, float]] | None = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    domain_hi: float | None = None,
    ratio_rtol: float = DEFAULT_RATIO_RTOL,
) -> ConditionReport:
    """Look for distinct t < t' with f(t)/t == f(t')/t' (within
    ``ratio_rtol``), then confirm f is collinear with the origin on (0, t]
    before reporting a segment. ``holds=True`` means a segment was found.

    Pairs come from ``t_pairs`` when given, otherwise from seeded uniform
    sampling plus a geometric ladder of (t, t/2) probes toward zero.
    """
    if t_pairs is not None:
        # explicit pairs need no sampling ceiling, so families without a
        # finite positive root are fine here
        pairs = np.asarray(t_pairs, dtype=float)
        hi = float(np.max(pairs)) if pairs.size else 0.0
    else:
        hi = _sample_ceiling(family, domain_hi)
        rng = np.random.default_rng(seed)
        a = rng.uniform(0.0, hi, size=samples)
        b = rng.uniform(0.0, hi, size=samples)
        lo = np.minimum(a, b)
        up = np.maximum(a, b)
        keep = (lo > 0.0) & (up - lo > 1e-6 * hi)
        ladder = hi * 2.0 ** -np.arange(0, 13, dtype=float)
        pairs = np.column_stack(
            [
                np.concatenate([lo[keep], ladder / 2.0]),
                np.concatenate([up[keep], ladder]),
            ]
        )
    t, tp = pairs[:, 0], pairs[:, 1]
    if np.any(t <= 0.0) or np.any(tp <= t):
        raise ValueError("pairs must satisfy 0 < t < t'")
    r_lo = family.value(t) / t
    r_hi = family.value(tp) / tp
    close = np.abs(r_lo - r_hi) <= ratio_rtol * np.maximum(np.abs(r_lo), np.abs(r_hi))
    confirmed = []
    for i in np.flatnonzero(close):
        if _collinear_through_origin(family, float(r_hi[i]), float(t[i])):
            confirmed.append((float(t[i]), float(tp[i]), float(abs(r_lo[i] - r_hi[i]))))
        if len(confirmed) >= _MAX_WITNESSES:
            break
    return ConditionReport(
        condition=LINEAR_SEGMENT_AT_ZERO,
        holds=bool(confirmed),
        witness=tuple(confirmed),
        details={
            "pairs": int(t.size),
            "ratio_matches": int(np.count_nonzero(close)),
            "hi": hi,
            "ratio_rtol": ratio_rtol,
        },
    )


def rosen_probe(family: PayoffFamily, n: int) -> ConditionReport:
    """Evaluate the diagonal-monotonicity sample
    E = (1/n)(f'(n) - f'(n/2)) + (1 - 1/n)(f(n) - 2 f(n/2));
    the condition needs E > 0, so ``holds=False`` whenever E <= 0.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ValueError(f"n must be an integer >= 2, got {n!r}")
    uses_fd = isinstance(family, TabulatedPayoff) or (
        isinstance(family, CallablePayoff) and family.deriv is None
    )
    f_hi, f_lo = float(family.value(float(n))), float(family.value(n / 2.0))
    d_hi, d_lo = float(family.derivative(float(n))), float(family.derivative(n / 2.0))
    e_value = (d_hi - d_lo) / n + (1.0 - 1.0 / n) * (f_hi - 2.0 * f_lo)
    return ConditionReport(
        condition=ROSEN_MONOTONE_PROBE,
        holds=e_value > 0.0,
        witness=((float(n), f_hi, d_hi), (n / 2.0, f_lo, d_lo)),
        details={
            "e_value": e_value,
            "derivative": "finite-difference" if uses_fd else "analytic",
        },
    )


def replay_witness(family: PayoffFamily, report: ConditionReport) -> bool:
    """Recompute a report's witnesses from scratch; True when every row
    still supports the recorded verdict."""
    if report.condition == CHORD_STRICT:
        margin = report.details.get("strict_margin", DEFAULT_STRICT_MARGIN)
        if report.holds:
            return not report.witness
        for alpha, t, _ in report.witness:
            lhs = family.value(alpha * t)
            rhs = alpha * family.value(t)
            scale = max(abs(lhs), abs(rhs), 1.0e-300)
            if lhs - rhs > margin * scale:
                return False
        return bool(report.witness)
    if report.condition == LINEAR_SEGMENT_AT_ZERO:
        if not report.holds:
            return not report.witness
        rtol = report.details.get("ratio_rtol", DEFAULT_RATIO_RTOL)
        for t, tp, _ in report.witness:
            r_lo = family.value(t) / t
            r_hi = family.value(tp) / tp
            if abs(r_lo - r_hi) > rtol * max(abs(r_lo), abs(r_hi)):
                return False
            if not _collinear_through_origin(family, r_hi, t):
                return False
        return bool(report.witness)
    if report.condition == ROSEN_MONOTONE_PROBE:
        (n, _, _), _ = report.witness
        fresh = rosen_probe(family, int(n))
        return fresh.holds == report.holds
    raise ValueError(f"unknown condition {report.condition!r}")
