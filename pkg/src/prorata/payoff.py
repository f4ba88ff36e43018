"""Concave payoff curves f with f(0) = 0 and their diagnostics.

A payoff family maps the total tendered amount t = 1'x to the pool-level
payout f(t); players receive pro-rata shares of it. Three parametric
families cover the common cases (a constant-product-pool arbitrage profit,
a power curve, and a piecewise-linear table), plus a thin adapter for
ad-hoc callables used by the verification probes.

All ``value``/``derivative`` methods accept floats or numpy arrays.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, ClassVar, Union

import numpy as np

from .errors import ConfigError, DomainExceeded, NoFiniteRoot, NoPositiveRegion
from .search import bisect_root, golden_section_maximize

# Geometric scan for a point with f > 0: by concavity the positive region
# (if any) touches (0, 1] whenever f(1) <= 0, so scanning down dominates;
# a short upward leg covers non-concave callables.
_SCAN_DOWN_STEPS = 200
_SCAN_UP_STEPS = 60
DEFAULT_BRACKET_RTOL = 1e-10
DEFAULT_EXPANSION_CAP = 1e12
DEFAULT_FD_STEP_SCALE = 1e-6


@dataclass(frozen=True)
class CfmmArbitragePayoff:
    """Arbitrage profit against a two-asset constant-product pool.

    f(t) = gamma*r2*t / (r1 + gamma*t) - c*t: the pool's output for input t
    valued at the external unit price, minus the cost of the tendered t.
    ``gamma`` is the fee multiplier (1 = no fee), ``r1``/``r2`` the pool
    reserves, ``c`` the external price of asset B in units of asset A.
    """

    gamma: float
    r1: float
    r2: float
    c: float

    kind: ClassVar[str] = "cfmm"

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        if self.r1 <= 0.0 or self.r2 <= 0.0:
            raise ValueError(f"reserves must be positive, got r1={self.r1}, r2={self.r2}")
        if self.c <= 0.0:
            raise ValueError(f"external price must be positive, got {self.c}")

    def value(self, t):
        return self.gamma * self.r2 * t / (self.r1 + self.gamma * t) - self.c * t

    def derivative(self, t):
        denom = self.r1 + self.gamma * t
        return self.gamma * self.r1 * self.r2 / (denom * denom) - self.c


@dataclass(frozen=True)
class PowerPayoff:
    """f(t) = t**beta - gamma*t with 0 < beta < 1 and gamma > 0."""

    beta: float
    gamma: float

    kind: ClassVar[str] = "power"

    def __post_init__(self) -> None:
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must be in (0, 1), got {self.beta}")
        if self.gamma <= 0.0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def value(self, t):
        return t**self.beta - self.gamma * t

    def derivative(self, t):
        # defined for t > 0 only
        return self.beta * t ** (self.beta - 1.0) - self.gamma


@dataclass(frozen=True)
class TabulatedPayoff:
    """Piecewise-linear payoff through the knots ``(ts, fs)``.

    The table must start at (0, 0); evaluation past the last knot raises
    :class:`DomainExceeded`. Derivatives are central finite differences,
    so values *at* a kink land between the one-sided slopes.
    """

    ts: tuple[float, ...]
    fs: tuple[float, ...]

    kind: ClassVar[str] = "table"

    def __post_init__(self) -> None:
        object.__setattr__(self, "ts", tuple(float(t) for t in self.ts))
        object.__setattr__(self, "fs", tuple(float(f) for f in self.fs))
        if len(self.ts) != len(self.fs):
            raise ValueError("ts and fs must have equal length")
        if len(self.ts) < 2:
            raise ValueError("need at least two knots")
        if self.ts[0] != 0.0 or self.fs[0] != 0.0:
            raise ValueError("table must start at (0, 0)")
        if any(b <= a for a, b in zip(self.ts, self.ts[1:])):
            raise ValueError("ts must be strictly increasing")

    @property
    def domain_max(self) -> float:
        return self.ts[-1]

    def value(self, t):
        arr = np.asarray(t, dtype=float)
        if np.any(arr > self.ts[-1]):
            raise DomainExceeded(
                f"t={np.max(arr)} beyond last knot {self.ts[-1]}"
            )
        out = np.interp(arr, self.ts, self.fs)
        return float(out) if np.ndim(t) == 0 else out

    def derivative(self, t, step_scale: float = DEFAULT_FD_STEP_SCALE):
        arr = np.asarray(t, dtype=float)
        h = step_scale * np.maximum(1.0, np.abs(arr))
        hi = np.minimum(arr + h, self.ts[-1])
        lo = np.maximum(arr - h, 0.0)
        out = (self.value(hi) - self.value(lo)) / (hi - lo)
        return float(out) if np.ndim(t) == 0 else out


@dataclass(frozen=True)
class CallablePayoff:
    """Adapter for ad-hoc payoffs given as plain functions.

    Used for probe curves that none of the parametric families express
    exactly (e.g. shifted quadratics). When ``deriv`` is omitted the
    derivative falls back to a central finite difference.
    """

    fn: Callable[[float], float]
    deriv: Callable[[float], float] | None = None

    kind: ClassVar[str] = "callable"

    def __post_init__(self) -> None:
        if abs(float(self.fn(0.0))) > 1e-12:
            raise ValueError("payoff must satisfy f(0) = 0")

    def value(self, t):
        return self.fn(t)

    def derivative(self, t, step_scale: float = DEFAULT_FD_STEP_SCALE):
        if self.deriv is not None:
            return self.deriv(t)
        h = step_scale * np.maximum(1.0, np.abs(t))
        return (self.fn(t + h) - self.fn(t - h)) / (2.0 * h)


PayoffFamily = Union[CfmmArbitragePayoff, PowerPayoff, TabulatedPayoff, CallablePayoff]


def pro_rata_payoff(family: PayoffFamily, x, y):
    """Payoff x/(x+y) * f(x+y) to a player tendering x against the rest y.

    Exactly 0.0 when x = 0 (no division is attempted), and exactly f(t)
    when y = 0. Accepts floats or broadcastable arrays.
    """
    if isinstance(x, (int, float)) and isinstance(y, (int, float)):
        if x <= 0.0:
            return 0.0
        t = x + y
        return x * family.value(t) / t
    x_arr = np.asarray(x, dtype=float)
    t = x_arr + np.asarray(y, dtype=float)
    x_b = np.broadcast_to(x_arr, t.shape)
    pos = t > 0.0
    vals = family.value(np.where(pos, t, 0.0))
    share = np.divide(x_b, t, out=np.zeros(t.shape), where=pos)
    return np.where(x_b > 0.0, share * vals, 0.0)


@dataclass(frozen=True)
class PayoffDiagnostics:
    """Key landmarks of a payoff curve on its positive region.

    ``root`` is the smallest positive zero past the region where f > 0,
    ``max_value``/``argmax`` describe sup f over [0, root], and
    ``positive_witness`` is a point 0 < z < root with f(z) > 0.
    """

    root: float
    max_value: float
    argmax: float
    positive_witness: float


def _find_positive_point(family: PayoffFamily) -> float:
    if isinstance(family, TabulatedPayoff):
        fs = np.asarray(family.fs)
        if np.max(fs) <= 0.0:
            raise NoPositiveRegion("payoff is nonpositive at every knot")
        return family.ts[int(np.argmax(fs))]
    candidates = [1.0]
    candidates += [2.0**-k for k in range(1, _SCAN_DOWN_STEPS + 1)]
    candidates += [2.0**k for k in range(1, _SCAN_UP_STEPS + 1)]
    for t in candidates:
        if family.value(t) > 0.0:
            return t
    raise NoPositiveRegion("no point with f > 0 found on a geometric scan")


def diagnostics(
    family: PayoffFamily,
    bracket_rtol: float = DEFAULT_BRACKET_RTOL,
    expansion_cap: float = DEFAULT_EXPANSION_CAP,
) -> PayoffDiagnostics:
    """Locate the positive root, the maximum, and a positivity witness.

    The root is bracketed by doubling from a point with f > 0 until the
    sign flips (capped at ``expansion_cap`` times the start, or at the last
    knot for tabulated families) and then refined by bisection. The
    maximum over [0, root] comes from golden-section search; for tabulated
    families it is read off the knots, where piecewise-linear maxima live.
    """
    t_pos = _find_positive_point(family)
    domain_hi = family.domain_max if isinstance(family, TabulatedPayoff) else math.inf
    cap = expansion_cap * max(t_pos, 1.0)

    root = None
    lo = hi = t_pos
    while True:
        nxt = min(hi * 2.0, domain_hi)
        v = family.value(nxt)
        if v < 0.0:
            lo, hi = hi, nxt
            break
        if v == 0.0:
            root = nxt
            break
        lo = hi = nxt
        if nxt >= domain_hi:
            raise NoFiniteRoot(
                f"payoff still positive at the domain end t={domain_hi}"
            )
        if nxt > cap:
            raise NoFiniteRoot(f"payoff still positive at t={nxt:g} (cap reached)")
    if root is None:
        root = bisect_root(family.value, lo, hi, rel_tol=bracket_rtol)

    if isinstance(family, TabulatedPayoff):
        ts = np.asarray(family.ts)
        fs = np.asarray(family.fs)
        inside = ts <= root
        idx = int(np.argmax(np.where(inside, fs, -np.inf)))
        argmax, max_value = float(ts[idx]), float(fs[idx])
    else:
        argmax = golden_section_maximize(family.value, 0.0, root)
        max_value = family.value(argmax)

    witness = argmax
    if not (0.0 < witness < root and family.value(witness) > 0.0):
        for z in (0.5 * argmax, t_pos):
            if 0.0 < z < root and family.value(z) > 0.0:
                witness = z
                break
        else:
            raise NoPositiveRegion("could not certify a positivity witness")
    return PayoffDiagnostics(
        root=root, max_value=max_value, argmax=argmax, positive_witness=witness
    )


@functools.lru_cache(maxsize=256)
def _cached_diagnostics(family: PayoffFamily) -> PayoffDiagnostics:
    """Default-tolerance diagnostics, memoized (families are frozen/hashable)."""
    return diagnostics(family)


_FAMILY_KEYS = {
    "cfmm": {"gamma", "r1", "r2", "c"},
    "power": {"beta", "gamma"},
    "table": {"ts", "fs"},
}


def family_from_dict(spec: dict) -> PayoffFamily:
    """Build a payoff family from a config mapping; unknown keys are errors."""
    if "kind" not in spec:
        raise ConfigError("family spec needs a 'kind' (cfmm, power, or table)")
    kind = spec["kind"]
    if kind not in _FAMILY_KEYS:
        raise ConfigError(f"unknown family kind {kind!r}")
    given = set(spec) - {"kind"}
    allowed = _FAMILY_KEYS[kind]
    if given - allowed:
        raise ConfigError(
            f"unknown keys for {kind} family: {sorted(given - allowed)}"
        )
    if allowed - given:
        raise ConfigError(
            f"missing keys for {kind} family: {sorted(allowed - given)}"
        )
    try:
        if kind == "cfmm":
            return CfmmArbitragePayoff(
                gamma=float(spec["gamma"]), r1=float(spec["r1"]),
                r2=float(spec["r2"]), c=float(spec["c"]),
            )
        if kind == "power":
            return PowerPayoff(beta=float(spec["beta"]), gamma=float(spec["gamma"]))
        return TabulatedPayoff(ts=tuple(spec["ts"]), fs=tuple(spec["fs"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad {kind} family parameters: {exc}") from exc
