"""Symmetric equilibria and single-player best responses.

The unique nontrivial symmetric equilibrium has the n players jointly
tender the q in (0, w) maximizing q**(n-1) * f(q); each plays q/n. For the
cfmm and power families q has a closed form, used by default; any family
can be solved numerically via golden-section search on the log objective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NoEquilibrium, NoFiniteRoot, NoPositiveRegion
from .payoff import (
    CfmmArbitragePayoff,
    PayoffFamily,
    PowerPayoff,
    TabulatedPayoff,
    _cached_diagnostics,
    pro_rata_payoff,
)
from .search import golden_section_maximize

SOLVE_METHODS = ("auto", "closed", "numeric")


@dataclass(frozen=True)
class EquilibriumResult:
    q: float                  # total tendered at equilibrium
    n: int
    per_player: float         # q / n
    equilibrium_payoff: float  # f(q) / n, each player's payoff
    foc_residual: float       # |(n-1) f(q) + q f'(q)|
    method: str


@dataclass(frozen=True)
class BestResponseResult:
    x: float
    achieved_payoff: float
    at_boundary: str  # "zero", "budget", or "interior"


def foc_residual(family: PayoffFamily, n: int, q: float) -> float:
    """First-order-condition residual |(n-1) f(q) + q f'(q)| at total q."""
    return abs((n - 1) * family.value(q) + q * family.derivative(q))


def _signed_foc(family: PayoffFamily, n: int, q: float) -> float:
    return (n - 1) * family.value(q) + q * family.derivative(q)


def _refine_foc_root(
    family: PayoffFamily, n: int, q: float, lo: float, hi: float
) -> float:
    """Secant-polish the stationarity condition around the search output.

    Golden section locates q to ~1e-12 relative, which at large totals still
    leaves an absolute first-order-condition residual; a few secant steps on
    (n-1) f(q) + q f'(q) close the gap. Steps that leave the bracket stop the
    iteration, and the point with the smallest |residual| seen wins, so a
    family with a rough finite-difference derivative degrades gracefully to
    the unpolished q.
    """
    a = q
    b = q * (1.0 + 1e-7)
    if not (lo < b < hi):
        b = q * (1.0 - 1e-7)
    fa, fb = _signed_foc(family, n, a), _signed_foc(family, n, b)
    best, best_abs = (a, abs(fa)) if abs(fa) <= abs(fb) else (b, abs(fb))
    for _ in range(8):
        if fb == fa:
            break
        c = b - fb * (b - a) / (fb - fa)
        if not math.isfinite(c) or not (lo < c < hi):
            break
        fc = _signed_foc(family, n, c)
        a, fa, b, fb = b, fb, c, fc
        if abs(fc) < best_abs:
            best, best_abs = c, abs(fc)
        if fc == 0.0:
            break
    return best


def _closed_form_power(family: PowerPayoff, n: int) -> float:
    beta, gamma = family.beta, family.gamma
    return ((beta + n - 1.0) / (n * gamma)) ** (1.0 / (1.0 - beta))


def _closed_form_cfmm(family: CfmmArbitragePayoff, n: int) -> float:
    # Roots of (c n g^2) q^2 + (g^2 r2 + 2 c n r1 g - g^2 n r2) q
    #          + (c n r1^2 - g n r1 r2) = 0; the equilibrium is the larger.
    g, r1, r2, c = family.gamma, family.r1, family.r2, family.c
    a = c * n * g * g
    b = g * g * r2 + 2.0 * c * n * r1 * g - g * g * n * r2
    c0 = c * n * r1 * r1 - g * n * r1 * r2
    disc = b * b - 4.0 * a * c0
    if disc < 0.0:
        raise NoEquilibrium("equilibrium quadratic has no real root")
    sq = math.sqrt(disc)
    if b >= 0.0:
        root1 = (-b - sq) / (2.0 * a)
    else:
        root1 = (-b + sq) / (2.0 * a)
    root2 = c0 / (a * root1) if root1 != 0.0 else (-b + sq) / (2.0 * a)
    q = max(root1, root2)
    if q <= 0.0:
        raise NoEquilibrium("equilibrium quadratic has no positive root")
    return q


def solve_symmetric(
    family: PayoffFamily, n: int, method: str = "auto"
) -> EquilibriumResult:
    """Solve for the symmetric equilibrium of the n-player game.

    ``method="auto"`` picks the closed form when the family has one and
    golden-section otherwise; ``"closed"``/``"numeric"`` force the route.
    Numeric solving maximizes F(q) = (n-1) log q + log f(q) over
    (argmax f, w), where the equilibrium total must lie for n >= 2, then
    secant-polishes the stationarity condition to machine precision.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if method not in SOLVE_METHODS:
        raise ValueError(f"method must be one of {SOLVE_METHODS}, got {method!r}")

    use_closed = isinstance(family, (PowerPayoff, CfmmArbitragePayoff))
    if method == "closed" and not use_closed:
        raise ValueError(f"no closed form for {family.kind} families")
    if method == "numeric":
        use_closed = False

    if use_closed:
        if isinstance(family, PowerPayoff):
            q = _closed_form_power(family, n)
            used = "closed-form-power"
        else:
            q = _closed_form_cfmm(family, n)
            used = "closed-form-quadratic"
    else:
        diag = _cached_diagnostics(family)
        lo = diag.argmax * (0.5 if n == 1 else 1.0 - 1e-9)
        hi = diag.root * (1.0 - 1e-12)

        def log_objective(q: float) -> float:
            v = family.value(q)
            if v <= 0.0:
                return -math.inf
            return (n - 1) * math.log(q) + math.log(v)

        q = golden_section_maximize(log_objective, lo, hi)
        q = _refine_foc_root(family, n, q, lo, hi)
        used = "golden-section"

    return EquilibriumResult(
        q=q,
        n=n,
        per_player=q / n,
        equilibrium_payoff=family.value(q) / n,
        foc_residual=foc_residual(family, n, q),
        method=used,
    )


def _best_response_cfmm(
    family: CfmmArbitragePayoff, y: float, budget: float
) -> BestResponseResult:
    g, r1, r2, c = family.gamma, family.r1, family.r2, family.c
    x_free = (math.sqrt((g * r1 * r2 + g * g * r2 * y) / c) - r1) / g - y
    if x_free <= 0.0:
        return BestResponseResult(0.0, 0.0, "zero")
    if x_free >= budget:
        return BestResponseResult(
            budget, pro_rata_payoff(family, budget, y), "budget"
        )
    return BestResponseResult(x_free, pro_rata_payoff(family, x_free, y), "interior")


def best_response(
    family: PayoffFamily,
    y: float,
    budget: float = math.inf,
) -> BestResponseResult:
    """Maximize x -> x/(x+y) f(x+y) over x in [0, budget].

    Closed form for the cfmm family; golden-section on [0, min(budget, w)]
    otherwise, with the endpoints checked explicitly. Returns x = 0 with
    payoff 0 when no positive tender helps.
    """
    if y < 0.0:
        raise ValueError(f"y must be nonnegative, got {y}")
    if budget < 0.0:
        raise ValueError(f"budget must be nonnegative, got {budget}")
    if isinstance(family, CfmmArbitragePayoff):
        return _best_response_cfmm(family, y, budget)

    try:
        diag = _cached_diagnostics(family)
    except NoPositiveRegion:
        # nothing positive to gain at any tender
        return BestResponseResult(0.0, 0.0, "zero")
    except NoFiniteRoot:
        # f stays positive; the search is still well posed on [0, budget]
        if not math.isfinite(budget):
            raise
        diag = None

    hi = budget if diag is None else min(budget, diag.root)
    if isinstance(family, TabulatedPayoff):
        hi = min(hi, family.domain_max - y)
    if hi <= 0.0:
        return BestResponseResult(0.0, 0.0, "zero")

    def objective(x: float) -> float:
        return pro_rata_payoff(family, x, y)

    x_in = golden_section_maximize(objective, 0.0, hi)
    best = BestResponseResult(0.0, 0.0, "zero")
    for x, label in ((hi, "budget" if hi == budget else "interior"),
                     (x_in, "interior")):
        v = objective(x)
        if v > best.achieved_payoff:
            best = BestResponseResult(x, v, label)
    return best
