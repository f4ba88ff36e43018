"""Exception types shared across the package."""


class ProRataError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(ProRataError):
    """Invalid CLI flags or config-file input."""


class NoPositiveRegion(ProRataError):
    """The payoff is nonpositive everywhere on its domain; only the trivial
    all-zero profile makes sense and no positive root exists."""


class NoFiniteRoot(ProRataError):
    """The payoff never crosses back to zero within the search cap (or the
    tabulated domain); there is no finite positive root."""


class NoEquilibrium(ProRataError):
    """No nontrivial symmetric equilibrium exists for this payoff."""


class DomainExceeded(ProRataError):
    """A tabulated payoff was evaluated past its last knot."""


class NonPositiveNetDemand(ProRataError):
    """A batch nets out to a nonpositive amount of asset A; there is nothing
    to trade against the pool."""
