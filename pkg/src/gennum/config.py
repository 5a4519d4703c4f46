"""Run configuration.

Every tolerance or window that affects a result is collected here and passed
explicitly; there is no global mutable state.  ``Config()`` gives the desk
defaults used throughout the test suites.
"""

from dataclasses import dataclass, replace
from fractions import Fraction


@dataclass(frozen=True)
class Config:
    # truncation order for series results, O(eps^trunc)
    trunc: Fraction = Fraction(8)
    # a coefficient c is numerically zero iff |c| <= tau_zero * max(1, scale)
    tau_zero: float = 1e-12
    # smallest grid index used when sampling index sets for numeric checks
    kmin: int = 8
    # largest grid index used in numeric windows
    kmax: int = 24
    # power count for spectral-radius tables, series partial sums, etc.
    nmax: int = 16
    # seed for randomized check suites
    seed: int = 0

    def with_(self, **kw) -> "Config":
        if "trunc" in kw and not isinstance(kw["trunc"], Fraction):
            kw["trunc"] = Fraction(kw["trunc"])
        return replace(self, **kw)


DEFAULT = Config()

# Numeric net verdicts regress over this k-window unless told otherwise.
NET_WINDOW = (12, 24)
