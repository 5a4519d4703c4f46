"""Computable Colombeau generalized numbers and their spectral theory.

The layers, bottom to top:

* :mod:`gennum.asymptotics` -- truncated Puiseux series and root branches.
* :mod:`gennum.index_sets` -- decidable algebra of eventually periodic
  index sets (the supports of idempotents).
* :mod:`gennum.genscalar` -- piecewise generalized scalars with sharp
  norms, idempotents, interleaving, and partial inverses.
* :mod:`gennum.genmatrix` -- matrix algebras, spectra, spectral radius,
  positivity, square roots, and states.
* :mod:`gennum.genfunc` -- sampled nets of continuous functions on [0,1]
  with three-valued verdicts for asymptotic claims.
* :mod:`gennum.cli` -- expression parser, JSON persistence, and the
  command-line surface.
"""

from .asymptotics import EPS, ONE, ZERO, PuiseuxPoly, RootBranch, Valuation
from .config import DEFAULT, Config
from .index_sets import IndexSet, Partition
from .verdicts import Kind, Verdict

__all__ = [
    "Config",
    "DEFAULT",
    "EPS",
    "IndexSet",
    "Kind",
    "ONE",
    "Partition",
    "PuiseuxPoly",
    "RootBranch",
    "Valuation",
    "Verdict",
    "ZERO",
]

__version__ = "0.1.0"
