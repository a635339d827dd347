"""Grid model of the time-ordered Fock product system over C0[0,inf) + C1.

Thin re-export of the compiled extension; see the README for the model.
"""

from ._core import *  # noqa: F401,F403
from ._core import FockError, GridSpec, AlgebraElement, FockUnit, ReferencedUnit

__version__ = "0.1.0"
