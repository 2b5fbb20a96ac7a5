"""Exact computations for surgery on knots in contact 3-manifolds."""

from .errors import (CslError, DomainError, UndefinedResultError,
                     DegenerateSurgeryError, TorsionFlagError, MissingDataError,
                     HypothesisNotMetError, InconsistencyError, InputError)
from .slope import Slope, INF

__version__ = "0.1.0"
