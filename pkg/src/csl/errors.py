"""Exception hierarchy shared by every csl module.

Each class carries a short machine-readable ``code`` which the command
line front end copies into error reports.
"""


class CslError(Exception):
    code = "error"


class DomainError(CslError, ValueError):
    """An argument lies outside the domain of the operation."""
    code = "domain"


class UndefinedResultError(DomainError):
    """Arithmetic produced 0/0 or an equally meaningless value."""
    code = "undefined"


class DegenerateSurgeryError(CslError, ArithmeticError):
    """The surgery changes the rational homology (det N = 0)."""
    code = "degenerate"


class TorsionFlagError(CslError, ValueError):
    code = "torsion"


class MissingDataError(CslError, ValueError):
    code = "missing-data"


class HypothesisNotMetError(CslError, ValueError):
    code = "hypothesis"


class InconsistencyError(CslError, RuntimeError):
    """Rules reached contradictory conclusions; the input data is bad."""
    code = "inconsistency"


class InputError(CslError, ValueError):
    """Malformed user input (bad JSON, wrong field types, ...)."""
    code = "input"
