"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: parse problems exit 2,
validation failures exit 1, numerical/structural failures exit 3.
"""


class WehamError(Exception):
    """Base class for all package-specific errors."""


class ScenarioParseError(WehamError):
    """Malformed scenario input: bad JSON, schema violation, unknown builtin."""


class ScenarioValidationError(WehamError):
    """Well-formed input that fails a mathematical validation check."""


class DegenerateCocycleError(WehamError):
    """Restricted cocycle matrix is singular where invertibility is required."""


class FlowBlowUpError(WehamError):
    """A trajectory left the safety box before reaching its target time."""


class LandingToleranceError(WehamError):
    """A splitting flow failed to land on the slice within tolerance."""


class UnsupportedStructureError(WehamError):
    """The input lacks structure the operation needs (e.g. a constant cocycle)."""
