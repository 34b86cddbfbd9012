"""Weakly Hamiltonian actions on polynomial Poisson manifolds.

Exact polynomial arithmetic for brackets, Casimirs and obstruction
cocycles; numerical Hamiltonian flows; flow-evaluation expansions; and
the constructive splitting of a manifold and an abelian action into
translational and Hamiltonian factors.
"""

from .algebra import LieAlgebra
from .action import CocycleMatrix, ExactnessResult, WHAction, exactness
from .catalog import builtin, builtin_names
from .errors import (DegenerateCocycleError, FlowBlowUpError, LandingToleranceError,
                     ScenarioParseError, ScenarioValidationError,
                     UnsupportedStructureError, WehamError)
from .flow import (Trajectory, ZetaSeries, compare_zeta, integrate,
                   orbit_levelset_check, zeta_numeric, zeta_series)
from .poisson import PoissonStructure
from .poly import Polynomial
from .scenario import Scenario, load_scenario, save_scenario, scenario_from_dict
from .splitting import (SplitConfig, SplitPoint, check_poisson_dirac, psi,
                        residual_action, restrict_cocycle, roundtrip_check,
                        solve_translation, split_inverse, split_point, split_report,
                        verify_product)

__version__ = "0.1.0"

__all__ = [
    "LieAlgebra", "Polynomial", "PoissonStructure", "WHAction", "CocycleMatrix",
    "ExactnessResult", "exactness", "Trajectory", "ZetaSeries", "integrate",
    "zeta_numeric", "zeta_series", "compare_zeta", "orbit_levelset_check",
    "SplitConfig", "SplitPoint", "restrict_cocycle", "solve_translation",
    "split_point", "split_inverse", "psi", "check_poisson_dirac", "verify_product",
    "residual_action", "roundtrip_check", "split_report",
    "Scenario", "load_scenario", "save_scenario", "scenario_from_dict",
    "builtin", "builtin_names",
    "WehamError", "ScenarioParseError", "ScenarioValidationError",
    "DegenerateCocycleError", "FlowBlowUpError", "LandingToleranceError",
    "UnsupportedStructureError",
]
