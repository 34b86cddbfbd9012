"""Built-in example scenarios.

Seven ready-made fixtures exercising the full range of behaviors: constant
cocycles with and without kernel, a mass-parametrized family, a linear
Poisson structure with non-constant Casimir-valued cocycle, and zero-cocycle
lifts (one shifted so the cocycle becomes exact rather than zero).

Names accept an optional parameter in parentheses, e.g. "galilean(2.5)",
"translations-r2n(3)", "a65a(-1)".
"""

from __future__ import annotations

import re

import numpy as np

from .algebra import LieAlgebra
from .errors import ScenarioParseError
from .poisson import PoissonStructure
from .poly import Polynomial
from .action import WHAction
from .scenario import Scenario


def _coord(n, i):
    return Polynomial.coordinate(n, i)


def translations_r2n(pairs: int = 1) -> Scenario:
    """Abelian R^{2d} translating a symplectic vector space.

    Coordinates (q_1..q_d, p_1..p_d); basis vector e_i translates along
    q_i (Hamiltonian p_i) and e_{d+i} along p_i (Hamiltonian -q_i). The
    cocycle is the standard symplectic matrix.
    """
    d = int(pairs)
    if d < 1:
        raise ScenarioParseError("translations-r2n: pairs must be a positive integer")
    n = 2 * d
    hams = [_coord(n, d + i) for i in range(d)] + [-_coord(n, i) for i in range(d)]
    action = WHAction(LieAlgebra.abelian(n), PoissonStructure.constant_symplectic(d), hams)
    name = "translations-r2" if d == 1 else f"translations-r2n({d})"
    return Scenario(name=name, action=action, defaults={
        "subspace": list(range(n)),
        "base_point": [0.0] * n,
        "zeta": {"u": _unit(n, 0), "v": _unit(n, d)},
    })


def galilean(mass: float = 1.0) -> Scenario:
    """Boosts and translations of a free particle of the given mass.

    Phase space T*R^3 with coordinates (q_1..q_3, p_1..p_3); boost B_i has
    Hamiltonian m q_i and translation T_i has Hamiltonian p_i. The six
    generators commute but the boost/translation brackets produce the
    mass, a constant invertible cocycle.
    """
    m = float(mass)
    n = 6
    hams = [_coord(n, i).scale(m) for i in range(3)] + [_coord(n, 3 + i) for i in range(3)]
    labels = ["B1", "B2", "B3", "T1", "T2", "T3"]
    action = WHAction(LieAlgebra.abelian(6, labels), PoissonStructure.constant_symplectic(3), hams)
    return Scenario(name=f"galilean({m:g})", action=action, defaults={
        "subspace": list(range(6)),
        "base_point": [1.0, 0.5, -0.5, 0.25, -1.0, 0.75],
        "zeta": {"u": _unit(6, 0), "v": _unit(6, 3)},
    })


def a65a_algebra(a: float) -> LieAlgebra:
    """Six-dimensional 2-step nilpotent algebra A_{6,5}^a (a != 0).

    Nonzero brackets (1-based): [e1,e3]=e5, [e1,e4]=e6, [e2,e3]=a e6,
    [e2,e4]=e5; stored 0-based.
    """
    if a == 0:
        raise ScenarioParseError("a65a: parameter must be nonzero")
    e = np.eye(6)
    return LieAlgebra(6, {
        (0, 2): e[4],
        (0, 3): e[5],
        (1, 2): a * e[5],
        (1, 3): e[4],
    })


def a65a(a: float = -1.0) -> Scenario:
    """Coordinate action of the abelian span of e1..e4 on the dual of A_{6,5}^a.

    The Lie-Poisson structure makes x5, x6 Casimirs; the four coordinate
    Hamiltonians commute as vector fields but their cocycle entries are
    the (non-constant) Casimirs themselves, so there is no momentum map.
    The cocycle determinant is (x5^2 - a x6^2)^2, nonzero away from the
    degenerate leaves.
    """
    a = float(a)
    poisson = PoissonStructure.lie_poisson(a65a_algebra(a))
    hams = [_coord(6, i) for i in range(4)]
    action = WHAction(LieAlgebra.abelian(4), poisson, hams)
    return Scenario(name=f"a65a({a:g})", action=action, defaults={
        "subspace": [0, 1, 2, 3],
        "base_point": [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        "sample_constraint": {"coords": [4, 5], "min_norm_sq": 0.5},
        "zeta": {"u": _unit(4, 0), "v": _unit(4, 2)},
    })


def heisenberg_algebra() -> LieAlgebra:
    e = np.eye(3)
    return LieAlgebra(3, {(0, 1): e[2]}, labels=["X", "Y", "Z"])


def heisenberg_coadjoint() -> Scenario:
    """Coordinate lift of the coadjoint action: a Hamiltonian action.

    On the dual of the Heisenberg algebra ({x1,x2} = x3) the coordinate
    Hamiltonians reproduce the bracket exactly, so the cocycle vanishes.
    """
    poisson = PoissonStructure.lie_poisson(heisenberg_algebra())
    hams = [_coord(3, i) for i in range(3)]
    action = WHAction(heisenberg_algebra(), poisson, hams)
    return Scenario(name="heisenberg-coadjoint", action=action, defaults={
        "subspace": [],
        "base_point": [1.0, 0.0, 2.0],
        "zeta": {"u": _unit(3, 0), "v": _unit(3, 1)},
    })


def heisenberg_shifted() -> Scenario:
    """Coadjoint lift with the central Hamiltonian offset by one.

    The offset makes the cocycle the nonzero constant c(X, Y) = -1, which
    is exact: subtracting the witness from the lift restores a morphism.
    """
    poisson = PoissonStructure.lie_poisson(heisenberg_algebra())
    hams = [_coord(3, 0), _coord(3, 1), _coord(3, 2) + 1.0]
    action = WHAction(heisenberg_algebra(), poisson, hams)
    return Scenario(name="heisenberg-shifted", action=action, defaults={
        "subspace": [],
        "base_point": [1.0, 0.0, 2.0],
        "zeta": {"u": _unit(3, 0), "v": _unit(3, 1)},
    })


def partial_kernel_r4() -> Scenario:
    """Three commuting generators on R^4 with a rank-2 cocycle.

    Coordinates (q_1, q_2, p_1, p_2); Hamiltonians (q_1, p_1, q_2). The
    first two generators translate the (q_1, p_1) plane, the third has
    cocycle zero against everything, so the kernel is spanned by e_3 and
    the residual action on the slice {q_1 = p_1 = 0} is Hamiltonian.
    """
    poisson = PoissonStructure.constant_symplectic(2)
    hams = [_coord(4, 0), _coord(4, 2), _coord(4, 1)]
    action = WHAction(LieAlgebra.abelian(3), poisson, hams)
    return Scenario(name="partial-kernel-r4", action=action, defaults={
        "subspace": [0, 1],
        "base_point": [0.0, 1.0, 0.0, -1.0],
        "zeta": {"u": _unit(3, 0), "v": _unit(3, 1)},
    })


def _unit(n, i):
    u = [0.0] * n
    u[i] = 1.0
    return u


_BUILTINS = {
    "translations-r2": lambda params: translations_r2n(1),
    "translations-r2n": lambda params: translations_r2n(*(params or [1])),
    "galilean": lambda params: galilean(*(params or [1.0])),
    "a65a": lambda params: a65a(*(params or [-1.0])),
    "heisenberg-coadjoint": lambda params: heisenberg_coadjoint(),
    "heisenberg-shifted": lambda params: heisenberg_shifted(),
    "partial-kernel-r4": lambda params: partial_kernel_r4(),
}

_NAME_RE = re.compile(r"^([a-z0-9-]+)(?:\(([^)]*)\))?$")


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def builtin(name: str) -> Scenario:
    """Look up a built-in scenario, e.g. 'a65a(-1)' or 'translations-r2'."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ScenarioParseError(f"malformed builtin name {name!r}")
    base, raw = m.group(1), m.group(2)
    if base not in _BUILTINS:
        raise ScenarioParseError(
            f"unknown builtin {base!r}; available: {', '.join(builtin_names())}")
    params = []
    if raw:
        for tok in raw.split(","):
            tok = tok.strip()
            try:
                params.append(float(tok))
            except ValueError:
                raise ScenarioParseError(f"builtin parameter {tok!r} is not a number") from None
    if base == "translations-r2n" and params:
        params = [int(params[0])]
    try:
        return _BUILTINS[base](params)
    except TypeError as exc:
        raise ScenarioParseError(f"bad parameters for builtin {base!r}: {exc}") from exc
