"""Bound-state spectra of complexified solvable potentials via an sl(2,C) potential algebra.

Closed-form solvers for the complexified Scarf II, generalized Poschl-Teller
and Morse families, their ladder-generated eigenfunctions, and an
independent finite-difference oracle that verifies every emitted level and
profile.
"""

from .algebra import (
    GridFunction,
    PotentialClass,
    RealizationParams,
    RepresentationLabel,
    apply_ladder,
    energy_level,
    ground_energy,
    ground_state,
    tower_state,
)
from .errors import (
    BranchCutCrossing,
    EmptyFunction,
    GridTooCoarse,
    InvalidSpec,
    NoConvergence,
    NoRegularBranch,
    SingularPoint,
    SpectraError,
)
from .families import (
    AlgebraicSolution,
    BranchKind,
    MorseABSpec,
    MorseSpec,
    PoschlTellerSpec,
    ScarfSpec,
    morse_from_ab,
    solve,
    solve_morse,
    solve_poschl_teller,
    solve_scarf2,
)
from .oracle import (
    Eigendata,
    Grid,
    MatchReport,
    boundary_decay,
    default_grid,
    discretize,
    eig_complex,
    eigvals_complex,
    match_levels,
    residual,
    verify_spectrum,
)
from .spectrum import (
    Classification,
    EigenLevel,
    PhaseDiagramRow,
    SpectrumReport,
    analyze,
    classify,
    enumerate_levels,
    is_pt_symmetric,
    scan_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicSolution",
    "BranchCutCrossing",
    "BranchKind",
    "Classification",
    "EigenLevel",
    "Eigendata",
    "EmptyFunction",
    "Grid",
    "GridFunction",
    "GridTooCoarse",
    "InvalidSpec",
    "MatchReport",
    "MorseABSpec",
    "MorseSpec",
    "NoConvergence",
    "NoRegularBranch",
    "PhaseDiagramRow",
    "PoschlTellerSpec",
    "PotentialClass",
    "RealizationParams",
    "RepresentationLabel",
    "ScarfSpec",
    "SingularPoint",
    "SpectraError",
    "SpectrumReport",
    "analyze",
    "apply_ladder",
    "boundary_decay",
    "classify",
    "default_grid",
    "discretize",
    "eig_complex",
    "eigvals_complex",
    "energy_level",
    "enumerate_levels",
    "ground_energy",
    "ground_state",
    "is_pt_symmetric",
    "match_levels",
    "morse_from_ab",
    "residual",
    "scan_threshold",
    "solve",
    "solve_morse",
    "solve_poschl_teller",
    "solve_scarf2",
    "tower_state",
    "verify_spectrum",
]
