"""Spectral reports: level enumeration, branch classification, symmetry checks.

Everything here is closed-form bookkeeping on top of the matching solvers;
the independent numerical verification lives in the oracle module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import families
from .algebra import energy_level
from .families import AlgebraicSolution, BranchKind

PT_CHECK_TOL = 1e-10
CONJ_TOL = 1e-12


class Classification(Enum):
    ALL_REAL = "AllReal"
    BROKEN_CONJUGATE_PAIRS = "BrokenConjugatePairs"
    COMPLEX_UNPAIRED = "ComplexUnpaired"
    EMPTY = "Empty"


@dataclass(frozen=True)
class EigenLevel:
    """One emitted bound level of a branch; emitted levels are always regular."""

    n: int
    energy: complex
    epsilon: int
    regular: bool = True


@dataclass
class SpectrumReport:
    """Assembled closed-form spectrum of one potential specification.

    threshold_distance is |v2| - (v1 + 1/4) for the Scarf/Poschl-Teller
    families and None for Morse; reality_condition_residual is the Morse
    real-spectrum residual and None otherwise.
    """

    spec: object
    branches: list[tuple[AlgebraicSolution, list[EigenLevel]]]
    classification: Classification
    pt_symmetric: bool
    threshold_distance: float | None
    reality_condition_residual: float | None


@dataclass(frozen=True)
class PhaseDiagramRow:
    swept_value: float
    real_level_count: int
    complex_pair_count: int
    classification: Classification


def level_count(n_max_exclusive: float) -> int:
    """Number of admissible n under the strict bound n < n_max_exclusive.

    Counting uses a relative 1e-12 guard so a bound sitting on an integer up
    to floating-point noise excludes the boundary level deterministically.
    """
    guard = families.REG_TOL * max(1.0, abs(n_max_exclusive))
    return max(0, math.ceil(n_max_exclusive - guard))


def enumerate_levels(sol: AlgebraicSolution) -> list[EigenLevel]:
    """Emit levels n = 0, 1, ... below the branch bound, with their energies."""
    return [
        EigenLevel(n=n, energy=energy_level(sol.m, n), epsilon=sol.epsilon)
        for n in range(level_count(sol.n_max_exclusive))
    ]


def is_pt_symmetric(spec, xs=None) -> bool:
    """Sampled check of V(-x)* == V(x) on a grid symmetric about the origin.

    Defaults to 201 points on [-8, 8].  The generalized Poschl-Teller family
    passes only for c = 0 (any gamma); the complexified Morse family never
    passes.
    """
    if xs is None:
        xs = np.linspace(-8.0, 8.0, 201)
    xs = np.asarray(xs, dtype=float)
    v_plus = spec.potential(xs)
    v_minus = spec.potential(-xs)
    return float(np.max(np.abs(np.conj(v_minus) - v_plus))) < PT_CHECK_TOL


def _threshold_distance(spec) -> float | None:
    if isinstance(spec, (families.ScarfSpec, families.PoschlTellerSpec)):
        return abs(spec.v2) - (spec.v1 + 0.25)
    return None


def _reality_residual(spec) -> float | None:
    if isinstance(spec, families.MorseABSpec):
        spec = spec.to_morse()
    if isinstance(spec, families.MorseSpec):
        return families.morse_reality_residual(spec)
    return None


def _classification_of(pairs) -> Classification:
    kinds = {sol.branch_kind for sol, levels in pairs if levels}
    if not kinds:
        return Classification.EMPTY
    if BranchKind.COMPLEX_PAIR_MEMBER in kinds:
        return Classification.BROKEN_CONJUGATE_PAIRS
    if BranchKind.COMPLEX_UNPAIRED in kinds:
        return Classification.COMPLEX_UNPAIRED
    return Classification.ALL_REAL


def classify(spec, branches: list[AlgebraicSolution]) -> SpectrumReport:
    """Assemble the spectrum report for solver output (possibly empty).

    Classification: Empty without regular levels; AllReal when every branch
    is a real series; BrokenConjugatePairs when the branches form the
    conjugate pair of a broken-coupling Scarf/Poschl-Teller system;
    ComplexUnpaired for the generic complex Morse series.
    """
    pairs = [(sol, enumerate_levels(sol)) for sol in branches]
    classification = _classification_of(pairs)
    return SpectrumReport(
        spec=spec,
        branches=pairs,
        classification=classification,
        pt_symmetric=is_pt_symmetric(spec),
        threshold_distance=_threshold_distance(spec),
        reality_condition_residual=_reality_residual(spec),
    )


def analyze(spec) -> SpectrumReport:
    """Solve a family spec and classify the result; NoRegularBranch propagates."""
    return classify(spec, families.solve(spec))


def empty_report(spec) -> SpectrumReport:
    """Report for a spec whose regularity conditions reject every branch."""
    return classify(spec, [])


def sweep_values(start: float, stop: float, step: float) -> list[float]:
    """Ascending samples start, start + step, ... up to stop (inclusive-ish).

    The stop sample is included when it lands within a relative 1e-9 of the
    accumulated value, which keeps ranges like 0.1:2.5:0.05 intact despite
    floating-point accumulation.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"empty range: stop {stop} < start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def scan_threshold(base_spec, start: float, stop: float, step: float) -> list[PhaseDiagramRow]:
    """Sweep the family's natural parameter and log the phase of each sample.

    Scarf/Poschl-Teller sweep v2 across the critical coupling v1 + 1/4;
    Morse-AB sweeps delta_p across gamma_p.  Each row counts real levels and
    complex-conjugate level pairs (unpaired complex Morse levels contribute
    to neither count; the classification column carries the phase).
    """
    rows = []
    for value in sweep_values(start, stop, step):
        try:
            branches = families.solve(families.with_swept_value(base_spec, value))
        except families.NoRegularBranch:
            rows.append(PhaseDiagramRow(value, 0, 0, Classification.EMPTY))
            continue
        pairs = [(sol, enumerate_levels(sol)) for sol in branches]
        real_levels = sum(
            len(levels) for sol, levels in pairs if sol.branch_kind is BranchKind.REAL_SERIES
        )
        complex_levels = sum(
            len(levels)
            for sol, levels in pairs
            if sol.branch_kind is BranchKind.COMPLEX_PAIR_MEMBER
        )
        rows.append(
            PhaseDiagramRow(value, real_levels, complex_levels // 2, _classification_of(pairs))
        )
    return rows


def conjugate_pair_closure(report: SpectrumReport) -> float:
    """Largest unpaired distance of the level multiset under conjugation.

    For a BrokenConjugatePairs report this is the worst |E - conj(E')| over
    the pairing of the two branches' levels; exact closed forms keep it at
    rounding level (< 1e-12).
    """
    energies = [lv.energy for _, levels in report.branches for lv in levels]
    worst = 0.0
    for e in energies:
        best = min(abs(e - np.conj(e2)) for e2 in energies)
        worst = max(worst, best)
    return worst
