"""Shared fixtures; the expensive dense-oracle runs are computed once per session."""

import time

import pytest

from sl2spectra import families, oracle, spectrum


@pytest.fixture(scope="session")
def scarf96_box15():
    """Scarf II (v1=9.75, v2=6) verified on the pinned box [-15, 15], N=3000.

    Returns the full pipeline pieces plus the wall-clock time of the oracle
    run, so the acceptance suite can assert on runtime without recomputing.
    """
    spec = families.ScarfSpec(9.75, 6.0)
    grid = oracle.Grid(-15.0, 15.0, 3000)
    t0 = time.perf_counter()
    branches = families.solve(spec)
    closed = [lv for sol in branches for lv in spectrum.enumerate_levels(sol)]
    eigendata = oracle.Eigendata.from_matrix(oracle.discretize(spec, grid))
    report = oracle.match_levels(closed, eigendata)
    elapsed = time.perf_counter() - t0
    return {
        "spec": spec,
        "grid": grid,
        "closed": closed,
        "eigendata": eigendata,
        "report": report,
        "elapsed": elapsed,
    }
