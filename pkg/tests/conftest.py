"""Shared fixtures: the default sweep (computed once per session) and params."""
import time

import numpy as np
import pytest

from fermicorr import ModelParams
from fermicorr.cli import (
    DEFAULT_COUPLINGS,
    DEFAULT_R_BAR,
    DEFAULT_XI_MAX,
    DEFAULT_XI_MIN,
    DEFAULT_XI_STEPS,
    SweepSpec,
    run_sweep,
)


@pytest.fixture(scope="session")
def default_params():
    return ModelParams(r_bar=DEFAULT_R_BAR, coupling=DEFAULT_COUPLINGS[1])


@pytest.fixture(scope="session")
def default_sweep():
    """Rows of the default (xi, K) sweep plus the wall time it took to build."""
    spec = SweepSpec(
        xi_min=DEFAULT_XI_MIN,
        xi_max=DEFAULT_XI_MAX,
        xi_steps=DEFAULT_XI_STEPS,
        couplings=DEFAULT_COUPLINGS,
        params=ModelParams(r_bar=DEFAULT_R_BAR, coupling=DEFAULT_COUPLINGS[0]),
    )
    start = time.perf_counter()
    rows = run_sweep(spec)
    elapsed = time.perf_counter() - start
    return {"spec": spec, "rows": rows, "elapsed": elapsed}


def sweep_block(rows, coupling):
    """Rows of one coupling block, in xi order."""
    return [r for r in rows if r["K"] == coupling]


def bell_projector():
    """(|ee> + |gg>)(<ee| + <gg|)/2."""
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[0, 3] = rho[3, 0] = rho[3, 3] = 0.5
    return rho
