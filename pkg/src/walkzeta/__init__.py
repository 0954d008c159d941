"""Walk-type zeta functions for discrete-time walks on the d-dimensional torus."""
from . import catalog, closed_forms, coins, kernels, linalg, symbol, walk, zeta
from .catalog import catalog_f, catalog_verify, get_entry
from .coins import (
    Coin,
    Model,
    OqrwPair,
    ShiftKind,
    crw_coin,
    flip_flop,
    fourier_matrix,
    grover_matrix,
    hadamard_coin,
    oqrw_lift,
    oqrw_reduce,
    positive_support,
    positive_support_grover,
    qw_coin,
    rw_coin,
    symmetric_rw_coin,
    three_state_grover,
    with_shift,
)
from .walk import TorusConfig, WalkState
from .zeta import SeriesMethod, SeriesTable, ZetaEvaluation

__version__ = "0.1.0"
