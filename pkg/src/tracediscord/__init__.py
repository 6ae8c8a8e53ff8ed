"""One-sided trace distance discord of two-qubit states.

Typical use::

    from tracediscord import make_quantum_classical
    from tracediscord.tdd import tdd
    tdd(make_quantum_classical(0.5, [0, 0, 1], [1, 0, 0])).value  # 0.25

The dispatcher ``tdd`` is not re-exported here so that ``tracediscord.tdd``
keeps naming the module.
"""

import types as _types

from .errors import (
    ConsistencyError,
    DegenerateDenominator,
    DomainError,
    InvalidConfig,
    NonHermitian,
    NotApplicable,
    NotPositive,
    TddError,
    TraceNotOne,
    ValidationError,
)
from .oracle import OracleConfig, apply_measurement_channel, tdd_definition
from .spinchain import ChainConfig, ChainSample, output_state, run_series, tdd_of_f, transition_amplitude
from .state import (
    BlochForm,
    DensityMatrix,
    StateClass,
    StateTag,
    classify,
    from_bloch,
    make_bell_diagonal,
    make_quantum_classical,
    make_x_state,
    to_bloch,
    validate,
)
from .tdd import (
    CorrelationFrame,
    Direction,
    Method,
    MinimizerConfig,
    TddResult,
    build_frame,
    closed_form,
    objective_ab,
    objective_h,
    tdd_class_ab,
    tdd_left,
    tdd_numeric,
    tdd_quantum_classical,
    tdd_rank_one,
    tdd_x_state,
)

__all__ = [name for name, obj in dict(globals()).items()
           if not name.startswith("_") and not isinstance(obj, _types.ModuleType)]
