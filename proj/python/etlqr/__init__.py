"""Event-triggered LQR lateral control for a linear bicycle model."""

from ._core import (
    ConfigParseError,
    Disturbance,
    DivergenceError,
    Equilibrium,
    EtmDesign,
    EventTriggered,
    InvalidParameter,
    LqrWeights,
    PlantMatrices,
    Scenario,
    SimConfig,
    SimLog,
    StrategyKind,
    StrategyRun,
    SummaryRow,
    SynthesisError,
    SynthesisResult,
    TimeTriggered,
    VehicleParams,
    build_plant,
    care_residual,
    compute_sigma,
    emit_certificate,
    equilibrium,
    load_config,
    lqr_gain,
    lyapunov_residual,
    min_iet,
    parse_config,
    run,
    simulate_strategies,
    solve_care,
    solve_lyapunov,
    synthesize,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
