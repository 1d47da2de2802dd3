from .bounds import (
    clopper_pearson,
    pe_uncoded,
    q_function,
    sigma_for_uncoded_pe,
    union_bound,
)
from .rates import RateDesign, design_rates
from .report import read_reference_curve, write_csv
from .simulator import (
    SimConfig,
    Simulator,
    WerPoint,
    estimate_code_wer,
    simulate_point,
    sweep,
)

__all__ = [
    "RateDesign",
    "SimConfig",
    "Simulator",
    "WerPoint",
    "clopper_pearson",
    "design_rates",
    "estimate_code_wer",
    "pe_uncoded",
    "q_function",
    "read_reference_curve",
    "sigma_for_uncoded_pe",
    "simulate_point",
    "sweep",
    "union_bound",
    "write_csv",
]
