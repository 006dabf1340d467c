"""Desk-scale numerics for Rankin-Selberg polar parts, L(1) lower bounds and
effective multiplicity one, tested on Dirichlet characters and synthetic
Satake data."""

from .characters import (
    DirichletCharacter,
    ExampleReport,
    class_number_l1,
    enumerate_real_primitive,
    example_pipeline,
    kronecker_character,
    l_one,
    rs_polar_oracle,
)
from .conductor import (
    AnalyticConductor,
    IsobaricComponent,
    IsobaricSpec,
    analytic_conductor,
    isobaric_rs_conductor,
    preconvex_bound,
    preconvex_line,
    rs_conductor_upper,
)
from .effective import (
    DistinguishVerdict,
    ExponentLedger,
    Inconclusive,
    approx_distinguish,
    build_ledger,
    distinguish,
    l1_lower_bound,
    residue_lower,
    zero_free_width,
)
from .lseries import (
    ArchimedeanData,
    CoefficientStream,
    LocalSatake,
    SatakeTable,
    build_rs_stream,
    build_stream,
    evaluate,
    evaluate_derivative,
)
from .mellin import (
    PolarPart,
    SmoothWindow,
    contour_error,
    lemma2_bound,
    make_window,
    mellin_inverse,
    mellin_transform,
    residue_main_term,
    smoothed_sum,
    theorem1_lower,
)
from .symmetric import (
    Partition,
    cauchy_coefficients,
    cauchy_via_schur,
    enumerate_partitions,
    lemma1_check,
    schur_eval,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
