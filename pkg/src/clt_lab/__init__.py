"""Exact finite-n interval and Kolmogorov distances between standardized i.i.d.
sums and the normal law, their asymptotic limits, and extremal laws for the
asymptotic Berry-Esseen constant on intervals."""

from .asymptotics import (
    Branch,
    LimitReport,
    PaperConstants,
    constants,
    edgeworth_cdf,
    expansion_residual_sup,
    interval_limit,
    kolmogorov_limit,
    profile_argmax,
    profile_f,
    psi_n,
)
from .convolution import (
    StandardizedLatticePMF,
    SumPMF,
    exact_convolve_oracle,
    self_convolve,
    standardize,
    standardized_sum,
)
from .deviation import (
    DeviationExtrema,
    deviation_extrema,
    interval_distance,
    interval_distance_bruteforce,
    kolmogorov_distance,
)
from .extremal import (
    SearchResult,
    interval_objective,
    kolmogorov_objective,
    search_k_atoms,
    two_point_scan,
)
from .law import (
    Law,
    MomentSet,
    bernoulli,
    check_membership,
    lattice_span,
    make_law,
    min_gap,
    moments,
    point_mass,
    rademacher,
)
from .normal import std_normal_cdf, std_normal_pdf, std_normal_pdf_dd

__version__ = "0.1.0"
