"""morreylab: exact maximal operators, Orlicz averages and Morrey-scale norms
on step functions, with certified two-sided brackets."""

from .maxops import (
    RadialProfile,
    RefinePolicy,
    commutator,
    fractional_maximal,
    hardy,
    iterated_maximal,
    maximal,
    maximal_commutator,
    maximal_envelope,
)
from .norms import (
    FamilySpec,
    NormEstimate,
    bmo_p_seminorm,
    bmo_seminorm,
    characterization_functional,
    morrey_norm,
    weak_zygmund_morrey_norm,
    zygmund_morrey_norm,
)
from .orlicz import (
    EXP,
    LLOG,
    OrliczGauge,
    gauge_average,
    holder_check,
    llog_functional,
    luxemburg_average,
    orlicz_maximal,
    weak_llog_average,
)
from .radial import (
    hardy_reduction_check,
    inner_integral,
    zm_radial_functional,
    zm_radial_functional_M,
)
from .stepfn import (
    EnvelopePair,
    Interval,
    StepFunction,
    average,
    combine,
    distribution,
    double_star,
    integrate,
    pos_neg_parts,
    rearrangement,
)

__all__ = [
    "EXP",
    "EnvelopePair",
    "FamilySpec",
    "Interval",
    "LLOG",
    "NormEstimate",
    "OrliczGauge",
    "RadialProfile",
    "RefinePolicy",
    "StepFunction",
    "average",
    "bmo_p_seminorm",
    "bmo_seminorm",
    "characterization_functional",
    "combine",
    "commutator",
    "distribution",
    "double_star",
    "fractional_maximal",
    "gauge_average",
    "hardy",
    "hardy_reduction_check",
    "holder_check",
    "inner_integral",
    "integrate",
    "iterated_maximal",
    "llog_functional",
    "luxemburg_average",
    "maximal",
    "maximal_commutator",
    "maximal_envelope",
    "morrey_norm",
    "orlicz_maximal",
    "pos_neg_parts",
    "rearrangement",
    "weak_llog_average",
    "weak_zygmund_morrey_norm",
    "zm_radial_functional",
    "zm_radial_functional_M",
    "zygmund_morrey_norm",
]

__version__ = "0.1.0"
