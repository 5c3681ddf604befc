"""Spectral analysis of tridiagonal stochastic matrices."""
from .eigen import Spectrum, eigenvalues, lambda2, spectral_gap
from .inertia import (
    InertiaReport,
    MinorSequence,
    at_most_two_negative,
    count_below,
    inertia_report,
    minor_sequence,
    sign_changes,
    verify_sign_lemma,
)
from .model import (
    TriStochMatrix,
    TriStochParams,
    from_chain_params,
    from_params,
    irreducible_blocks,
    is_irreducible,
    validate,
)
from .perturb import PerturbationTrace, genericize, mix
from .symmetrize import SymTriMatrix, off_squared, symmetrize
from .verify import CampaignConfig, CampaignReport, cross_check, explore_higher, run_campaign, sample_params

__version__ = "0.1.0"
