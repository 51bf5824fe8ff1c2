"""Sparse PCA via selected axis-aligned random projections."""

from spcavrp._core import (
    DegenerateDeflationError,
    InvalidInputError,
    SpcavrpError,
    SpikedModel,
    brute_force_sparse_pc,
    choose_b,
    deflate_fit,
    diagonal_threshold,
    fit,
    hypergeom_cdf,
    incoherence,
    make_intro_model,
    make_multi_spike,
    make_sigma1,
    make_sigma2,
    make_single_spike,
    sample_gaussian,
    subspace_loss,
    support_metrics,
    vanilla_pca,
    var_curve,
)

__all__ = [
    "DegenerateDeflationError",
    "InvalidInputError",
    "SpcavrpError",
    "SpikedModel",
    "brute_force_sparse_pc",
    "choose_b",
    "deflate_fit",
    "diagonal_threshold",
    "fit",
    "hypergeom_cdf",
    "incoherence",
    "make_intro_model",
    "make_multi_spike",
    "make_sigma1",
    "make_sigma2",
    "make_single_spike",
    "sample_gaussian",
    "subspace_loss",
    "support_metrics",
    "vanilla_pca",
    "var_curve",
]
