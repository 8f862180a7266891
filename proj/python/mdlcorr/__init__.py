"""Correlation-network module detection.

Thin wrapper over the compiled ``_mdlcorr`` extension. Matrices are numpy
arrays with samples as rows and features as columns; partitions are lists of
integer labels.
"""

from ._mdlcorr import *  # noqa: F401,F403
from ._mdlcorr import BlockSpec, Method, infer_partition, planted_labels, sample_data

__version__ = "0.1.0"


def synthesize(n_features, n_clusters, rho, n_samples, seed):
    """Block-correlated data plus the planted labels."""
    spec = BlockSpec(n_features, n_clusters, rho, n_samples)
    values, _ = sample_data(spec, seed)
    return values, planted_labels(spec)


def cluster(values, seed, method="mapeq", **kwargs):
    return infer_partition(values, getattr(Method, method), seed, **kwargs)
