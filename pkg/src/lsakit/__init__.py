"""Latent semantic analysis on small dense matrices.

The pipeline: a corpus becomes a word-document count matrix, the matrix
is factored by an in-house singular value decomposition, and truncated
reconstructions drive keyword retrieval, heatmap rendering, and
grayscale image compression.
"""

from . import cli, corpus, imaging, linalg, lsa, viz

__version__ = "0.1.0"

__all__ = ["cli", "corpus", "imaging", "linalg", "lsa", "viz", "__version__"]
