"""Dense-matrix singular value decomposition built from scratch.

The decomposition is a one-sided Jacobi iteration: plane rotations are
applied to column pairs of a working copy until every pair is mutually
orthogonal, at which point column norms are the singular values.  The
tolerances below are part of the public contract and are relied on by
callers that compare factors across runs or platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Convergence: every column pair must satisfy |<bp, bq>| / (|bp| |bq|) <= PAIR_TOL.
PAIR_TOL = 1e-12
# Hard cap on full sweeps before giving up.
SWEEP_LIMIT = 60
# Machine epsilon for float64; columns with norm below EPS * |A|_F are treated as zero.
EPS = float(np.finfo(np.float64).eps)


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi sweeps fail to orthogonalize the columns."""


@dataclass(frozen=True)
class SvdFactors:
    """A factorization a = u @ diag(sigma) @ v.T.

    u is m-by-r and v is n-by-r with orthonormal columns; sigma holds the
    r singular values in non-increasing order.  Truncated factors keep the
    same layout with a smaller r.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        r = self.sigma.shape[0]
        if self.sigma.ndim != 1 or self.u.ndim != 2 or self.v.ndim != 2:
            raise ValueError("factors must be u: 2-D, sigma: 1-D, v: 2-D")
        if self.u.shape[1] != r or self.v.shape[1] != r:
            raise ValueError(
                f"inconsistent factor shapes: u {self.u.shape}, "
                f"sigma ({r},), v {self.v.shape}"
            )

    @property
    def rank(self) -> int:
        """Number of retained singular triplets (counting zeros)."""
        return int(self.sigma.shape[0])


def _as_matrix(a) -> np.ndarray:
    b = np.asarray(a, dtype=np.float64)
    if b.ndim != 2 or b.shape[0] < 1 or b.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {b.shape}")
    if not np.isfinite(b).all():
        raise ValueError("matrix entries must be finite")
    return b


def _one_sided_jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Factor a (m >= n columns assumed well-shaped) as u, sigma, v."""
    b = a.copy()
    m, n = b.shape
    v = np.eye(n)
    # Columns whose squared norm falls at or below this are numerically zero
    # and are excluded from rotations; without the cutoff, exactly parallel
    # columns keep a normalized inner product of 1 forever.
    ztol2 = (EPS * math.sqrt(float((b * b).sum()))) ** 2

    worst = 0.0
    for _ in range(SWEEP_LIMIT):
        worst = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                bp = b[:, p]
                bq = b[:, q]
                alpha = float(bp @ bp)
                beta = float(bq @ bq)
                if alpha <= ztol2 or beta <= ztol2:
                    continue
                gamma = float(bp @ bq)
                ratio = abs(gamma) / (math.sqrt(alpha) * math.sqrt(beta))
                if ratio > worst:
                    worst = ratio
                if ratio <= PAIR_TOL:
                    continue
                # Rotation angle chosen to zero the (p, q) inner product.
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                bp_new = c * bp - s * bq
                b[:, q] = s * bp + c * bq
                b[:, p] = bp_new
                vp_new = c * v[:, p] - s * v[:, q]
                v[:, q] = s * v[:, p] + c * v[:, q]
                v[:, p] = vp_new
        if worst <= PAIR_TOL:
            break
    else:
        raise ConvergenceError(
            f"no convergence for {m}x{n} matrix after {SWEEP_LIMIT} sweeps "
            f"(worst normalized column product {worst:.3e})"
        )

    norms2 = (b * b).sum(axis=0)
    zero = norms2 <= ztol2
    sigma = np.where(zero, 0.0, np.sqrt(norms2))
    u = np.zeros((m, n))
    nonzero = ~zero
    u[:, nonzero] = b[:, nonzero] / sigma[nonzero]
    if zero.any():
        u = _complete_basis(u, np.flatnonzero(zero))
    return u, sigma, v


def _complete_basis(u: np.ndarray, holes: np.ndarray) -> np.ndarray:
    """Fill zero columns of u with unit vectors orthogonal to the rest.

    Candidates are the standard basis vectors; for each hole the candidate
    with the largest residual after projecting out all filled columns is
    taken, which makes the completion deterministic.
    """
    m = u.shape[0]
    filled = [u[:, j] for j in np.flatnonzero((u * u).sum(axis=0) > 0.5)]
    for j in holes:
        residual = np.eye(m)
        for col in filled:
            residual -= np.outer(col, col @ residual)
        norms2 = (residual * residual).sum(axis=0)
        best_idx = int(np.argmax(norms2))
        if float(norms2[best_idx]) <= 0.0:
            raise ConvergenceError("cannot complete an orthonormal basis")
        w = residual[:, best_idx]
        # Re-orthogonalize once more to clean up rounding.
        for col in filled:
            w = w - (col @ w) * col
        w = w / math.sqrt(float(w @ w))
        u[:, j] = w
        filled.append(w)
    return u


def svd(a) -> SvdFactors:
    """Decompose a real matrix into orthonormal factors and singular values.

    Returns factors with r = min(m, n) triplets, singular values sorted in
    non-increasing order (ties kept in sweep order, making the result
    deterministic for identical input bytes).  Signs are fixed so that the
    largest-magnitude entry of each u column is non-negative, with the
    earliest row winning ties; v columns carry the matching sign.

    Raises ConvergenceError if the column sweeps do not reach the pair
    tolerance within the sweep limit, and ValueError for inputs that are
    not finite non-empty 2-D matrices.
    """
    b = _as_matrix(a)
    m, n = b.shape
    if m >= n:
        u, sigma, v = _one_sided_jacobi(b)
    else:
        # Fewer rows than columns: factor the transpose and swap the roles.
        v, sigma, u = _one_sided_jacobi(np.ascontiguousarray(b.T))
    order = np.argsort(-sigma, kind="stable")
    u = np.ascontiguousarray(u[:, order])
    sigma = np.ascontiguousarray(sigma[order])
    v = np.ascontiguousarray(v[:, order])
    for j in range(sigma.shape[0]):
        i = int(np.argmax(np.abs(u[:, j])))
        if u[i, j] < 0.0:
            u[:, j] = -u[:, j]
            v[:, j] = -v[:, j]
    return SvdFactors(u=u, sigma=sigma, v=v)


def truncate(factors: SvdFactors, k: int) -> SvdFactors:
    """Keep the k largest singular triplets of a factorization."""
    r = factors.rank
    if k < 1 or k > r:
        raise ValueError(f"rank out of range: got {k}, expected 1..{r}")
    return SvdFactors(
        u=factors.u[:, :k], sigma=factors.sigma[:k], v=factors.v[:, :k]
    )


def reconstruct(factors: SvdFactors) -> np.ndarray:
    """Multiply the factors back into a dense matrix."""
    return (factors.u * factors.sigma) @ factors.v.T


def frobenius_distance(a, b) -> float:
    """Frobenius norm of the difference of two equal-shaped matrices."""
    x = _as_matrix(a)
    y = _as_matrix(b)
    if x.shape != y.shape:
        raise ValueError(f"shape mismatch: {x.shape} vs {y.shape}")
    d = x - y
    return math.sqrt(float((d * d).sum()))
