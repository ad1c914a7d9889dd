"""Dense real matrices, the symplectic form, and symplectic-group helpers.

Conventions fixed once here and inherited by every other module:

* phase-space coordinates are ordered block-wise as (P_1..P_n, Q_1..Q_n);
* the symplectic form on n modes is ``sigma = [[0, -I_n], [I_n, 0]]``;
* the Frobenius norm is the canonical residual norm;
* covariance matrices transform as ``G -> S G S^T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InvalidInput, SingularInput

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "SymplecticCheck",
    "as_matrix",
    "as_even_square",
    "frobenius",
    "reciprocal_condition",
    "symplectic_form",
    "is_symplectic",
    "gl_embed",
    "direct_sum",
    "mode_direct_sum",
    "random_symplectic",
    "hermitian_min_eig",
]

# Invertibility cutoff for GL(n) embeddings; exact invertibility is assumed
# upstream, numerics need a hard floor.
_GL_RCOND_MIN = 1e-12


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds shared by all operations.

    residual_tol bounds Frobenius residuals of reconstructions and
    symplecticity checks, degeneracy_gap is the relative clustering gap for
    doubled spectra, psd_tol the slack for positive-semidefiniteness verdicts.
    """

    residual_tol: float = 1e-8
    degeneracy_gap: float = 1e-6
    psd_tol: float = 1e-9

    def __post_init__(self) -> None:
        for name in ("residual_tol", "degeneracy_gap", "psd_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    def as_dict(self) -> dict:
        return {
            "residual_tol": self.residual_tol,
            "degeneracy_gap": self.degeneracy_gap,
            "psd_tol": self.psd_tol,
        }


DEFAULT_TOL = Tolerances()


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D float array with finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise InvalidInput(f"{name} contains non-finite entries")
    return m


def as_even_square(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a square float matrix of even dimension."""
    m = as_matrix(a, name)
    rows, cols = m.shape
    if rows != cols:
        raise DimensionError(f"{name} must be square, got {rows}x{cols}")
    if rows % 2 != 0:
        raise DimensionError(f"{name} must have even dimension, got {rows}")
    return m


def frobenius(a) -> float:
    return float(np.linalg.norm(a))


def reciprocal_condition(a) -> float:
    """1/cond_2(a) from singular values; 0.0 for the zero matrix."""
    s = np.linalg.svd(np.asarray(a), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0.0
    return float(s[-1] / s[0])


def symplectic_form(n: int) -> np.ndarray:
    """The 2n x 2n symplectic form [[0, -I], [I, 0]] (P block first)."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DimensionError(f"mode count must be a positive integer, got {n!r}")
    sig = np.zeros((2 * n, 2 * n))
    sig[:n, n:] = -np.eye(n)
    sig[n:, :n] = np.eye(n)
    return sig


@dataclass(frozen=True)
class SymplecticCheck:
    residual: float
    verdict: bool


def is_symplectic(s, tol: Tolerances = DEFAULT_TOL) -> SymplecticCheck:
    """Residual ||S sigma S^T - sigma||_F and a scaled pass/fail verdict.

    The verdict threshold scales with max(1, ||S||_F^2) because the residual
    of an exactly symplectic S evaluated in floating point grows with the
    squared norm.
    """
    s = as_even_square(s, "S")
    n = s.shape[0] // 2
    sig = symplectic_form(n)
    residual = frobenius(s @ sig @ s.T - sig)
    scale = max(1.0, frobenius(s) ** 2)
    return SymplecticCheck(residual=residual, verdict=residual <= tol.residual_tol * scale)


def gl_embed(g) -> np.ndarray:
    """Embed an invertible n x n matrix G as the symplectic G^{-1} (+) G^T."""
    g = as_matrix(g, "G")
    if g.shape[0] != g.shape[1]:
        raise DimensionError(f"G must be square, got {g.shape[0]}x{g.shape[1]}")
    if reciprocal_condition(g) < _GL_RCOND_MIN:
        raise SingularInput("G is singular within tolerance (rcond < 1e-12)")
    return direct_sum(np.linalg.inv(g), g.T)


def direct_sum(a, b) -> np.ndarray:
    """Block-diagonal assembly diag(A, B); dimensions add."""
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]))
    out[: a.shape[0], : a.shape[1]] = a
    out[a.shape[0] :, a.shape[1] :] = b
    return out


def mode_direct_sum(a, b) -> np.ndarray:
    """Direct sum of two phase-space matrices in (P.., Q..) block ordering.

    Unlike ``direct_sum`` this interleaves at the level of modes, so the
    result is again (P_1..P_m, Q_1..Q_m)-ordered.
    """
    a = as_even_square(a, "A")
    b = as_even_square(b, "B")
    na, nb = a.shape[0] // 2, b.shape[0] // 2
    n = na + nb
    out = np.zeros((2 * n, 2 * n))
    # quadrants: (row sector, col sector) with sector 0 = P, 1 = Q
    for rs in (0, 1):
        for cs in (0, 1):
            out[rs * n : rs * n + na, cs * n : cs * n + na] = a[
                rs * na : (rs + 1) * na, cs * na : (cs + 1) * na
            ]
            out[rs * n + na : (rs + 1) * n, cs * n + na : (cs + 1) * n] = b[
                rs * nb : (rs + 1) * nb, cs * nb : (cs + 1) * nb
            ]
    return out


def _random_invertible(rng: np.random.Generator, n: int) -> np.ndarray:
    # orthogonal x lognormal-spectrum x orthogonal: dense in GL(n) yet
    # well-conditioned, so composed group elements stay numerically tame
    q1, _ = np.linalg.qr(rng.standard_normal((n, n)))
    q2, _ = np.linalg.qr(rng.standard_normal((n, n)))
    spectrum = np.exp(rng.uniform(-0.7, 0.7, size=n))
    return q1 @ (spectrum[:, None] * q2)


def _shear(z: np.ndarray) -> np.ndarray:
    n = z.shape[0]
    out = np.eye(2 * n)
    out[n:, :n] = z
    return out


def random_symplectic(n: int, seed: int = 0) -> np.ndarray:
    """Seeded random element of Sp(2n).

    Composed from GL embeddings, symmetric-generator shears [[I,0],[Z,I]] and
    the form itself; together these families generate the full group, so the
    sample is not confined to any proper subgroup.
    """
    rng = np.random.default_rng(seed)
    sig = symplectic_form(n)
    g1 = _random_invertible(rng, n)
    z1 = 0.35 * rng.standard_normal((n, n))
    z1 = (z1 + z1.T) / 2
    g2 = _random_invertible(rng, n)
    z2 = 0.35 * rng.standard_normal((n, n))
    z2 = (z2 + z2.T) / 2
    return gl_embed(g1) @ _shear(z1) @ sig @ gl_embed(g2) @ _shear(z2)


def hermitian_min_eig(sym_part, skew_part) -> float:
    """Minimal eigenvalue of the Hermitian matrix R + iA, over real arithmetic.

    Uses the standard doubling [[R, -A], [A, R]], which is real symmetric with
    the same spectrum (each eigenvalue twice). R must be symmetric and A
    antisymmetric; small structural dust is projected out.
    """
    r = as_matrix(sym_part, "R")
    a = as_matrix(skew_part, "A")
    if r.shape != a.shape or r.shape[0] != r.shape[1]:
        raise DimensionError("R and A must be square matrices of equal shape")
    r = (r + r.T) / 2
    a = (a - a.T) / 2
    embed = np.block([[r, -a], [a, r]])
    return float(np.linalg.eigvalsh(embed)[0])
