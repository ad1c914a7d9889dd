"""Equivalence invariants of a real matrix under two-sided symplectic maps.

For X of size 2n x 2n the product ``Sigma(X) = X sigma X^T sigma^T`` is
unchanged up to similarity when X is multiplied by symplectic matrices on
either side, so its eigenvalues are a complete set of continuous invariants.
The spectrum is two-fold degenerate and conjugation-closed; this module
computes it, clusters the doubles, and classifies entries as real values or
complex-conjugate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOL, Tolerances, as_even_square, symplectic_form
from .errors import ClusteringAmbiguous, EigenFailure

__all__ = [
    "REAL",
    "COMPLEX_PAIR",
    "Invariant",
    "InvariantSpectrum",
    "sigma_matrix",
    "invariants",
    "multiset_distance",
]

REAL = "real"
COMPLEX_PAIR = "complex_pair"


@dataclass(frozen=True)
class Invariant:
    """One invariant: a real value, or one member (im > 0) of a conjugate pair."""

    re: float
    im: float
    kind: str

    def as_complex(self) -> complex:
        return complex(self.re, self.im)


@dataclass(frozen=True)
class InvariantSpectrum:
    """Clustered invariants in canonical order (descending re, ascending im).

    ``n`` is the mode count; each real entry fills one of the n slots and each
    complex-pair entry fills two (the pair value and its conjugate), so the
    entries cover the 2n eigenvalues of Sigma(X) twice over.
    """

    n: int
    values: tuple[Invariant, ...]
    pairing_residual: float
    has_zero: bool

    def slots(self) -> int:
        return sum(1 if v.kind == REAL else 2 for v in self.values)

    def as_multiset(self) -> np.ndarray:
        """The n invariants as complex numbers, conjugates included, sorted."""
        out: list[complex] = []
        for v in self.values:
            if v.kind == REAL:
                out.append(complex(v.re, 0.0))
            else:
                out.append(complex(v.re, v.im))
                out.append(complex(v.re, -v.im))
        return np.array(sorted(out, key=lambda z: (z.real, z.imag)), dtype=complex)


def sigma_matrix(x) -> np.ndarray:
    """Sigma(X) = X sigma X^T sigma^T, exactly skew-Hamiltonian as assembled.

    The antisymmetric core X sigma X^T is symmetrized before the final (exact)
    multiplication by sigma^T, so ``(Sigma sigma)^T = -(Sigma sigma)`` holds to
    the last bit.
    """
    x = as_even_square(x, "X")
    sig = symplectic_form(x.shape[0] // 2)
    core = x @ sig @ x.T
    core = (core - core.T) / 2
    return core @ sig.T


def _snap_real(w: np.ndarray, gap_abs: float) -> np.ndarray:
    w = w.astype(complex)
    snapped = w.copy()
    snapped.imag[np.abs(w.imag) <= gap_abs] = 0.0
    return snapped


def _linkage_groups(order: np.ndarray, w: np.ndarray, gap_abs: float) -> list[list[int]]:
    # single linkage over a sorted index order; break where the complex gap
    # between consecutive members exceeds the threshold
    groups: list[list[int]] = [[int(order[0])]]
    for idx in order[1:]:
        if abs(w[idx] - w[groups[-1][-1]]) <= gap_abs:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return groups


def _group_spread(w: np.ndarray, group: list[int]) -> float:
    vals = w[group]
    return float(max(abs(a - b) for a in vals for b in vals))


def cluster_doubled_spectrum(w: np.ndarray, gap_abs: float):
    """Group a conjugation-closed, doubled spectrum into invariant clusters.

    Returns ``(real_clusters, pair_clusters, worst_spread)`` where a real
    cluster is ``(value, indices)`` covering an even number of eigenvalues and
    a pair cluster is ``(a, b, up_indices)`` covering the members with
    positive imaginary part only. Raises ClusteringAmbiguous when a cluster
    cannot be doubled or conjugation symmetry is broken.
    """
    w = np.asarray(w, dtype=complex)
    reals = np.where(w.imag == 0.0)[0]
    ups = np.where(w.imag > 0.0)[0]
    downs = np.where(w.imag < 0.0)[0]
    if len(ups) != len(downs):
        raise ClusteringAmbiguous(
            "conjugate closure violated: unequal counts above/below the real axis"
        )

    worst = 0.0
    real_clusters: list[tuple[float, list[int]]] = []
    if len(reals):
        order = reals[np.argsort(w[reals].real)]
        for group in _linkage_groups(order, w, gap_abs):
            if len(group) % 2 != 0:
                raise ClusteringAmbiguous(
                    f"real eigenvalue cluster of odd size {len(group)} cannot be doubled"
                )
            real_clusters.append((float(np.mean(w[group].real)), group))
            worst = max(worst, _group_spread(w, group))

    pair_clusters: list[tuple[float, float, list[int]]] = []
    if len(ups):
        key = np.lexsort((w[ups].imag, w[ups].real))
        order = ups[key]
        for group in _linkage_groups(order, w, gap_abs):
            if len(group) % 2 != 0:
                raise ClusteringAmbiguous(
                    f"complex eigenvalue cluster of odd size {len(group)} cannot be doubled"
                )
            a = float(np.mean(w[group].real))
            b = float(np.mean(w[group].imag))
            pair_clusters.append((a, b, group))
            worst = max(worst, _group_spread(w, group))
        # mirror check against the lower half plane
        up_sorted = np.sort_complex(w[ups])
        down_sorted = np.sort_complex(np.conj(w[downs]))
        if np.max(np.abs(up_sorted - down_sorted)) > gap_abs:
            raise ClusteringAmbiguous("conjugate partners do not match within the gap")

    return real_clusters, pair_clusters, worst


def invariants(x, tol: Tolerances = DEFAULT_TOL) -> InvariantSpectrum:
    """Invariant spectrum of X: eigenvalues of Sigma(X), clustered into doubles.

    Eigenvalues whose imaginary part is below ``degeneracy_gap`` times the
    spectral scale are snapped to the real axis, then clustered; each cluster
    of size 2m yields m equal invariants. Repeated invariants are reported as
    repeats, not rejected; only clusters that cannot be doubled raise
    ClusteringAmbiguous. ``has_zero`` flags invariants at zero (singular X),
    which downstream canonical-form construction refuses.
    """
    sig_x = sigma_matrix(x)
    n = sig_x.shape[0] // 2
    try:
        w = np.linalg.eigvals(sig_x)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise EigenFailure(f"eigensolver failed on Sigma(X): {exc}") from exc

    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    gap_abs = tol.degeneracy_gap * scale
    w = _snap_real(w, gap_abs)

    real_clusters, pair_clusters, worst = cluster_doubled_spectrum(w, gap_abs)

    values: list[Invariant] = []
    for value, group in real_clusters:
        values.extend([Invariant(value, 0.0, REAL)] * (len(group) // 2))
    for a, b, group in pair_clusters:
        values.extend([Invariant(a, b, COMPLEX_PAIR)] * (len(group) // 2))
    values.sort(key=lambda v: (-v.re, v.im))

    spectrum = InvariantSpectrum(
        n=n,
        values=tuple(values),
        pairing_residual=worst / scale,
        has_zero=any(abs(v.as_complex()) <= gap_abs for v in values),
    )
    if spectrum.slots() != n:  # structural guarantee of the doubling
        raise ClusteringAmbiguous(
            f"clusters cover {spectrum.slots()} slots, expected {n}"
        )
    return spectrum


def multiset_distance(a: InvariantSpectrum, b: InvariantSpectrum) -> float:
    """Worst matched-entry distance between two invariant multisets, relative
    to the larger spectral scale. Returns inf on slot-count mismatch."""
    va = a.as_multiset()
    vb = b.as_multiset()
    if va.shape != vb.shape:
        return float("inf")
    scale = max(1.0, float(np.max(np.abs(va))), float(np.max(np.abs(vb))))
    return float(np.max(np.abs(va - vb))) / scale
