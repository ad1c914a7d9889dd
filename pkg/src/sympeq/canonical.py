"""Canonical form of a nonsingular real matrix under symplectic equivalence.

The main entry point ``decompose`` produces symplectic S1, S2 with
``S1 @ X @ S2 = I_n (+) J`` where J is block diagonal: one scalar per real
invariant and one 2x2 rotation-scaling block [[a, b], [-b, a]] per complex
conjugate invariant pair. The construction runs through three independently
testable stages, each exposed as a standalone operation:

1. symplectic block-diagonalization of the skew-Hamiltonian Sigma(X),
2. factorization of a real matrix into two real symmetric factors,
3. a real eigenvector similarity bringing -A^T B to its real block form.

The classical normal-mode decomposition of a positive definite matrix
(``williamson``) is included; its frequencies nu_k relate to the invariants
by lambda_k = nu_k**2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .core import (
    DEFAULT_TOL,
    Tolerances,
    as_even_square,
    as_matrix,
    direct_sum,
    frobenius,
    gl_embed,
    is_symplectic,
    reciprocal_condition,
    symplectic_form,
)
from .errors import (
    ClusteringAmbiguous,
    DegenerateSpectrum,
    DimensionError,
    EigenFailure,
    IsotropicEigenspace,
    NoNonsingularFactor,
    NotPositiveDefinite,
    NotSkewHamiltonian,
    NotSymmetric,
    SingularInput,
)
from .invariants import (
    COMPLEX_PAIR,
    REAL,
    Invariant,
    InvariantSpectrum,
    cluster_doubled_spectrum,
    invariants,
    sigma_matrix,
)

__all__ = [
    "CanonicalBlocks",
    "Decomposition",
    "WilliamsonResult",
    "TwoSymmetricFactors",
    "VerificationReport",
    "canonical_from_invariants",
    "block_diagonalize_skew_hamiltonian",
    "factor_two_symmetric",
    "decompose",
    "williamson",
    "verify_decomposition",
    "williamson_invariant_gap",
]

# rcond floors: inputs below these are treated as singular / near-defective
_X_RCOND_MIN = 1e-12
_FACTOR_RCOND_MIN = 1e-10
_FACTOR_RCOND_GOOD = 1e-3  # stop drawing once a factor this well-conditioned appears
_JORDAN_RCOND_MIN = 1e-10
_PAIRING_MIN = 1e-10


@dataclass(eq=False)
class CanonicalBlocks:
    """The canonical matrix I_n (+) J together with its block list.

    ``blocks`` follows the invariant-spectrum canonical order; every
    complex-pair entry has positive imaginary part (sign gauge b > 0).
    """

    n: int
    blocks: tuple[Invariant, ...]
    assembled: np.ndarray

    def eigenvalues(self) -> np.ndarray:
        """Eigenvalue multiset of J as a sorted complex n-vector."""
        out: list[complex] = []
        for blk in self.blocks:
            if blk.kind == REAL:
                out.append(complex(blk.re, 0.0))
            else:
                out.append(complex(blk.re, blk.im))
                out.append(complex(blk.re, -blk.im))
        return np.array(sorted(out, key=lambda z: (z.real, z.imag)), dtype=complex)


@dataclass(eq=False)
class Decomposition:
    s1: np.ndarray
    s2: np.ndarray
    blocks: CanonicalBlocks
    recon_residual: float
    s1_residual: float
    s2_residual: float


@dataclass(eq=False)
class WilliamsonResult:
    s: np.ndarray
    nu: np.ndarray
    occupations: np.ndarray


@dataclass(eq=False)
class TwoSymmetricFactors:
    a: np.ndarray
    b: np.ndarray
    residual: float


@dataclass(frozen=True)
class VerificationReport:
    recon: float
    s1: float
    s2: float
    spectrum_match: float
    verdict: bool


def canonical_from_invariants(spectrum: InvariantSpectrum) -> CanonicalBlocks:
    """Assemble N = I_n (+) J from an invariant spectrum.

    Real entries become scalar diagonal slots of J, complex pairs become
    [[a, b], [-b, a]] with b > 0, in the spectrum's canonical order.
    """
    n = spectrum.n
    j = np.zeros((n, n))
    pos = 0
    for v in spectrum.values:
        if v.kind == REAL:
            j[pos, pos] = v.re
            pos += 1
        else:
            j[pos : pos + 2, pos : pos + 2] = [[v.re, v.im], [-v.im, v.re]]
            pos += 2
    if pos != n:
        raise DimensionError(f"blocks fill {pos} slots, expected {n}")
    return CanonicalBlocks(n=n, blocks=spectrum.values, assembled=direct_sum(np.eye(n), j))


# ---------------------------------------------------------------------------
# stage 1: symplectic block-diagonalization of a skew-Hamiltonian matrix
# ---------------------------------------------------------------------------


def _fix_phase(col: np.ndarray) -> np.ndarray:
    # gauge: the largest-magnitude entry is made real and positive
    k = int(np.argmax(np.abs(col)))
    pivot = col[k]
    if pivot == 0:
        return col
    if np.iscomplexobj(col):
        return col * (np.conj(pivot) / abs(pivot))
    return col if pivot > 0 else -col


def _orthonormal_span(cols: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal basis of the column span; raises if the rank falls short."""
    u, s, _ = np.linalg.svd(cols, full_matrices=False)
    if s.size < dim or s[dim - 1] <= 1e-8 * s[0]:
        raise DegenerateSpectrum(
            "invariant subspace is rank deficient (defective or near-defective input)"
        )
    basis = u[:, :dim]
    return np.column_stack([_fix_phase(basis[:, k]) for k in range(dim)])


def _symplectic_pairs_real(basis: np.ndarray, sig: np.ndarray):
    """Split a real invariant subspace into pairs (u, w) with u^T sig w = -1.

    Gram-Schmidt with respect to the symplectic form; remaining vectors are
    projected onto the form-complement of each extracted pair.
    """
    cols = [basis[:, k].copy() for k in range(basis.shape[1])]
    pairs = []
    while cols:
        u = cols.pop(0)
        nu = np.linalg.norm(u)
        if nu < 1e-10:
            raise DegenerateSpectrum("collapsed basis vector in symplectic pairing")
        u = u / nu
        if not cols:
            raise IsotropicEigenspace("odd leftover vector in symplectic pairing")
        scores = [abs(float(u @ sig @ c)) / max(np.linalg.norm(c), 1e-300) for c in cols]
        j = int(np.argmax(scores))
        if scores[j] < _PAIRING_MIN:
            raise IsotropicEigenspace(
                "symplectic form degenerates on an invariant subspace"
            )
        w = cols.pop(j)
        c = float(u @ sig @ w)
        w = -w / c  # now u^T sig w = -1
        balance = np.sqrt(np.linalg.norm(w))
        u, w = u * balance, w / balance
        for i, vec in enumerate(cols):
            vec = vec - float(w @ sig @ vec) * u + float(u @ sig @ vec) * w
            nv = np.linalg.norm(vec)
            if nv < 1e-10:
                raise DegenerateSpectrum("collapsed basis vector in symplectic pairing")
            cols[i] = vec / nv
        pairs.append((u, w))
    return pairs


def _symplectic_pairs_complex(basis: np.ndarray, sig: np.ndarray):
    """Pair a complex eigenspace basis via the bilinear form z^T sig y.

    Each returned pair (z, y) satisfies z^T sig y = -2, which makes the real
    and imaginary parts below assemble into a symplectic basis.
    """
    cols = [basis[:, k].copy() for k in range(basis.shape[1])]
    pairs = []
    while cols:
        z = cols.pop(0)
        nz = np.linalg.norm(z)
        if nz < 1e-10:
            raise DegenerateSpectrum("collapsed basis vector in symplectic pairing")
        z = z / nz
        if not cols:
            raise IsotropicEigenspace("odd leftover vector in symplectic pairing")
        scores = [abs(complex(z @ sig @ c)) / max(np.linalg.norm(c), 1e-300) for c in cols]
        j = int(np.argmax(scores))
        if scores[j] < _PAIRING_MIN:
            raise IsotropicEigenspace(
                "symplectic form degenerates on an invariant subspace"
            )
        y = cols.pop(j)
        c = complex(z @ sig @ y)
        y = y * (-2.0 / c)  # now z^T sig y = -2
        balance = np.sqrt(np.linalg.norm(y))
        z, y = z * balance, y / balance
        for i, vec in enumerate(cols):
            vec = vec - (complex(y @ sig @ vec) / 2.0) * z + (complex(z @ sig @ vec) / 2.0) * y
            nv = np.linalg.norm(vec)
            if nv < 1e-10:
                raise DegenerateSpectrum("collapsed basis vector in symplectic pairing")
            cols[i] = vec / nv
        pairs.append((z, y))
    return pairs


def block_diagonalize_skew_hamiltonian(sigma_mat, tol: Tolerances = DEFAULT_TOL):
    """Symplectic similarity bringing a skew-Hamiltonian matrix to -(M (+) M^T).

    Returns ``(S, M)`` with S symplectic and ``S Sigma S^{-1} = -(M (+) M^T)``.
    The eigenspaces of distinct invariants are orthogonal with respect to the
    symplectic form, which is exploited to build the basis cluster by cluster:
    within each invariant subspace a symplectic Gram-Schmidt produces vectors
    u, w with u^T sig w = -1; u-vectors fill the first-half columns of S^{-1}
    and w-vectors the second half. Complex conjugate clusters are handled
    through the real and imaginary parts of a bilinearly paired basis.
    """
    sig_h = as_even_square(sigma_mat, "Sigma")
    n = sig_h.shape[0] // 2
    sig = symplectic_form(n)
    skew = sig_h @ sig
    if frobenius(skew.T + skew) > 1e-10 * max(1.0, frobenius(sig_h)):
        raise NotSkewHamiltonian("(Sigma sigma)^T != -(Sigma sigma) within tolerance")

    try:
        w, v = np.linalg.eig(sig_h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise EigenFailure(f"eigensolver failed: {exc}") from exc

    scale = max(1.0, float(np.max(np.abs(w))))
    gap_abs = tol.degeneracy_gap * scale
    w_snapped = w.astype(complex)
    w_snapped.imag[np.abs(w_snapped.imag) <= gap_abs] = 0.0

    try:
        real_clusters, pair_clusters, _ = cluster_doubled_spectrum(w_snapped, gap_abs)
    except ClusteringAmbiguous as exc:
        raise DegenerateSpectrum(str(exc)) from exc

    # canonical processing order: descending real part, ascending imaginary
    tagged = [("real", value, idx) for value, idx in real_clusters]
    tagged += [("pair", (a, b), idx) for a, b, idx in pair_clusters]

    def _sort_key(entry):
        if entry[0] == "real":
            return (-entry[1], 0.0)
        return (-entry[1][0], entry[1][1])

    tagged.sort(key=_sort_key)

    u_cols: list[np.ndarray] = []
    w_cols: list[np.ndarray] = []
    for kind, _, idx in tagged:
        if kind == "real":
            raw = v[:, idx]
            real_stack = np.column_stack([raw.real, raw.imag]) if np.iscomplexobj(raw) else raw
            basis = _orthonormal_span(np.asarray(real_stack, dtype=float), len(idx))
            for u, wv in _symplectic_pairs_real(basis, sig):
                u_cols.append(u)
                w_cols.append(wv)
        else:
            basis = _orthonormal_span(v[:, idx].astype(complex), len(idx))
            for z, y in _symplectic_pairs_complex(basis, sig):
                u_cols.append(z.real)
                u_cols.append(z.imag)
                w_cols.append(y.real)
                w_cols.append(-y.imag)

    t = np.column_stack(u_cols + w_cols)
    rc = reciprocal_condition(t)
    if rc < _JORDAN_RCOND_MIN:
        raise DegenerateSpectrum("symplectic eigenbasis is numerically singular")
    s = np.linalg.inv(t)
    similar = s @ sig_h @ t
    m = -(similar[:n, :n] + similar[n:, n:].T) / 2
    residual = frobenius(similar + direct_sum(m, m.T))
    if residual > tol.residual_tol * max(1.0, 1.0 / rc) * max(1.0, frobenius(sig_h)):
        raise DegenerateSpectrum(
            f"block-diagonalization residual {residual:.3e} exceeds tolerance"
        )
    return s, m


# ---------------------------------------------------------------------------
# stage 2: factorization into two real symmetric matrices
# ---------------------------------------------------------------------------


def _sym_basis(n: int) -> list[np.ndarray]:
    basis = []
    for i in range(n):
        for j in range(i, n):
            e = np.zeros((n, n))
            e[i, j] = 1.0
            e[j, i] = 1.0
            basis.append(e)
    return basis


def factor_two_symmetric(m, seed: int = 0, max_draws: int = 64) -> TwoSymmetricFactors:
    """Write M = A B with A = A^T nonsingular and B = B^T.

    Solves the intertwining equation ``M^T T = T M`` over symmetric T (the
    kernel of a small linear system), then draws seeded random combinations of
    the kernel basis until T is nonsingular. A = T^{-1} and B = T M; B is
    symmetric because T intertwines M with its transpose. A nonsingular
    symmetric intertwiner exists for every real square M, so the draw loop
    fails only for pathological conditioning.
    """
    m = as_matrix(m, "M")
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"M must be square, got {m.shape[0]}x{m.shape[1]}")
    n = m.shape[0]

    basis = _sym_basis(n)
    op = np.column_stack([(m.T @ e - e @ m).reshape(-1) for e in basis])
    u, s, vt = np.linalg.svd(op)
    if s.size:
        cutoff = s[0] * max(op.shape) * np.finfo(float).eps
        null_dim = int(np.sum(s <= cutoff)) + (len(basis) - s.size)
    else:
        null_dim = len(basis)
    if null_dim == 0:
        raise NoNonsingularFactor("intertwining equation has no symmetric solution")
    null_vecs = vt[len(basis) - null_dim :, :]

    rng = np.random.default_rng(seed)
    best = None
    best_rc = -1.0
    for _ in range(max_draws):
        coeffs = rng.standard_normal(null_dim)
        t = sum(c * e for c, e in zip(coeffs @ null_vecs, basis))
        nt = frobenius(t)
        if nt == 0.0:
            continue
        t = t / nt
        rc = reciprocal_condition(t)
        if rc > best_rc:
            best, best_rc = t, rc
        if rc >= _FACTOR_RCOND_GOOD:
            break
    if best is None or best_rc < _FACTOR_RCOND_MIN:
        raise NoNonsingularFactor(
            f"no nonsingular symmetric intertwiner after {max_draws} draws "
            f"(best rcond {best_rc:.2e})"
        )
    t = best
    a = np.linalg.inv(t)
    a = (a + a.T) / 2
    b = t @ m
    b = (b + b.T) / 2
    residual = frobenius(a @ b - m) / max(frobenius(m), 1e-300)
    return TwoSymmetricFactors(a=a, b=b, residual=residual)


# ---------------------------------------------------------------------------
# stage 3: real eigenvector similarity to the block form
# ---------------------------------------------------------------------------


def _real_jordan_basis(k: np.ndarray, tol: Tolerances):
    """Real basis R and slot list such that R^{-1} K R is in real block form.

    Diagonalizable K only: real eigenvalues contribute their (real)
    eigenvector, complex pairs the real and imaginary parts of the b > 0
    member's eigenvector. Slots are returned in canonical order.
    """
    try:
        w, v = np.linalg.eig(k)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise EigenFailure(f"eigensolver failed: {exc}") from exc
    w = w.astype(complex)
    v = v.astype(complex)
    scale = max(1.0, float(np.max(np.abs(w))))
    gap_abs = tol.degeneracy_gap * scale

    slots = []  # (kind, value(s), columns)
    i = 0
    n = k.shape[0]
    while i < n:
        lam = w[i]
        if abs(lam.imag) > 0:
            # conjugate partner is adjacent for real input matrices
            if i + 1 >= n or abs(np.conj(lam) - w[i + 1]) > max(gap_abs, 1e-8 * scale):
                raise DegenerateSpectrum("conjugate eigenvalue pairing broken")
            vec = v[:, i] if lam.imag > 0 else v[:, i + 1]
            lam_up = lam if lam.imag > 0 else np.conj(lam)
            vec = _fix_phase(vec)
            if abs(lam_up.imag) <= gap_abs:
                # a snapped near-real pair occupies two real slots
                cols = _orthonormal_span(np.column_stack([vec.real, vec.imag]), 2)
                slots.append(("real", float(lam_up.real), [cols[:, 0]]))
                slots.append(("real", float(lam_up.real), [cols[:, 1]]))
            else:
                slots.append(
                    (
                        "pair",
                        (float(lam_up.real), float(lam_up.imag)),
                        [vec.real.copy(), vec.imag.copy()],
                    )
                )
            i += 2
        else:
            vec = _fix_phase(v[:, i].real.copy())
            nv = np.linalg.norm(vec)
            if nv < 1e-12:
                raise DegenerateSpectrum("vanishing eigenvector for a real eigenvalue")
            slots.append(("real", float(lam.real), [vec / nv]))
            i += 1

    def _sort_key(slot):
        if slot[0] == "real":
            return (-slot[1], 0.0)
        return (-slot[1][0], slot[1][1])

    slots.sort(key=_sort_key)
    r = np.column_stack([col for slot in slots for col in slot[2]])
    if reciprocal_condition(r) < _JORDAN_RCOND_MIN:
        raise DegenerateSpectrum("eigenvector basis is near-singular (defective input)")
    return r, slots


def _kinds(spectrum: InvariantSpectrum) -> tuple[str, ...]:
    return tuple(v.kind for v in spectrum.values)


def _slot_kinds(slots) -> tuple[str, ...]:
    return tuple(REAL if s[0] == "real" else COMPLEX_PAIR for s in slots)


# ---------------------------------------------------------------------------
# the full decomposition
# ---------------------------------------------------------------------------


def decompose(
    x,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 0,
    debug: bool = False,
) -> Decomposition:
    """Symplectic equivalence normal form S1 @ X @ S2 = I_n (+) J.

    Pipeline: block-diagonalize Sigma(X) symplectically to -(M (+) M^T),
    factor M = A B into symmetric matrices, form W = [[0, A], [B, 0]] and the
    symplectic S' = (S X)^{-1} W, reduce with the GL embedding of A and a
    final similarity by the GL embedding of G^T, where J = G (-A^T B) G^{-1}
    is the real block form. The returned factors are one valid choice; only
    the canonical matrix, the residuals, and symplecticity are contractual.

    Raises SingularInput for singular X, DegenerateSpectrum (or subclasses)
    when the spectrum is too degenerate or ill-conditioned for a trustworthy
    result, never returning a silently bad decomposition.
    """
    x = as_even_square(x, "X")
    n = x.shape[0] // 2
    if reciprocal_condition(x) < _X_RCOND_MIN:
        raise SingularInput("X is singular within tolerance (rcond < 1e-12)")

    spectrum = invariants(x, tol)
    if spectrum.has_zero:
        raise SingularInput("zero invariant detected; canonical form requires nonsingular X")

    sig = symplectic_form(n)
    s, m = block_diagonalize_skew_hamiltonian(sigma_matrix(x), tol)
    factors = factor_two_symmetric(m, seed=seed)
    a, b = factors.a, factors.b

    w_mat = np.zeros((2 * n, 2 * n))
    w_mat[:n, n:] = a
    w_mat[n:, :n] = b
    sx = s @ x
    try:
        s_prime = np.linalg.solve(sx, w_mat)
    except np.linalg.LinAlgError as exc:
        raise SingularInput(f"S X is singular: {exc}") from exc

    if debug:
        check = is_symplectic(s_prime, tol)
        budget = tol.residual_tol * max(1.0, 1.0 / max(reciprocal_condition(sx), 1e-300))
        budget *= max(1.0, frobenius(s_prime) ** 2)
        if check.residual > budget:
            raise DegenerateSpectrum(
                f"intermediate factor lost symplecticity: {check.residual:.3e}"
            )

    k = -(a.T @ b)
    r, slots = _real_jordan_basis(k, tol)
    if _slot_kinds(slots) != _kinds(spectrum):
        raise DegenerateSpectrum(
            "invariant classification differs between Sigma(X) and the reduced block"
        )
    g = np.linalg.inv(r)

    s1 = gl_embed(g.T) @ gl_embed(a) @ s
    s2 = s_prime @ sig @ gl_embed(r.T)  # gl_embed(r.T) == gl_embed(g.T)^{-1}

    blocks = canonical_from_invariants(spectrum)
    recon = frobenius(s1 @ x @ s2 - blocks.assembled)
    recon /= max(frobenius(s1) * frobenius(x) * frobenius(s2), 1e-300)
    s1_res = is_symplectic(s1, tol).residual
    s2_res = is_symplectic(s2, tol).residual
    if recon > tol.residual_tol or s1_res > tol.residual_tol or s2_res > tol.residual_tol:
        raise DegenerateSpectrum(
            "decomposition failed its own residual contract "
            f"(recon {recon:.3e}, s1 {s1_res:.3e}, s2 {s2_res:.3e})"
        )
    return Decomposition(
        s1=s1,
        s2=s2,
        blocks=blocks,
        recon_residual=recon,
        s1_residual=s1_res,
        s2_residual=s2_res,
    )


def verify_decomposition(x, d: Decomposition, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    """Recompute every residual of a decomposition from scratch.

    Nothing stored in ``d`` is trusted: the reconstruction residual, both
    symplecticity residuals and the distance between the block eigenvalues
    and the invariants of X are all evaluated anew.
    """
    x = as_even_square(x, "X")
    if d.s1.shape != x.shape or d.s2.shape != x.shape:
        raise DimensionError("decomposition factors do not match the input dimension")
    recon = frobenius(d.s1 @ x @ d.s2 - d.blocks.assembled)
    recon /= max(frobenius(d.s1) * frobenius(x) * frobenius(d.s2), 1e-300)
    s1_res = is_symplectic(d.s1, tol).residual
    s2_res = is_symplectic(d.s2, tol).residual

    spectrum = invariants(x, tol)
    block_vals = d.blocks.eigenvalues()
    spectrum_vals = spectrum.as_multiset()
    if block_vals.shape != spectrum_vals.shape:
        match = float("inf")
    else:
        scale = max(1.0, float(np.max(np.abs(spectrum_vals))))
        match = float(np.max(np.abs(block_vals - spectrum_vals))) / scale

    verdict = (
        recon <= tol.residual_tol
        and s1_res <= tol.residual_tol
        and s2_res <= tol.residual_tol
        and match <= tol.degeneracy_gap
    )
    return VerificationReport(recon=recon, s1=s1_res, s2=s2_res, spectrum_match=match, verdict=verdict)


# ---------------------------------------------------------------------------
# the classical normal-mode decomposition
# ---------------------------------------------------------------------------


def williamson(x, tol: Tolerances = DEFAULT_TOL) -> WilliamsonResult:
    """Normal-mode decomposition S X S^T = diag(nu_1..nu_n, nu_1..nu_n).

    X must be symmetric positive definite; S is symplectic and the
    frequencies nu are returned in descending order together with the mode
    occupations (nu - 1) / 2.
    """
    x = as_even_square(x, "X")
    nrm = frobenius(x)
    if frobenius(x - x.T) > 1e-10 * max(nrm, 1e-300):
        raise NotSymmetric("X must be symmetric for the normal-mode decomposition")
    xs = (x + x.T) / 2
    n = xs.shape[0] // 2

    evals, evecs = np.linalg.eigh(xs)
    if evals[0] <= tol.psd_tol * max(1.0, nrm):
        raise NotPositiveDefinite(f"minimal eigenvalue {evals[0]:.3e} is not positive")
    inv_sqrt = (evecs * (evals**-0.5)) @ evecs.T

    sig = symplectic_form(n)
    y = inv_sqrt @ sig @ inv_sqrt
    y = (y - y.T) / 2
    t, z = schur(y, output="real")

    p_cols, q_cols, kappa = [], [], []
    for i in range(n):
        r0, r1 = 2 * i, 2 * i + 1
        tt = (t[r0, r1] - t[r1, r0]) / 2
        if abs(tt) <= tol.psd_tol:
            raise NotPositiveDefinite("degenerate antisymmetric block; X is not definite")
        if tt < 0:
            p_cols.append(z[:, r0])
            q_cols.append(z[:, r1])
        else:
            p_cols.append(z[:, r1])
            q_cols.append(z[:, r0])
        kappa.append(abs(tt))

    nu = 1.0 / np.asarray(kappa)
    order = np.argsort(-nu)
    nu = nu[order]
    q = np.column_stack([p_cols[i] for i in order] + [q_cols[i] for i in order])
    d_sqrt = np.sqrt(np.concatenate([nu, nu]))
    s = (d_sqrt[:, None] * q.T) @ inv_sqrt
    return WilliamsonResult(s=s, nu=nu, occupations=(nu - 1.0) / 2.0)


def williamson_invariant_gap(x, tol: Tolerances = DEFAULT_TOL) -> float:
    """Worst relative gap between sorted invariants and squared frequencies.

    For positive definite X the invariants equal nu_k**2; this evaluates both
    sides independently and reports max |lambda_k - nu_k^2| / scale.
    """
    res = williamson(x, tol)
    spectrum = invariants(x, tol)
    if any(v.kind != REAL for v in spectrum.values):
        raise NotPositiveDefinite("positive definite input must have real invariants")
    lam = np.asarray(sorted((v.re for v in spectrum.values), reverse=True))
    nu_sq = np.sort(res.nu**2)[::-1]
    if lam.shape != nu_sq.shape:
        return float("inf")
    scale = max(1.0, float(np.max(np.abs(lam))))
    return float(np.max(np.abs(lam - nu_sq))) / scale
