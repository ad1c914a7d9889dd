import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympeq import (
    COMPLEX_PAIR,
    REAL,
    ClusteringAmbiguous,
    DimensionError,
    Tolerances,
    invariants,
    multiset_distance,
    random_symplectic,
    sigma_matrix,
    symplectic_form,
    williamson,
)
from sympeq.invariants import cluster_doubled_spectrum

seeds = st.integers(min_value=0, max_value=10**6)


def canonical_block(a, b):
    return np.array([[a, b], [-b, a]])


def embed_blocks(*mats):
    mats = [np.asarray(m, dtype=float) for m in mats]
    dim = sum(m.shape[0] for m in mats)
    out = np.zeros((dim, dim))
    pos = 0
    for m in mats:
        k = m.shape[0]
        out[pos : pos + k, pos : pos + k] = m
        pos += k
    return out


# --- sigma_matrix -----------------------------------------------------------


def test_sigma_matrix_identity():
    assert np.allclose(sigma_matrix(np.eye(4)), np.eye(4))


def test_sigma_matrix_scalar():
    # direct multiplication oracle: (3I) sigma (3I) sigma^T = 9 I
    assert np.allclose(sigma_matrix(3 * np.eye(2)), 9 * np.eye(2))


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_sigma_matrix_of_symplectic_is_identity(seed):
    s = random_symplectic(3, seed=seed)
    scale = np.linalg.norm(s) ** 2
    assert np.linalg.norm(sigma_matrix(s) - np.eye(6)) <= 1e-8 * scale


@given(seeds, st.integers(min_value=1, max_value=4))
@settings(max_examples=20, deadline=None)
def test_sigma_matrix_exactly_skew_hamiltonian(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((2 * n, 2 * n))
    sig_x = sigma_matrix(x)
    skew = sig_x @ symplectic_form(n)
    assert np.linalg.norm(skew.T + skew) <= 1e-12 * max(1.0, np.linalg.norm(sig_x))


def test_sigma_matrix_rejects_odd():
    with pytest.raises(DimensionError):
        sigma_matrix(np.eye(3))


# --- invariants -------------------------------------------------------------


def test_invariants_identity():
    spectrum = invariants(np.eye(2))
    assert spectrum.n == 1
    assert len(spectrum.values) == 1
    assert spectrum.values[0].kind == REAL
    assert spectrum.values[0].re == pytest.approx(1.0)


def test_invariants_attenuation_block():
    spectrum = invariants(np.sqrt(0.36) * np.eye(2))
    assert spectrum.values[0].re == pytest.approx(0.36, abs=1e-14)


def test_invariants_complex_pair_block():
    x = embed_blocks(np.eye(2), canonical_block(1.0, 2.0))
    spectrum = invariants(x)
    assert [v.kind for v in spectrum.values] == [COMPLEX_PAIR]
    assert spectrum.values[0].re == pytest.approx(1.0, abs=1e-12)
    assert spectrum.values[0].im == pytest.approx(2.0, abs=1e-12)
    # independent oracle: eigensolve the invariant matrix directly
    eig = np.sort_complex(np.linalg.eigvals(sigma_matrix(x)))
    want = np.sort_complex(np.array([1 + 2j, 1 + 2j, 1 - 2j, 1 - 2j]))
    assert np.max(np.abs(eig - want)) <= 1e-10


def test_invariants_match_squared_frequencies():
    x = np.diag([2.0, 2.0])
    spectrum = invariants(x)
    res = williamson(x)
    assert spectrum.values[0].re == pytest.approx(4.0, abs=1e-12)
    assert res.nu[0] == pytest.approx(2.0, abs=1e-12)
    assert spectrum.values[0].re == pytest.approx(res.nu[0] ** 2, rel=1e-12)


def test_invariants_zero_flag_for_singular_input():
    x = np.diag([1.0, 0.0])
    spectrum = invariants(x)
    assert spectrum.has_zero


def test_invariants_repeated_values_reported_not_rejected():
    spectrum = invariants(np.eye(4))
    assert [v.re for v in spectrum.values] == [1.0, 1.0]


def test_canonical_order_real_before_pair_on_tied_real_part():
    # I_3 (+) J with J = diag(1, [[1,2],[-2,1]]): invariants 1 and 1 +/- 2i
    x = embed_blocks(np.eye(3), embed_blocks([[1.0]], canonical_block(1.0, 2.0)))
    spectrum = invariants(x)
    kinds = [v.kind for v in spectrum.values]
    assert kinds == [REAL, COMPLEX_PAIR]


# --- properties -------------------------------------------------------------


@given(seeds, st.integers(min_value=1, max_value=6))
@settings(max_examples=40, deadline=None)
def test_equivalence_invariance(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((2 * n, 2 * n))
    s1 = random_symplectic(n, seed=seed + 1)
    s2 = random_symplectic(n, seed=seed + 2)
    assert multiset_distance(invariants(x), invariants(s1 @ x @ s2)) <= 1e-6


@given(seeds, st.integers(min_value=1, max_value=4))
@settings(max_examples=20, deadline=None)
def test_similarity_transport(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((2 * n, 2 * n))
    s1 = random_symplectic(n, seed=seed + 1)
    s2 = random_symplectic(n, seed=seed + 2)
    lhs = sigma_matrix(s1 @ x @ s2)
    rhs = s1 @ sigma_matrix(x) @ np.linalg.inv(s1)
    cond = np.linalg.cond(s1)
    assert np.linalg.norm(lhs - rhs) <= 1e-8 * cond * max(1.0, np.linalg.norm(rhs))


@given(seeds, st.integers(min_value=1, max_value=6))
@settings(max_examples=40, deadline=None)
def test_doubling(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((2 * n, 2 * n))
    spectrum = invariants(x)
    assert spectrum.pairing_residual <= 1e-6
    assert spectrum.slots() == n


@given(seeds, st.integers(min_value=1, max_value=5))
@settings(max_examples=25, deadline=None)
def test_conjugate_closure(seed, n):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((2 * n, 2 * n))
    w = np.linalg.eigvals(sigma_matrix(x))
    scale = max(1.0, np.max(np.abs(w)))
    diff = np.sort_complex(w) - np.sort_complex(np.conj(w))
    assert np.max(np.abs(diff)) <= 1e-10 * scale


# --- clustering edge cases --------------------------------------------------


def test_cluster_rejects_odd_real_group():
    w = np.array([1.0, 1.0, 2.0], dtype=complex)
    with pytest.raises(ClusteringAmbiguous):
        cluster_doubled_spectrum(w, 1e-6)


def test_cluster_rejects_unbalanced_conjugates():
    w = np.array([1 + 1j, 1 + 1j, 1 - 1j, 2.0], dtype=complex)
    with pytest.raises(ClusteringAmbiguous):
        cluster_doubled_spectrum(w, 1e-6)


def test_cluster_groups_exact_repeats():
    w = np.array([1.0, 1.0, 1.0, 1.0], dtype=complex)
    reals, pairs, worst = cluster_doubled_spectrum(w, 1e-6)
    assert len(reals) == 1 and len(reals[0][1]) == 4
    assert not pairs and worst == 0.0


def test_loose_gap_merges_near_degenerate_invariants():
    # diagonal X = diag(p1, p2, q1, q2) has invariants {p1 q1, p2 q2}
    x = np.diag([1.0, 1.0 + 1e-7, 1.0, 1.0])
    spectrum = invariants(x, Tolerances(degeneracy_gap=1e-6))
    assert len(spectrum.values) == 2
    assert spectrum.values[0].re == pytest.approx(spectrum.values[1].re)
    tight = invariants(x, Tolerances(degeneracy_gap=1e-9))
    assert abs(tight.values[0].re - tight.values[1].re) == pytest.approx(1e-7, rel=1e-4)


def test_multiset_distance_dimension_mismatch_is_inf():
    a = invariants(np.eye(2))
    b = invariants(np.eye(4))
    assert multiset_distance(a, b) == float("inf")
