import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympeq import (
    DimensionError,
    SingularInput,
    Tolerances,
    direct_sum,
    gl_embed,
    hermitian_min_eig,
    is_symplectic,
    mode_direct_sum,
    random_symplectic,
    symplectic_form,
)

seeds = st.integers(min_value=0, max_value=10**6)
small_n = st.integers(min_value=1, max_value=4)


def test_symplectic_form_n1():
    assert symplectic_form(1).tolist() == [[0.0, -1.0], [1.0, 0.0]]


def test_symplectic_form_n2_layout():
    sig = symplectic_form(2)
    assert np.array_equal(sig[:2, 2:], -np.eye(2))
    assert np.array_equal(sig[2:, :2], np.eye(2))
    assert np.array_equal(sig[:2, :2], np.zeros((2, 2)))
    assert np.array_equal(sig[2:, 2:], np.zeros((2, 2)))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_form_algebraic_identities_exact(n):
    sig = symplectic_form(n)
    assert np.array_equal(sig @ sig, -np.eye(2 * n))
    assert np.array_equal(sig @ sig.T, np.eye(2 * n))
    assert np.array_equal(sig.T, -sig)


def test_form_rejects_bad_n():
    with pytest.raises(DimensionError):
        symplectic_form(0)


def test_is_symplectic_identity():
    check = is_symplectic(np.eye(2))
    assert check.residual == 0.0
    assert check.verdict


def test_is_symplectic_form_itself():
    assert is_symplectic(symplectic_form(2)).verdict


def test_is_symplectic_squeezer_and_counterexample():
    # oracle: S sigma S^T evaluated by hand for 2x2 diagonals
    sig = symplectic_form(1)
    s_good = np.diag([2.0, 0.5])
    s_bad = np.diag([2.0, 2.0])
    assert np.allclose(s_good @ sig @ s_good.T, sig)
    assert not np.allclose(s_bad @ sig @ s_bad.T, sig)
    assert is_symplectic(s_good).verdict
    assert not is_symplectic(s_bad).verdict


def test_is_symplectic_rejects_odd_dimension():
    with pytest.raises(DimensionError):
        is_symplectic(np.eye(3))


def test_gl_embed_identity():
    assert np.array_equal(gl_embed(np.eye(2)), np.eye(4))


def test_gl_embed_scalar():
    assert np.allclose(gl_embed([[2.0]]), np.diag([0.5, 2.0]))


def test_gl_embed_rejects_singular():
    with pytest.raises(SingularInput):
        gl_embed(np.zeros((2, 2)))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_gl_embed_is_symplectic(seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((3, 3)) + 3 * np.eye(3)
    assert is_symplectic(gl_embed(g)).verdict


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_gl_embed_antihomomorphism(seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((3, 3)) + 3 * np.eye(3)
    h = rng.standard_normal((3, 3)) + 3 * np.eye(3)
    lhs = gl_embed(g) @ gl_embed(h)
    rhs = gl_embed(h @ g)
    scale = np.linalg.norm(g) * np.linalg.norm(h)
    assert np.linalg.norm(lhs - rhs) <= 1e-10 * scale


def test_direct_sum_scalars():
    assert np.array_equal(direct_sum(np.eye(1), [[9.0]]), np.diag([1.0, 9.0]))
    assert np.array_equal(direct_sum([[1.0]], [[2.0]]), np.diag([1.0, 2.0]))


def test_direct_sum_spectrum_union():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((3, 3))
    b = rng.standard_normal((2, 2))
    got = np.sort_complex(np.linalg.eigvals(direct_sum(a, b)))
    want = np.sort_complex(np.concatenate([np.linalg.eigvals(a), np.linalg.eigvals(b)]))
    assert np.allclose(got, want)


def test_mode_direct_sum_layout():
    # one mode with labelled quadrants, another scaled: P/Q sectors must not interleave
    a = np.array([[1.0, 2.0], [3.0, 4.0]])
    b = np.array([[10.0, 20.0], [30.0, 40.0]])
    out = mode_direct_sum(a, b)
    assert out.shape == (4, 4)
    assert out[0, 0] == 1.0 and out[0, 2] == 2.0
    assert out[2, 0] == 3.0 and out[2, 2] == 4.0
    assert out[1, 1] == 10.0 and out[1, 3] == 20.0
    assert out[3, 1] == 30.0 and out[3, 3] == 40.0


def test_mode_direct_sum_preserves_symplectic_form():
    assert np.array_equal(
        mode_direct_sum(symplectic_form(1), symplectic_form(2)), symplectic_form(3)
    )


def test_random_symplectic_deterministic():
    a = random_symplectic(3, seed=42)
    b = random_symplectic(3, seed=42)
    assert np.array_equal(a, b)


@given(seeds, small_n)
@settings(max_examples=30, deadline=None)
def test_random_symplectic_in_group(seed, n):
    s = random_symplectic(n, seed=seed)
    check = is_symplectic(s)
    assert check.residual <= 1e-10 * max(1.0, np.linalg.norm(s) ** 2)
    assert abs(np.linalg.det(s) - 1.0) <= 1e-8 * max(1.0, np.linalg.norm(s) ** 2)


@given(seeds, small_n)
@settings(max_examples=20, deadline=None)
def test_group_closure(seed, n):
    a = random_symplectic(n, seed=seed)
    b = random_symplectic(n, seed=seed + 1)
    assert is_symplectic(a @ b).verdict
    assert is_symplectic(a.T).verdict
    assert is_symplectic(np.linalg.inv(a), Tolerances(residual_tol=1e-6)).verdict


def test_hermitian_min_eig_matches_complex_solver():
    rng = np.random.default_rng(8)
    r = rng.standard_normal((6, 6))
    r = (r + r.T) / 2
    a = rng.standard_normal((6, 6))
    a = (a - a.T) / 2
    want = np.linalg.eigvalsh(r + 1j * a)[0]
    assert abs(hermitian_min_eig(r, a) - want) <= 1e-12 * max(1.0, abs(want))


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError):
        Tolerances(residual_tol=0.0)
