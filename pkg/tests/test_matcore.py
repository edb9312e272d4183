import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cjsr.matcore import (
    NormKind,
    as_cmatrix,
    identity,
    mat_mul,
    norm,
    norms,
    spectral_radii,
    spectral_radius,
    vec_apply,
    zeros,
)

from conftest import S0, S1

GOLDEN = np.array([[2, 1], [1, 1]])
PHI2 = (3 + 5**0.5) / 2


def test_mat_mul_examples():
    a = np.array([[1, 2], [3, 4]])
    np.testing.assert_array_equal(mat_mul(identity(2), a), a)
    np.testing.assert_array_equal(mat_mul(S1, S0), zeros(2))
    np.testing.assert_array_equal(mat_mul([[1, 1], [0, 1]], [[1, 0], [1, 1]]), GOLDEN)


def test_mat_mul_shape_mismatch():
    with pytest.raises(ValueError):
        mat_mul(identity(2), identity(3))


def test_as_cmatrix_rejects_bad_input():
    for bad in ([[1, 2, 3]], [], [[np.nan]], np.ones((2, 2, 2))):
        with pytest.raises(ValueError):
            as_cmatrix(bad)
    m = as_cmatrix([[1]])
    assert m.dtype == np.complex128 and not m.flags.writeable


def test_vec_apply():
    np.testing.assert_array_equal(vec_apply(identity(2), [3, 4]), [3, 4])
    np.testing.assert_array_equal(vec_apply(S0, [0, 1]), [0, 0])
    np.testing.assert_array_equal(vec_apply(GOLDEN, [1, 0]), [2, 1])
    with pytest.raises(ValueError):
        vec_apply(GOLDEN, [1, 0, 0])


@pytest.mark.parametrize("kind", list(NormKind))
def test_norm_zero_and_identity(kind):
    assert norm(zeros(2), kind) == 0.0
    expected = 1.0 if kind is not NormKind.FROBENIUS else 2**0.5
    assert norm(identity(2), kind) == pytest.approx(expected, rel=1e-15)


def test_norm_golden():
    assert norm(GOLDEN) == pytest.approx(PHI2, rel=1e-12)
    assert norm(GOLDEN, "frobenius") == pytest.approx(7**0.5)
    assert norm([[1, -2], [3, 4]], "maxrowsum") == 7
    assert norm([[1, -2], [3, 4]], "maxcolsum") == 6


def test_norm_kind_parse():
    assert NormKind.parse("Spectral2") is NormKind.SPECTRAL2
    assert NormKind.parse(NormKind.FROBENIUS) is NormKind.FROBENIUS
    with pytest.raises(ValueError):
        NormKind.parse("nuclear")


def test_spectral_radius_examples():
    assert spectral_radius([[0, 1], [0, 0]]) == 0.0
    assert spectral_radius(S0) == pytest.approx(1.0, rel=1e-12)
    assert spectral_radius(GOLDEN) == pytest.approx(PHI2, rel=1e-10)
    assert spectral_radius(zeros(3)) == 0.0


def test_spectral_radius_hard_cases():
    # Jordan block, rotation and a large nilpotent shift
    assert spectral_radius([[1, 1], [0, 1]]) == pytest.approx(1.0, rel=1e-8)
    assert spectral_radius([[0, -0.9], [0.9, 0]]) == pytest.approx(0.9, rel=1e-12)
    assert spectral_radius(np.diag(np.ones(7), 1)) == 0.0
    assert spectral_radius([[1e-200, 0], [0, 0]]) == pytest.approx(1e-200, rel=1e-12)
    assert spectral_radius([[1e200, 0], [0, 0]]) == pytest.approx(1e200, rel=1e-12)


def _random_stack(seed, n, d):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, d, d)) + 1j * rng.normal(size=(n, d, d))


@given(st.integers(0, 2**31), st.integers(1, 6))
def test_spectral_radii_match_eigvals(seed, d):
    stack = _random_stack(seed, 20, d)
    expected = np.abs(np.linalg.eigvals(stack)).max(axis=-1)
    np.testing.assert_allclose(spectral_radii(stack), expected, rtol=1e-8)


@given(st.integers(0, 2**31), st.sampled_from(list(NormKind)))
def test_batched_norms_match_single(seed, kind):
    stack = _random_stack(seed, 7, 3)
    single = [norm(m, kind) for m in stack]
    np.testing.assert_array_equal(norms(stack, kind), single)


@given(st.integers(0, 2**31))
def test_norm_dominates_radius_and_is_submultiplicative(seed):
    a, b = _random_stack(seed, 2, 3)
    for kind in NormKind:
        assert spectral_radius(a) <= norm(a, kind) * (1 + 1e-12)
        assert norm(a @ b, kind) <= norm(a, kind) * norm(b, kind) * (1 + 1e-12)
