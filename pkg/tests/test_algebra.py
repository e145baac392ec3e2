import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conetool import algebra as alg
from conetool import io
from conetool.algebra import AlgebraDescriptor, Element
from conetool.errors import AlgebraMismatchError, DomainError

from oracles import pauli
from strategies import element_tuples, elements_of, algebras, SMALL_ALGEBRAS

SYM2 = alg.real_symmetric(2)


# -- unit, products, traces -------------------------------------------------------


def test_unit_examples():
    assert np.array_equal(alg.unit(SYM2).coords, np.eye(2))
    assert np.array_equal(alg.unit(alg.spin_factor(4)).coords, [1.0, 0.0, 0.0, 0.0])
    assert np.array_equal(alg.unit(alg.complex_hermitian(3)).coords, np.eye(3))


@given(elements_of(alg.complex_hermitian(3)))
def test_unit_properties(x):
    u = alg.unit(x.algebra)
    assert alg.allclose(alg.jordan_product(u, x), x, atol=1e-15)
    assert alg.trace(u) == 3 and alg.determinant(u) == pytest.approx(1.0, abs=1e-15)


def test_jordan_product_examples():
    assert np.allclose(alg.jordan_product(alg.diag([1, 2]), alg.diag([3, 4])).coords, np.diag([3, 8]))
    assert np.allclose(alg.jordan_product(alg.spin(2, [1, 0]), alg.spin(1, [0, 0])).coords, [2, 1, 0])
    x = Element(SYM2, [[0, 1], [1, 0]])
    expect = 0.5 * (x.coords @ np.diag([1.0, 0.0]) + np.diag([1.0, 0.0]) @ x.coords)
    assert np.allclose(expect, [[0, 0.5], [0.5, 0]])
    assert np.allclose(alg.jordan_product(x, alg.diag([1, 0])).coords, expect)


def test_algebra_mismatch_raises():
    with pytest.raises(AlgebraMismatchError):
        alg.jordan_product(alg.diag([1, 2]), alg.diag([1, 2, 3]))
    with pytest.raises(AlgebraMismatchError):
        alg.quadratic_rep(alg.diag([1, 2]), alg.spin(1, [0, 0]))


@given(element_tuples(3))
def test_jordan_product_commutative_bilinear(xyz):
    x, y, z = xyz
    assert alg.allclose(alg.jordan_product(x, y), alg.jordan_product(y, x), atol=1e-14)
    lhs = alg.jordan_product(2.0 * x + z, y)
    rhs = 2.0 * alg.jordan_product(x, y) + alg.jordan_product(z, y)
    assert alg.allclose(lhs, rhs, atol=1e-13)


@given(element_tuples(2, scale=2.0))
def test_jordan_identity(xy):
    x, y = xy
    x2 = alg.square(x)
    lhs = alg.jordan_product(x2, alg.jordan_product(x, y))
    rhs = alg.jordan_product(x, alg.jordan_product(x2, y))
    assert (lhs - rhs).norm() <= 1e-10 * max(1.0, x.norm() ** 3 * y.norm())


@pytest.mark.parametrize("d", [3, 4])
@given(data=st.data())
def test_spin_product_matches_pauli_oracle(d, data):
    a = alg.spin_factor(d)
    x, y = data.draw(elements_of(a)), data.draw(elements_of(a))
    px, py = pauli(x), pauli(y)
    assert np.allclose(pauli(alg.jordan_product(x, y)), 0.5 * (px @ py + py @ px), atol=1e-14)
    assert np.allclose(pauli(alg.quadratic_rep(x, y)), px @ py @ px, atol=1e-13)
    assert np.allclose(alg.eigenvalues(x), np.linalg.eigvalsh(px)[::-1], atol=1e-14)


def test_quadratic_rep_examples(rng):
    y = alg.diag([3.0, -2.0])
    assert alg.allclose(alg.quadratic_rep(alg.unit(SYM2), y), y, atol=0)
    assert np.allclose(alg.quadratic_rep(alg.diag([2, 3]), alg.diag([1, 1])).coords, np.diag([4, 9]))
    a = alg.complex_hermitian(3)
    for _ in range(20):
        x = Element(a, rng.uniform(-1, 1, (3, 3)) + 1j * rng.uniform(-1, 1, (3, 3)))
        y = Element(a, rng.uniform(-1, 1, (3, 3)) + 1j * rng.uniform(-1, 1, (3, 3)))
        jordan = 2.0 * alg.jordan_product(x, alg.jordan_product(x, y)) - alg.jordan_product(alg.square(x), y)
        assert np.max(np.abs(jordan.coords - x.coords @ y.coords @ x.coords)) <= 1e-12
        assert np.max(np.abs(alg.quadratic_rep(x, y).coords - x.coords @ y.coords @ x.coords)) <= 1e-12


@given(element_tuples(2, kinds=("spin",)))
def test_quadratic_rep_spin_identity(xy):
    # U_x y = 2 <x, y> x - det(x) ybar in the spin factor
    x, y = xy
    ybar = Element(y.algebra, np.concatenate([[y.coords[0]], -y.coords[1:]]))
    closed = 2.0 * float(x.coords @ y.coords) * x - alg.determinant(x) * ybar
    assert alg.allclose(alg.quadratic_rep(x, y), closed, atol=1e-13)


def test_inner_product_examples():
    assert alg.inner_product(alg.unit(alg.real_symmetric(3)), alg.unit(alg.real_symmetric(3))) == 3
    frame = alg.spectral_decompose(alg.spin(0.3, [1.0, 2.0])).frame
    assert abs(alg.inner_product(frame[0], frame[1])) <= 1e-15
    assert alg.inner_product(alg.diag([1, 2]), alg.diag([3, 4])) == 11


@given(element_tuples(2))
def test_inner_product_is_trace_form(xy):
    x, y = xy
    assert alg.inner_product(x, y) == pytest.approx(alg.trace(alg.jordan_product(x, y)), abs=1e-13)
    assert alg.inner_product(x, y) == pytest.approx(alg.inner_product(y, x), abs=1e-14)
    assert alg.inner_product(x, x) >= 0


def test_trace_determinant_examples():
    x = alg.diag([2, 5])
    assert (alg.trace(x), alg.determinant(x)) == (7, pytest.approx(10))
    s = alg.spin(2, [1, 0])
    lam = alg.eigenvalues(s)
    assert np.allclose(lam, [3, 1])
    assert alg.trace(s) == pytest.approx(lam.sum()) == 4
    assert alg.determinant(s) == pytest.approx(lam.prod()) == 3
    for a in SMALL_ALGEBRAS:
        u = alg.unit(a)
        assert alg.trace(u) == a.rank and alg.determinant(u) == pytest.approx(1.0)


@given(element_tuples(1))
def test_trace_det_are_spectral(x):
    (x,) = x
    lam = alg.eigenvalues(x)
    assert alg.trace(x) == pytest.approx(lam.sum(), abs=1e-12)
    assert alg.determinant(x) == pytest.approx(lam.prod(), abs=1e-12)


# -- spectral decomposition -----------------------------------------------------------


def _check_decomposition(x, dec, tol=1e-10):
    a = x.algebra
    fr = dec.frame
    assert len(fr) == a.rank
    assert np.all(np.diff(dec.eigenvalues) <= 0)
    for i, p in enumerate(fr):
        assert (alg.square(p) - p).norm() <= tol
        assert alg.trace(p) == pytest.approx(1.0, abs=tol)
        for q in fr[i + 1:]:
            assert alg.jordan_product(p, q).norm() <= tol
    assert alg.allclose(alg.frame_sum(fr, range(a.rank)), alg.unit(a), atol=tol)
    recon = sum((lam * p for lam, p in zip(dec.eigenvalues, fr)), alg.zero(a))
    assert (recon - x).norm() <= tol * max(1.0, x.norm())


def test_spectral_examples():
    dec = alg.spectral_decompose(alg.diag([5.0, 5.0]))
    assert np.allclose(dec.eigenvalues, [5, 5])
    _check_decomposition(alg.diag([5.0, 5.0]), dec)

    s = alg.spin(2, [1, 0])
    dec = alg.spectral_decompose(s)
    assert np.allclose(dec.eigenvalues, [3, 1])
    assert np.allclose(dec.frame[0].coords, [0.5, 0.5, 0.0])
    assert np.allclose(dec.frame[1].coords, [0.5, -0.5, 0.0])
    _check_decomposition(s, dec)

    x = Element(SYM2, [[0, 1], [1, 0]])
    dec = alg.spectral_decompose(x)
    assert np.allclose(dec.eigenvalues, np.linalg.eigvalsh(x.coords)[::-1])
    assert np.allclose(dec.eigenvalues, [1, -1])


def test_spin_degenerate_frame():
    dec = alg.spectral_decompose(alg.spin(2.0, [0.0, 0.0, 0.0]))
    assert np.array_equal(dec.eigenvalues, [2.0, 2.0])
    assert np.array_equal(dec.frame[0].coords, [0.5, 0.5, 0, 0])
    assert np.array_equal(dec.frame[1].coords, [0.5, -0.5, 0, 0])


@given(element_tuples(1, scale=3.0))
def test_spectral_reconstruction_property(x):
    (x,) = x
    _check_decomposition(x, alg.spectral_decompose(x))


def test_spectral_decompose_deterministic(rng):
    x = Element(alg.complex_hermitian(4), rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4)))
    a, b = alg.spectral_decompose(x), alg.spectral_decompose(x)
    assert np.array_equal(a.eigenvalues, b.eigenvalues)
    assert all(np.array_equal(p.coords, q.coords) for p, q in zip(a.frame, b.frame))


# -- functional calculus ------------------------------------------------------------


def test_apply_spectral_examples(rng):
    assert alg.allclose(alg.exp(alg.zero(SYM2)), alg.unit(SYM2), atol=0)
    assert np.allclose(alg.inverse(alg.diag([2.0, 4.0])).coords, np.diag([0.5, 0.25]))
    for a in (alg.real_symmetric(4), alg.complex_hermitian(3), alg.spin_factor(5)):
        x = alg.exp(Element(a, rng.uniform(-1, 1, a.shape)))
        assert alg.allclose(alg.square(alg.sqrt(x)), x, atol=1e-10)


@given(element_tuples(1, scale=2.0))
def test_exp_log_roundtrip(x):
    (w,) = x
    x = alg.exp(w)
    assert alg.allclose(alg.exp(alg.log(x)), x, atol=1e-9 * max(1.0, x.norm()))
    assert alg.allclose(alg.log(x), w, atol=1e-9)
    assert alg.allclose(alg.jordan_product(x, alg.inverse(x)), alg.unit(x.algebra), atol=1e-9)


def test_domain_errors():
    with pytest.raises(DomainError):
        alg.log(alg.diag([1.0, -1.0]))
    with pytest.raises(DomainError):
        alg.inverse(alg.diag([1.0, 0.0]))
    with pytest.raises(DomainError):
        alg.sqrt(alg.diag([1.0, -2.0]))
    with pytest.raises(DomainError):
        alg.apply_spectral(alg.diag([1.0, 0.0]), lambda a: 1.0 / a)


# -- extreme eigenvalues -----------------------------------------------------------


def test_lambda_examples():
    x = alg.diag([-4.0, 3.0])
    assert alg.lambda_max(x) == 3 and alg.lambda_min(x) == -4
    assert alg.lambda_max(alg.unit(SYM2)) == 1
    assert alg.lambda_max(alg.spin(0, [2, 0, 0])) == 2


@given(element_tuples(1), st.floats(-10, 10))
def test_lambda_shift(x, mu):
    (x,) = x
    u = alg.unit(x.algebra)
    assert alg.lambda_max(x + mu * u) == pytest.approx(alg.lambda_max(x) + mu, abs=1e-12)


@given(element_tuples(2))
def test_lambda_monotone(xy):
    x, c = xy
    y = x + alg.square(c)  # y >= x
    assert alg.lambda_max(x) <= alg.lambda_max(y) + 1e-12


# -- Peirce spaces -------------------------------------------------------------------


def test_peirce_lambda_examples():
    assert alg.peirce_lambda_max(alg.diag([1, 1, 0]), alg.diag([2, -3, 0])) == pytest.approx(2)
    z = alg.diag([-5.0, 0.0])
    assert alg.peirce_lambda_max(alg.diag([1, 0]), z) == pytest.approx(-5)
    assert alg.lambda_max(z) == 0


def _compression_oracle(p, z):
    w, V = np.linalg.eigh(p.coords)
    B = V[:, w > 0.5]
    return np.linalg.eigvalsh(B.conj().T @ z.coords @ B)[-1]


def test_peirce_lambda_compression_oracle(rng):
    a = alg.complex_hermitian(4)
    for _ in range(30):
        frame = alg.spectral_decompose(Element(a, rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4)))).frame
        idx = [k for k in range(4) if rng.random() < 0.5] or [0]
        p = alg.frame_sum(frame, idx)
        z = alg.peirce_project(p, Element(a, 3 * (rng.uniform(-1, 1, (4, 4)) + 1j * rng.uniform(-1, 1, (4, 4)))))
        assert alg.peirce_lambda_max(p, z) == pytest.approx(_compression_oracle(p, z), abs=1e-10)


def test_peirce_lambda_errors():
    with pytest.raises(DomainError):
        alg.peirce_lambda_max(alg.diag([1, 0]), alg.diag([1, 1]))  # z outside A(p)
    with pytest.raises(DomainError):
        alg.peirce_lambda_max(alg.diag([0, 0]), alg.diag([0, 0]))  # p = 0
    with pytest.raises(DomainError):
        alg.peirce_lambda_max(alg.diag([2, 0]), alg.diag([1, 0]))  # not an idempotent


def test_peirce_project_examples(rng):
    x = Element(SYM2, [[1, 2], [2, 3]])
    assert alg.allclose(alg.peirce_project(alg.unit(SYM2), x), x, atol=0)
    assert np.allclose(alg.peirce_project(alg.diag([1, 0]), x).coords, [[1, 0], [0, 0]])
    assert alg.allclose(alg.peirce_project(alg.zero(SYM2), x), alg.zero(SYM2), atol=0)


@given(element_tuples(2))
def test_peirce_project_idempotent(xw):
    x, w = xw
    frame = alg.spectral_decompose(w).frame
    p = alg.frame_sum(frame, range(0, len(frame), 2))
    once = alg.peirce_project(p, x)
    assert alg.allclose(alg.peirce_project(p, once), once, atol=1e-12)
    assert alg.allclose(alg.jordan_product(p, once), once, atol=1e-12)


def test_frame_quadratic_rep_matches_product(rng):
    for a in (alg.real_symmetric(4), alg.complex_hermitian(3), alg.spin_factor(5)):
        dec = alg.spectral_decompose(Element(a, rng.uniform(-1, 1, a.shape)))
        y = Element(a, rng.uniform(-1, 1, a.shape))
        mu = rng.uniform(0.5, 2.0, a.rank)
        x = dec.reconstruct(mu)
        assert alg.allclose(alg.frame_quadratic_rep(dec.frame, mu, y), alg.quadratic_rep(x, y), atol=1e-12)


def test_frame_quadratic_rep_keeps_small_parts():
    p, q = alg.spectral_decompose(alg.spin(0, [1, 0])).frame
    mu = np.array([math.exp(-15), math.exp(15)])
    out = alg.frame_quadratic_rep((p, q), mu, p)
    assert alg.lambda_max(out) == pytest.approx(math.exp(-30), rel=1e-12)


def test_idempotent_validation():
    assert alg.idempotent(alg.diag([1, 1, 0])).trace == 2
    with pytest.raises(DomainError):
        alg.idempotent(alg.diag([0.5, 0]))


# -- elements and descriptors -------------------------------------------------------


def test_descriptor_invariants():
    assert (alg.real_symmetric(3).rank, alg.real_symmetric(3).dim) == (3, 6)
    assert (alg.complex_hermitian(3).rank, alg.complex_hermitian(3).dim) == (3, 9)
    assert (alg.spin_factor(5).rank, alg.spin_factor(5).dim) == (2, 5)
    with pytest.raises(ValueError):
        AlgebraDescriptor("octonion", 3)


def test_element_symmetrised_and_frozen():
    x = Element(SYM2, [[1.0, 2.0], [0.0, 1.0]])
    assert np.array_equal(x.coords, x.coords.T)
    with pytest.raises(ValueError):
        x.coords[0, 0] = 5.0
    h = Element(alg.complex_hermitian(2), [[1 + 1j, 2j], [0, 1]])
    assert np.array_equal(h.coords, h.coords.conj().T)
    with pytest.raises(ValueError):
        Element(SYM2, np.zeros(3))


@given(algebras.flatmap(elements_of))
def test_json_roundtrip(x):
    assert np.array_equal(io.element_from_json(io.element_to_json(x)).coords, x.coords)
