"""Finite-dimensional Euclidean Jordan algebras.

Three families are supported:

* ``sym``  -- real symmetric n x n matrices, rank n;
* ``herm`` -- complex Hermitian n x n matrices, rank n;
* ``spin`` -- the spin factor R x R^(d-1), rank 2, with product
  (s, v) o (t, w) = (s t + <v, w>, s w + t v).

Matrix elements are stored as full (self-adjoint) arrays, spin elements as
the flat vector ``[t, v_1, ..., v_{d-1}]``.  All functions are pure; elements
are immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import config
from .errors import AlgebraMismatchError, DomainError, SpectralError

KINDS = ("sym", "herm", "spin")
_LABELS = {"sym": "real-symmetric", "herm": "complex-hermitian", "spin": "spin-factor"}


@dataclass(frozen=True)
class AlgebraDescriptor:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown algebra kind {self.kind!r}")
        if int(self.n) != self.n or self.n < (2 if self.kind == "spin" else 1):
            raise ValueError(f"invalid size {self.n!r} for {self.kind}")

    @property
    def rank(self) -> int:
        return 2 if self.kind == "spin" else self.n

    @property
    def dim(self) -> int:
        """Ambient real dimension."""
        if self.kind == "sym":
            return self.n * (self.n + 1) // 2
        if self.kind == "herm":
            return self.n * self.n
        return self.n

    @property
    def is_matrix(self) -> bool:
        return self.kind != "spin"

    @property
    def shape(self) -> tuple:
        return (self.n,) if self.kind == "spin" else (self.n, self.n)

    @property
    def dtype(self):
        return np.complex128 if self.kind == "herm" else np.float64

    def __str__(self) -> str:
        return f"{_LABELS[self.kind]}({self.n})"


def real_symmetric(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("sym", n)


def complex_hermitian(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("herm", n)


def spin_factor(d: int) -> AlgebraDescriptor:
    return AlgebraDescriptor("spin", d)


@dataclass(frozen=True, eq=False)
class Element:
    """A point of a Euclidean Jordan algebra.

    Matrix coordinates are symmetrised (Hermitised) on construction, so the
    stored array is exactly self-adjoint.
    """

    algebra: AlgebraDescriptor
    coords: np.ndarray

    def __post_init__(self):
        alg = self.algebra
        a = np.array(self.coords, dtype=alg.dtype, copy=True)
        if a.shape != alg.shape:
            raise ValueError(f"coords of shape {a.shape} do not fit {alg} (expected {alg.shape})")
        if not np.all(np.isfinite(a)):
            raise DomainError("non-finite coordinates")
        if alg.is_matrix:
            a = 0.5 * (a + a.conj().T)
            if alg.kind == "herm":
                np.fill_diagonal(a, a.diagonal().real)
        a.flags.writeable = False
        object.__setattr__(self, "coords", a)

    def _coerce(self, other) -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        _check_same(self, other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.algebra, self.coords + other.coords)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Element(self.algebra, self.coords - other.coords)

    def __neg__(self):
        return Element(self.algebra, -self.coords)

    def __mul__(self, scalar):
        if isinstance(scalar, Element):
            return NotImplemented
        return Element(self.algebra, self.coords * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Element(self.algebra, self.coords / float(scalar))

    def norm(self) -> float:
        """Euclidean norm of the coordinate array (used for residuals only)."""
        return float(np.linalg.norm(self.coords))

    def __repr__(self) -> str:
        return f"Element({self.algebra}, {np.array2string(np.asarray(self.coords), precision=6)})"


def _check_same(*elements: Element) -> AlgebraDescriptor:
    alg = elements[0].algebra
    for e in elements[1:]:
        if e.algebra != alg:
            raise AlgebraMismatchError(f"algebra mismatch: {alg} vs {e.algebra}")
    return alg


def element(algebra: AlgebraDescriptor, data) -> Element:
    return Element(algebra, np.asarray(data))


def diag(values, kind: str = "sym") -> Element:
    """Diagonal matrix element, e.g. ``diag([1, 2])`` in real-symmetric(2)."""
    values = np.asarray(values, dtype=float)
    alg = AlgebraDescriptor(kind, len(values))
    if not alg.is_matrix:
        raise ValueError("diag() builds matrix elements only")
    return Element(alg, np.diag(values).astype(alg.dtype))


def spin(t: float, v) -> Element:
    v = np.atleast_1d(np.asarray(v, dtype=float))
    return Element(spin_factor(len(v) + 1), np.concatenate([[float(t)], v]))


def unit(algebra: AlgebraDescriptor) -> Element:
    if algebra.is_matrix:
        return Element(algebra, np.eye(algebra.n, dtype=algebra.dtype))
    u = np.zeros(algebra.n)
    u[0] = 1.0
    return Element(algebra, u)


def zero(algebra: AlgebraDescriptor) -> Element:
    return Element(algebra, np.zeros(algebra.shape, dtype=algebra.dtype))


def allclose(x: Element, y: Element, atol: float = 1e-9) -> bool:
    _check_same(x, y)
    return bool(np.max(np.abs(x.coords - y.coords), initial=0.0) <= atol)


# -- products -----------------------------------------------------------------


def jordan_product(x: Element, y: Element) -> Element:
    alg = _check_same(x, y)
    if alg.is_matrix:
        xy = x.coords @ y.coords
        return Element(alg, 0.5 * (xy + xy.conj().T))
    s, v = x.coords[0], x.coords[1:]
    t, w = y.coords[0], y.coords[1:]
    return Element(alg, np.concatenate([[s * t + v @ w], s * w + t * v]))


def square(x: Element) -> Element:
    return jordan_product(x, x)


def quadratic_rep(x: Element, y: Element) -> Element:
    """U_x y = 2 x o (x o y) - x^2 o y  (= x y x for matrices)."""
    alg = _check_same(x, y)
    if alg.is_matrix:
        return Element(alg, x.coords @ y.coords @ x.coords)
    return 2.0 * jordan_product(x, jordan_product(x, y)) - jordan_product(square(x), y)


def inner_product(x: Element, y: Element) -> float:
    """Trace form (x|y) = tr(x o y)."""
    alg = _check_same(x, y)
    if alg.is_matrix:
        return float(np.sum(x.coords * y.coords.conj()).real)
    return 2.0 * float(x.coords @ y.coords)


def trace(x: Element) -> float:
    if x.algebra.is_matrix:
        return float(np.trace(x.coords).real)
    return 2.0 * float(x.coords[0])


def determinant(x: Element) -> float:
    if x.algebra.is_matrix:
        return float(np.linalg.det(x.coords).real)
    t, v = x.coords[0], x.coords[1:]
    return float(t * t - v @ v)


# -- spectral theory ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """x = sum_i eigenvalues[i] * frame[i], eigenvalues sorted descending."""

    eigenvalues: np.ndarray
    frame: tuple
    # orthonormal eigenvectors (columns) for matrix kinds; speeds up calculus
    vectors: np.ndarray | None = field(default=None, repr=False)

    def reconstruct(self, values=None) -> Element:
        """sum_i f_i p_i, with f defaulting to the eigenvalues themselves."""
        values = self.eigenvalues if values is None else np.asarray(values, dtype=float)
        alg = self.frame[0].algebra
        if self.vectors is not None:
            V = self.vectors
            return Element(alg, (V * values) @ V.conj().T)
        out = np.zeros(alg.shape)
        for lam, p in zip(values, self.frame):
            out = out + lam * p.coords
        return Element(alg, out)


def _spin_frame(x: Element):
    alg = x.algebra
    t, v = float(x.coords[0]), x.coords[1:]
    nv = float(np.linalg.norm(v))
    if nv <= config.get().degeneracy_rel * abs(t) + 1e-300:
        e = np.zeros(alg.n - 1)
        e[0] = 1.0
    else:
        e = v / nv
    p = Element(alg, 0.5 * np.concatenate([[1.0], e]))
    q = Element(alg, 0.5 * np.concatenate([[1.0], -e]))
    return np.array([t + nv, t - nv]), (p, q)


def _eigh(x: Element):
    try:
        lam, V = np.linalg.eigh(x.coords)
    except np.linalg.LinAlgError as exc:
        raise SpectralError(f"eigensolver failed on {x.algebra}: {exc}", residual=float("nan")) from exc
    return lam[::-1].copy(), V[:, ::-1].copy()


def spectral_decompose(x: Element) -> SpectralDecomposition:
    alg = x.algebra
    if not alg.is_matrix:
        lam, frame = _spin_frame(x)
        return SpectralDecomposition(lam, frame)
    lam, V = _eigh(x)
    frame = tuple(Element(alg, np.outer(V[:, i], V[:, i].conj())) for i in range(alg.n))
    return SpectralDecomposition(lam, frame, V)


def eigenvalues(x: Element) -> np.ndarray:
    """Spectrum of x with multiplicities, sorted descending."""
    if x.algebra.is_matrix:
        try:
            return np.linalg.eigvalsh(x.coords)[::-1].copy()
        except np.linalg.LinAlgError as exc:
            raise SpectralError(f"eigensolver failed: {exc}") from exc
    t, v = float(x.coords[0]), x.coords[1:]
    nv = float(np.linalg.norm(v))
    return np.array([t + nv, t - nv])


def lambda_max(x: Element) -> float:
    return float(eigenvalues(x)[0])


def lambda_min(x: Element) -> float:
    return float(eigenvalues(x)[-1])


def spectral_radius(x: Element) -> float:
    return float(np.max(np.abs(eigenvalues(x))))


def is_interior(x: Element) -> bool:
    lam = eigenvalues(x)
    return bool(lam[-1] > config.get().interior_rel * max(1.0, lam[0]))


def _require_interior(x: Element, what: str = "argument"):
    lam = eigenvalues(x)
    if not lam[-1] > config.get().interior_rel * max(1.0, lam[0]):
        raise DomainError(f"{what} is not in the interior of the cone (min eigenvalue {lam[-1]:.3e})")


def apply_spectral(x: Element, f: Callable[[np.ndarray], np.ndarray]) -> Element:
    """Functional calculus: sum_i f(lambda_i) p_i.

    ``f`` is applied to the whole eigenvalue array and must return finite values.
    """
    dec = spectral_decompose(x)
    with np.errstate(all="ignore"):
        values = np.asarray(f(dec.eigenvalues), dtype=float)
    if values.shape != dec.eigenvalues.shape or not np.all(np.isfinite(values)):
        raise DomainError("function is not finite on the spectrum")
    return dec.reconstruct(values)


def exp(x: Element) -> Element:
    return apply_spectral(x, np.exp)


def log(x: Element) -> Element:
    _require_interior(x, "log argument")
    return apply_spectral(x, np.log)


def sqrt(x: Element) -> Element:
    lam = eigenvalues(x)
    if lam[-1] < -config.get().interior_rel * max(1.0, lam[0]):
        raise DomainError(f"sqrt of a non-positive element (min eigenvalue {lam[-1]:.3e})")
    return apply_spectral(x, lambda a: np.sqrt(np.clip(a, 0.0, None)))


def inverse(x: Element) -> Element:
    _require_interior(x, "inverse argument")
    return apply_spectral(x, lambda a: 1.0 / a)


def power(x: Element, s: float) -> Element:
    _require_interior(x, "power argument")
    return apply_spectral(x, lambda a: a ** s)


# -- idempotents and Peirce spaces ---------------------------------------------


@dataclass(frozen=True, eq=False)
class Idempotent:
    element: Element
    trace: float


def idempotent(p: Element | Idempotent, tol: float | None = None) -> Idempotent:
    """Validate ``p`` as an idempotent (p o p = p, integral trace)."""
    if isinstance(p, Idempotent):
        return p
    tol = config.get().tol if tol is None else tol
    defect = (square(p) - p).norm()
    tr = trace(p)
    if defect > tol * max(1.0, p.norm()) or abs(tr - round(tr)) > tol * p.algebra.rank:
        raise DomainError(f"not an idempotent (|p^2 - p| = {defect:.3e}, trace {tr:.6g})")
    if not -tol <= tr <= p.algebra.rank + tol:
        raise DomainError(f"idempotent trace {tr} out of range")
    return Idempotent(p, float(tr))


def frame_sum(frame: Sequence[Element], indices) -> Element:
    """p_I = sum of the frame members indexed by ``indices`` (0-based)."""
    alg = frame[0].algebra
    out = np.zeros(alg.shape, dtype=alg.dtype)
    for i in indices:
        out = out + frame[i].coords
    return Element(alg, out)


def peirce_project(p: Element | Idempotent, x: Element) -> Element:
    """U_p x, the projection onto the Peirce 1-space A(p)."""
    p = p.element if isinstance(p, Idempotent) else p
    return quadratic_rep(p, x)


def frame_quadratic_rep(frame: Sequence[Element], mu, y: Element) -> Element:
    """U_x y for x = sum_i mu_i p_i, assembled from the Peirce components of y.

    U_x y = sum_i mu_i^2 U_{p_i} y + sum_{i<j} mu_i mu_j 4 p_i o (p_j o y).
    No large terms cancel, so this stays accurate when the mu_i span many
    orders of magnitude, where the product formula loses the small part.
    """
    _check_same(frame[0], y)
    out = np.zeros(y.algebra.shape, dtype=y.algebra.dtype)
    for i, p in enumerate(frame):
        out = out + mu[i] ** 2 * quadratic_rep(p, y).coords
        for j in range(i + 1, len(frame)):
            out = out + 4.0 * mu[i] * mu[j] * jordan_product(p, jordan_product(frame[j], y)).coords
    return Element(y.algebra, out)


def peirce_lambda_max(p: Element | Idempotent, z: Element, tol: float | None = None) -> float:
    """Largest eigenvalue of z inside the subalgebra A(p) with unit p.

    Uses sigma_A(z - C(u - p)) = sigma_A(p)(z) u {-C} with C = 1 + |z|_u.
    """
    tol = config.get().tol if tol is None else tol
    p = idempotent(p, tol)
    pe = p.element
    _check_same(pe, z)
    if p.trace < 0.5:
        raise DomainError("Peirce space of the zero idempotent")
    scale = max(1.0, z.norm())
    off = (jordan_product(pe, z) - z).norm()
    if off > tol * scale:
        raise DomainError(f"element is not in the Peirce space A(p) (|p o z - z| = {off:.3e})")
    if round(p.trace) == pe.algebra.rank:
        return lambda_max(z)
    c = 1.0 + spectral_radius(z)
    return lambda_max(z - c * (unit(z.algebra) - pe))
