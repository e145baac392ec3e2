"""Random test objects.

Random elements have coordinates uniform in [-1, 1]; interior points are
exponentials of random elements, so they are interior by construction.

Boundary data for detour checks is built in canonical coordinates (a frame
whose members have exact zeros outside their blocks) and can then be moved
by a random automorphism.  The limit formulas amplify off-support roundoff by
e^{2t}, so they are only evaluated on the canonical copies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra as alg
from .algebra import AlgebraDescriptor, Element
from .thompson import BoundaryParams, normalized


def random_element(rng: np.random.Generator, a: AlgebraDescriptor, scale: float = 1.0) -> Element:
    if a.kind == "sym":
        c = rng.uniform(-1, 1, size=(a.n, a.n))
    elif a.kind == "herm":
        c = rng.uniform(-1, 1, size=(a.n, a.n)) + 1j * rng.uniform(-1, 1, size=(a.n, a.n))
    else:
        c = rng.uniform(-1, 1, size=a.n)
    return Element(a, scale * c)


def random_interior(rng, a: AlgebraDescriptor, scale: float = 1.0) -> Element:
    return alg.exp(random_element(rng, a, scale))


def random_positive(rng, a: AlgebraDescriptor) -> Element:
    """A point of the closed cone; boundary points occur with positive probability."""
    dec = alg.spectral_decompose(random_element(rng, a))
    lam = np.exp(rng.uniform(-1, 1, size=a.rank))
    lam[rng.random(a.rank) < 0.3] = 0.0
    return dec.reconstruct(lam)


def random_invertible(rng, a: AlgebraDescriptor) -> Element:
    """Invertible element with eigenvalues of either sign, |lambda| in [e^-1, e]."""
    dec = alg.spectral_decompose(random_element(rng, a))
    signs = rng.choice([-1.0, 1.0], size=a.rank)
    return dec.reconstruct(signs * np.exp(rng.uniform(-1, 1, size=a.rank)))


def random_frame(rng, a: AlgebraDescriptor) -> tuple:
    return alg.spectral_decompose(random_element(rng, a)).frame


def canonical_frame(a: AlgebraDescriptor) -> tuple:
    if a.is_matrix:
        frame = []
        for k in range(a.n):
            c = np.zeros(a.shape, dtype=a.dtype)
            c[k, k] = 1.0
            frame.append(Element(a, c))
        return tuple(frame)
    e = np.zeros(a.n)
    e[0], e[1] = 0.5, 0.5
    f = e.copy()
    f[1] = -0.5
    return Element(a, e), Element(a, f)


def random_span_element(rng, frame, scale: float = 1.0) -> Element:
    c = rng.uniform(-scale, scale, size=len(frame))
    return Element(frame[0].algebra, sum(ci * p.coords for ci, p in zip(c, frame)))


def random_traceless(rng, a: AlgebraDescriptor, scale: float = 1.0) -> Element:
    x = random_element(rng, a, scale)
    return x - (alg.trace(x) / a.rank) * alg.unit(a)


# -- automorphisms ---------------------------------------------------------------


def _haar(rng, n: int, complex_: bool) -> np.ndarray:
    g = rng.standard_normal((n, n))
    if complex_:
        g = g + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


@dataclass(frozen=True, eq=False)
class Automorphism:
    """A Jordan automorphism: unitary conjugation, or a rotation of the spin vector part."""

    algebra: AlgebraDescriptor
    matrix: np.ndarray

    def __call__(self, x: Element) -> Element:
        if self.algebra.is_matrix:
            q = self.matrix
            return Element(self.algebra, q @ x.coords @ q.conj().T)
        return Element(self.algebra, np.concatenate([[x.coords[0]], self.matrix @ x.coords[1:]]))

    def params(self, p: BoundaryParams) -> BoundaryParams:
        return BoundaryParams(tuple(self(f) for f in p.frame), p.I, p.J, p.alpha, p.mode)


def random_automorphism(rng, a: AlgebraDescriptor) -> Automorphism:
    if a.is_matrix:
        return Automorphism(a, _haar(rng, a.n, a.kind == "herm"))
    return Automorphism(a, _haar(rng, a.n - 1, False))


# -- boundary parameters -----------------------------------------------------------


def _split(rng, r: int, mode: str):
    """Random disjoint I, J (1-based) valid for ``mode``."""
    while True:
        labels = rng.integers(0, 3, size=r)  # 0 -> I, 1 -> J, 2 -> neither
        I = [k + 1 for k in range(r) if labels[k] == 0]
        J = [k + 1 for k in range(r) if labels[k] == 1]
        if mode == "thompson" and (I or J):
            return I, J
        if mode == "hilbert" and I and J:
            return I, J


def random_params(rng, a: AlgebraDescriptor, mode: str = "thompson", frame=None, alpha_max: float = 2.0) -> BoundaryParams:
    frame = random_frame(rng, a) if frame is None else tuple(frame)
    I, J = _split(rng, a.rank, mode)
    alpha = {k: float(rng.uniform(0, alpha_max)) for k in I + J}
    return normalized(frame, I, J, alpha, mode)


def _block_frame(rng, a: AlgebraDescriptor, blocks) -> tuple:
    """Frame with exact zeros outside ``blocks`` (lists of 0-based indices)."""
    if not a.is_matrix:
        # rank 2: every block is a single member of the canonical frame
        return canonical_frame(a)
    frame = [None] * a.n
    for block in blocks:
        m = len(block)
        q = _haar(rng, m, a.kind == "herm") if m > 1 else np.ones((1, 1), dtype=a.dtype)
        for col, k in enumerate(block):
            v = np.zeros(a.n, dtype=a.dtype)
            v[block] = q[:, col]
            frame[k] = Element(a, np.outer(v, v.conj()))
    return tuple(frame)


@dataclass(frozen=True, eq=False)
class PartPair:
    """Two boundary presentations in canonical coordinates plus a rotated copy."""

    h: BoundaryParams
    hp: BoundaryParams
    h_rot: BoundaryParams
    hp_rot: BoundaryParams


def _rotated(rng, a, h, hp) -> PartPair:
    phi = random_automorphism(rng, a)
    return PartPair(h, hp, phi.params(h), phi.params(hp))


def _labels(rng, r: int, mode: str):
    I, J = _split(rng, r, mode)
    K = [k for k in range(1, r + 1) if k not in I and k not in J]
    return I, J, K


def same_part_family(rng, a: AlgebraDescriptor, mode: str = "thompson", count: int = 2, alpha_max: float = 2.0) -> list:
    """``count`` presentations sharing p_I and p_J, with independent frames inside the blocks."""
    I, J, K = _labels(rng, a.rank, mode)
    blocks = [[k - 1 for k in S] for S in (I, J, K) if S]
    out = []
    for _ in range(count):
        frame = _block_frame(rng, a, blocks)
        alpha = {k: float(rng.uniform(0, alpha_max)) for k in I + J}
        out.append(normalized(frame, I, J, alpha, mode))
    return out


def same_part_pair(rng, a: AlgebraDescriptor, mode: str = "thompson", alpha_max: float = 2.0) -> PartPair:
    """h, h' with p_I = q_I' and p_J = q_J'."""
    return _rotated(rng, a, *same_part_family(rng, a, mode, 2, alpha_max))


def mismatch_pair(rng, a: AlgebraDescriptor, mode: str = "thompson", alpha_max: float = 2.0) -> PartPair:
    """h, h' on a common frame with (I, J) != (I', J'), hence in different parts."""
    frame = canonical_frame(a)
    I, J = _split(rng, a.rank, mode)
    while True:
        Ip, Jp = _split(rng, a.rank, mode)
        if (set(Ip), set(Jp)) != (set(I), set(J)):
            break
    h = normalized(frame, I, J, {k: float(rng.uniform(0, alpha_max)) for k in I + J}, mode)
    hp = normalized(frame, Ip, Jp, {k: float(rng.uniform(0, alpha_max)) for k in Ip + Jp}, mode)
    return _rotated(rng, a, h, hp)


def repeated_eigenvalue_presentations(rng, a: AlgebraDescriptor, mode: str = "thompson"):
    """Two presentations of one horofunction on frames that differ inside eigenspaces.

    The labels I, J and the exponents are constant on blocks of a partition of
    the frame indices; the second frame rotates the first within each block.
    Returns (params_1, params_2).
    """
    r = a.rank
    if not a.is_matrix:
        # rank 2: a block of size 2 is the whole algebra, so the pair is (c u, 0)
        if mode == "hilbert":
            raise ValueError("spin factors admit no hilbert-mode block of size 2")
        alpha = float(rng.uniform(0, 2))
        frames = [random_frame(rng, a), random_frame(rng, a)]
        return tuple(normalized(f, [1, 2], [], {1: alpha, 2: alpha}, mode) for f in frames)
    while True:
        cuts = sorted(rng.choice(np.arange(1, r), size=rng.integers(0, r), replace=False).tolist())
        blocks = [list(range(s, e)) for s, e in zip([0] + cuts, cuts + [r])]
        if any(len(b) > 1 for b in blocks):
            labels = rng.integers(0, 3, size=len(blocks))
            if mode == "hilbert":
                if len(blocks) < 2:
                    continue
                labels[0], labels[1] = 0, 1
            if mode == "thompson" and np.all(labels == 2):
                continue
            break
    I, J, alpha = [], [], {}
    for b, lab in zip(blocks, labels):
        val = float(rng.uniform(0, 2))
        for k in b:
            if lab == 0:
                I.append(k + 1)
            elif lab == 1:
                J.append(k + 1)
            if lab < 2:
                alpha[k + 1] = val
    base = random_automorphism(rng, a)
    f1 = tuple(base(p) for p in _block_frame(rng, a, blocks))
    f2 = tuple(base(p) for p in _block_frame(rng, a, blocks))
    return normalized(f1, I, J, alpha, mode), normalized(f2, I, J, dict(alpha), mode)


def default_algebras(kinds=("sym", "herm", "spin")) -> list:
    out = []
    for kind in kinds:
        sizes = (3, 6, 10) if kind == "spin" else (2, 3, 5, 8)
        out.extend(AlgebraDescriptor(kind, n) for n in sizes)
    return out
