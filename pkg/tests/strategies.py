"""Hypothesis strategies for algebra elements."""

import numpy as np
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conetool import algebra as alg
from conetool.algebra import AlgebraDescriptor, Element

SMALL_ALGEBRAS = [AlgebraDescriptor("sym", n) for n in (1, 2, 3, 4)] + \
    [AlgebraDescriptor("herm", n) for n in (2, 3)] + [AlgebraDescriptor("spin", d) for d in (2, 3, 5)]

algebras = st.sampled_from(SMALL_ALGEBRAS)


def _coords(a: AlgebraDescriptor, scale: float):
    floats = st.floats(-scale, scale, allow_nan=False, allow_subnormal=False)
    real = arrays(np.float64, a.shape, elements=floats)
    if a.kind != "herm":
        return real
    return st.tuples(real, arrays(np.float64, a.shape, elements=floats)).map(lambda ri: ri[0] + 1j * ri[1])


def elements_of(a: AlgebraDescriptor, scale: float = 1.0):
    return _coords(a, scale).map(lambda c: Element(a, c))


def interior_of(a: AlgebraDescriptor, scale: float = 1.0):
    return elements_of(a, scale).map(alg.exp)


@st.composite
def element_tuples(draw, count=2, scale=1.0, interior=False, kinds=None):
    pool = SMALL_ALGEBRAS if kinds is None else [a for a in SMALL_ALGEBRAS if a.kind in kinds]
    a = draw(st.sampled_from(pool))
    make = interior_of if interior else elements_of
    return tuple(draw(make(a, scale)) for _ in range(count))


seeds = st.integers(0, 2**32 - 1)
