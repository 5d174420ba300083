"""Shared fixtures: the test corpus of finite rings.

The corpus is every Z/n for 2 <= n <= 30 plus the four structured rings
(2x2 matrices over F2 and F3, upper-triangular 2x2 over F2, and the
product Z/2 x Z/4).  `small_corpus` restricts to |R| <= 64 where the
exhaustive suites run; larger rings get seeded sampling.
"""

import os
import pathlib
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__)))

from exchange_kit import MatrixRing, ProductRing, ZMod, triangular_ring


def build_corpus():
    rings = [(f"zmod{n}", ZMod(n)) for n in range(2, 31)]
    rings.append(("m2f2", MatrixRing(ZMod(2), 2)))
    rings.append(("m2f3", MatrixRing(ZMod(3), 2)))
    rings.append(("t2f2", triangular_ring(2)))
    rings.append(("z2xz4", ProductRing([ZMod(2), ZMod(4)])))
    return rings


_CORPUS = build_corpus()


@pytest.fixture(scope="session")
def corpus():
    return _CORPUS


@pytest.fixture(scope="session")
def small_corpus():
    return [(name, ring) for name, ring in _CORPUS if ring.order <= 64]


@pytest.fixture(params=[name for name, _ in _CORPUS])
def corpus_ring(request):
    by_name = dict(_CORPUS)
    return request.param, by_name[request.param]


@pytest.fixture(scope="session")
def data_dir():
    return pathlib.Path(__file__).parent.parent / "data"
