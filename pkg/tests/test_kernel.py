"""The compiled kernel and the pure-Python fallback must agree."""

import numpy as np
import pytest

from pleatlab import _kernel_py
from pleatlab import kernel

IMPLS = [_kernel_py]
if kernel.IMPLEMENTATION == "cython":
    from pleatlab import _kernel  # noqa: F401

    IMPLS.append(_kernel)


def random_matrices(n, seed=0):
    rng = np.random.default_rng(seed)
    for _ in range(n):
        e = rng.normal(size=8)
        yield (
            complex(e[0], e[1]),
            complex(e[2], e[3]),
            complex(e[4], e[5]),
            complex(e[6], e[7]),
        )


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_mat_mul_matches_numpy(impl):
    for m in random_matrices(20, seed=1):
        for n in random_matrices(1, seed=hash(m) % 2**31):
            got = impl.mat_mul(m, n)
            want = (
                np.array(m).reshape(2, 2) @ np.array(n).reshape(2, 2)
            ).reshape(4)
            assert max(abs(g - w) for g, w in zip(got, want)) < 1e-12


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_inverse_and_det(impl):
    for m in random_matrices(20, seed=2):
        det = impl.mat_det(m)
        if abs(det) < 1e-6:
            continue
        inv = impl.mat_inv(m)
        prod = impl.mat_mul(m, inv)
        # adjugate inverse: m @ adj(m) == det * Id
        assert abs(prod[0] - det) < 1e-10 * max(1.0, abs(det))
        assert abs(prod[1]) < 1e-10 * max(1.0, abs(det))
        assert abs(prod[3] - det) < 1e-10 * max(1.0, abs(det))


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_normalize_unimodular(impl):
    for m in random_matrices(20, seed=3):
        if abs(impl.mat_det(m)) < 1e-6:
            continue
        norm, det = impl.normalize_unimodular(m)
        assert abs(impl.mat_det(norm) - 1.0) < 1e-10


@pytest.mark.parametrize("impl", IMPLS, ids=lambda m: m.IMPLEMENTATION)
def test_apply_mobius_infinity(impl):
    m = (0.0j, 1.0 + 0j, 1.0 + 0j, 0.0j)  # z -> 1/z
    assert impl.apply_mobius(m, None) == 0.0
    assert impl.apply_mobius(m, 0.0) is None
    assert abs(impl.apply_mobius(m, 2.0) - 0.5) < 1e-15


def test_implementations_agree_on_words():
    gens = {
        "a": (1.1 + 0j, 0.5 + 0.2j, 0.25 + 0j, 1.1 + 0j),
        "b": (1.3 + 0.1j, 0.2 - 0.4j, 0.15 + 0.05j, 1.3 + 0.1j),
    }
    letters = sorted(gens)
    codes = [1, 2, -1, 2, 2, -2, 1]
    mats = [gens[letter] for letter in letters]
    results = []
    for impl in IMPLS:
        results.append(impl.eval_word(codes, mats))
    for other in results[1:]:
        assert max(abs(p - q) for p, q in zip(results[0], other)) < 1e-12


def test_selector_exports():
    assert kernel.IMPLEMENTATION in ("python", "cython")
    for name in (
        "mat_mul",
        "mat_inv",
        "mat_conj",
        "mat_det",
        "mat_trace",
        "normalize_unimodular",
        "apply_mobius",
        "eval_word",
    ):
        assert hasattr(kernel, name)
