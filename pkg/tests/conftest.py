"""Shared fixtures and samplers for the test suite."""

import numpy as np
import pytest

from f4decomp import liegroup as lg
from f4decomp.octonion import Octonion, format_octonion
from f4decomp.wordlang import eval_word, parse

SEED = 20260815


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


def random_oct(rng, scale=1.0):
    return Octonion(scale * rng.standard_normal(8))


def random_imag(rng, scale=1.0):
    v = rng.standard_normal(8)
    v[0] = 0.0
    return Octonion(scale * v)


def random_unit(rng):
    v = rng.standard_normal(8)
    return Octonion(v / np.linalg.norm(v))


def random_word_text(rng, max_len=8, scale=0.15):
    """A random group word string, calibrated so products of up to eight
    factors stay well conditioned for the factorization round trips."""
    length = int(rng.integers(1, max_len + 1))
    atoms = []
    for _ in range(length):
        kind = int(rng.integers(0, 7))
        if kind == 0:
            i = int(rng.integers(1, 4))
            t = scale * rng.standard_normal()
            atoms.append(f"A{i}({t!r};{format_octonion(random_unit(rng))})")
        elif kind == 1:
            atoms.append(f"G1({format_octonion(random_oct(rng, scale))})")
        elif kind == 2:
            atoms.append(f"G2({format_octonion(random_imag(rng, scale))})")
        elif kind == 3:
            atoms.append(f"Gm1({format_octonion(random_oct(rng, scale))})")
        elif kind == 4:
            atoms.append(f"Gm2({format_octonion(random_imag(rng, scale))})")
        elif kind == 5:
            atoms.append(f"S{int(rng.integers(1, 4))}")
        else:
            j = int(rng.integers(1, 4))
            u = random_oct(rng)
            w = random_oct(rng)
            v = Octonion(w.coeffs * (u.norm() / w.norm()))
            atoms.append(f"D4({j},{format_octonion(u)},{format_octonion(v)})")
    return "*".join(atoms)


def random_group(rng, max_len=8, scale=0.15):
    return eval_word(parse(random_word_text(rng, max_len, scale)))


def random_m(rng, scale=0.4):
    """Random element of the joint stabilizer of the three diagonal
    idempotents and the real slot-3 unit."""
    basis = lg.m_basis()
    coeff = scale * rng.standard_normal(len(basis))
    mat = sum(c * b.mat for c, b in zip(coeff, basis))
    return lg.expm(lg.AlgebraElement(mat, check=False))


def random_keps(rng):
    """Random element of the stabilizer of the second idempotent."""
    g = lg.exp_A(2, 0.3 * rng.standard_normal(), random_unit(rng))
    u = random_oct(rng)
    w = random_oct(rng)
    v = Octonion(w.coeffs * (u.norm() / w.norm()))
    return g @ lg.d4_rotate(int(rng.integers(1, 4)), u, v)
