"""Property tests for the octonion arithmetic kernel."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from f4decomp.octonion import (
    Octonion,
    conj,
    format_octonion,
    inner,
    left_mul_matrix,
    mul,
    mul_batch,
    mul_vec,
    norm_sq,
    parse_octonion,
    right_mul_matrix,
)

coeff = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False, allow_infinity=False)
oct_vec = arrays(np.float64, (8,), elements=coeff)


def skew(x, y):
    return float(np.max(np.abs(x - y)))


@given(oct_vec, oct_vec)
def test_norm_composition(xv, yv):
    x, y = Octonion(xv), Octonion(yv)
    lhs = mul(x, y).norm_sq()
    rhs = x.norm_sq() * y.norm_sq()
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, rhs)


@given(oct_vec, oct_vec)
def test_alternativity(xv, yv):
    x, y = Octonion(xv), Octonion(yv)
    scale = max(1.0, x.norm_sq() * y.norm())
    assert skew(mul(x, mul(x, y)).coeffs, mul(mul(x, x), y).coeffs) <= 1e-12 * scale
    assert skew(mul(mul(y, x), x).coeffs, mul(y, mul(x, x)).coeffs) <= 1e-12 * scale


@given(oct_vec, oct_vec, oct_vec)
def test_moufang(xv, yv, zv):
    x, y, z = Octonion(xv), Octonion(yv), Octonion(zv)
    lhs = mul(mul(z, x), mul(y, z))
    rhs = mul(z, mul(mul(x, y), z))
    scale = max(1.0, x.norm() * y.norm() * z.norm_sq())
    assert skew(lhs.coeffs, rhs.coeffs) <= 1e-12 * scale


@given(oct_vec, oct_vec)
def test_conjugation_antihomomorphism(xv, yv):
    x, y = Octonion(xv), Octonion(yv)
    lhs = conj(mul(x, y))
    rhs = mul(conj(y), conj(x))
    assert skew(lhs.coeffs, rhs.coeffs) <= 1e-12 * max(1.0, x.norm() * y.norm())


@given(oct_vec)
def test_inverse(xv):
    x = Octonion(xv)
    n = x.norm_sq()
    if n < 1e-6:
        return
    inv = Octonion(x.conj().coeffs / n)
    assert skew(mul(x, inv).coeffs, Octonion.one().coeffs) <= 1e-12 * max(1.0, 1.0 / n)
    assert skew(mul(inv, x).coeffs, Octonion.one().coeffs) <= 1e-12 * max(1.0, 1.0 / n)


@given(oct_vec, oct_vec)
def test_mul_matrices(xv, yv):
    # same bilinear map, different summation order
    bound = 1e-12 * max(1.0, float(np.linalg.norm(xv) * np.linalg.norm(yv)))
    assert skew(left_mul_matrix(xv) @ yv, mul_vec(xv, yv)) <= bound
    assert skew(right_mul_matrix(yv) @ xv, mul_vec(xv, yv)) <= bound


@given(oct_vec)
def test_format_parse_round_trip(xv):
    x = Octonion(xv)
    back = parse_octonion(format_octonion(x))
    assert np.array_equal(back.coeffs, x.coeffs)


def test_basis_relations():
    one = Octonion.one()
    for i in range(1, 8):
        ei = Octonion.unit(i)
        assert np.array_equal(mul(ei, ei).coeffs, -one.coeffs)
        for j in range(1, 8):
            if i == j:
                continue
            assert np.array_equal(
                mul(ei, Octonion.unit(j)).coeffs, -mul(Octonion.unit(j), ei).coeffs
            )


def test_real_part_central():
    rng = np.random.default_rng(7)
    for _ in range(20):
        x = Octonion(rng.standard_normal(8))
        s = Octonion.from_scalar(1.7)
        assert skew(mul(s, x).coeffs, mul(x, s).coeffs) == 0.0


@settings(max_examples=25)
@given(arrays(np.float64, (12, 8), elements=coeff), arrays(np.float64, (12, 8), elements=coeff))
def test_mul_batch_matches_loop(xs, ys):
    got = mul_batch(xs, ys)
    want = np.stack([mul_vec(a, b) for a, b in zip(xs, ys)])
    assert np.array_equal(got, want)


def test_inner_norm_consistency(rng):
    for _ in range(50):
        x = Octonion(rng.standard_normal(8))
        assert abs(inner(x, x) - norm_sq(x)) <= 1e-12 * max(1.0, norm_sq(x))


@pytest.mark.parametrize(
    "text",
    ["", "1+", "2f3", "1+e9", "e1e2", "3.2.1", "+", "1 + + e2"],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_octonion(text)


def test_parse_examples():
    assert np.array_equal(parse_octonion("1").coeffs, Octonion.one().coeffs)
    x = parse_octonion("0.5e1-2e7")
    assert x.coeffs[1] == 0.5 and x.coeffs[7] == -2.0 and x.coeffs[0] == 0.0
    # 'e' always starts a basis token, never an exponent
    y = parse_octonion("0.1e1")
    assert y.coeffs[1] == 0.1
