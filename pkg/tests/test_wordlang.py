"""Tests for the group word language: parser, printer, evaluator."""

import numpy as np
import pytest

from f4decomp import liegroup as lg
from f4decomp.octonion import Octonion
from f4decomp.wordlang import (
    AtomA,
    AtomD4,
    AtomG,
    AtomS,
    Power,
    Product,
    WordSyntaxError,
    eval_word,
    parse,
    print_word,
)


def test_parse_single_atom():
    w = parse("A3(0.5;1)")
    assert w == AtomA(3, 0.5, Octonion.one())


def test_parse_product_and_power():
    w = parse("G1(1+2e3)*S1^-1")
    assert isinstance(w, Product)
    first, second = w.factors
    assert isinstance(first, AtomG) and first.level == 1
    assert second == Power(AtomS(1), -1)


def test_parse_whitespace_insensitive():
    assert parse(" A3( 0.5 ; 1 ) * S2 ") == parse("A3(0.5;1)*S2")


def test_parse_nested_groups():
    w = parse("(S1*A1(0.25;e7))^-2")
    assert isinstance(w, Power)
    assert w.n == -2
    assert isinstance(w.base, Product)


def test_parse_d4():
    w = parse("D4(2,e1,e2)")
    assert w == AtomD4(2, Octonion.unit(1), Octonion.unit(2))


@pytest.mark.parametrize(
    "text,pos",
    [
        ("A3(0.5)", 6),
        ("A4(0.5;1)", 1),
        ("G3(e1)", 1),
        ("S1*", 3),
        ("S1)", 2),
        ("Q1", 0),
        ("A3(x;1)", 3),
        ("D4(1,e1)", 7),
    ],
)
def test_syntax_error_positions(text, pos):
    with pytest.raises(WordSyntaxError) as err:
        parse(text)
    assert err.value.pos == pos
    assert f"position {pos}" in str(err.value)


def test_missing_semicolon_message():
    with pytest.raises(WordSyntaxError, match="expected ';'"):
        parse("A3(0.5)")


@pytest.mark.parametrize(
    "text",
    [
        "A3(0.5;1)",
        "G1(1+2e3)*S1^-1",
        "D4(2,e1,e2)^3*(S1*A1(0.25;e7))^-2",
        "Gm2(0.5e1-0.25e4)",
        "A1(-0.125;e6)*A2(0.75;1)*S3",
    ],
)
def test_print_parse_round_trip(text):
    once = print_word(parse(text))
    twice = print_word(parse(once))
    assert once == twice
    assert np.array_equal(eval_word(parse(once)).mat, eval_word(parse(text)).mat)


def test_eval_involution():
    g = eval_word(parse("S1*S1"))
    assert np.max(np.abs(g.mat - np.eye(27))) <= 1e-12


def test_eval_power_semantics():
    g = eval_word(parse("A3(0.3;1)^2"))
    h = eval_word(parse("A3(0.6;1)"))
    assert np.max(np.abs(g.mat - h.mat)) <= 1e-12
    gi = eval_word(parse("A3(0.3;1)^-1"))
    assert np.max(np.abs(gi.mat - lg.exp_A(3, -0.3, 1.0).mat)) <= 1e-12
    assert np.array_equal(eval_word(parse("S2^0")).mat, np.eye(27))


def test_eval_left_to_right():
    g = eval_word(parse("A3(0.4;1)*G1(0.3e2)"))
    h = lg.exp_A(3, 0.4, 1.0) @ lg.exp_N(1, Octonion(0.3 * Octonion.unit(2).coeffs), Octonion.zero())
    assert np.array_equal(g.mat, h.mat)


def test_constraints_deferred_to_eval():
    # the parser accepts these; the evaluator enforces the constraints
    w = parse("A3(0.5;2)")
    with pytest.raises(ValueError, match="unit"):
        eval_word(w)
    w = parse("G2(1+e1)")
    with pytest.raises(ValueError, match="imaginary"):
        eval_word(w)
    w = parse("D4(1,e1,2e1)")
    with pytest.raises(ValueError):
        eval_word(w)


def test_no_normalization_of_directions():
    # near-unit is still rejected, the evaluator never normalizes silently
    with pytest.raises(ValueError):
        eval_word(parse("A1(0.5;1.001)"))
