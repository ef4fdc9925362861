"""Morphism engine: expansion, recurrence, validation, serialization."""

import numpy as np
import pytest

from powerfree import Fraction, Word, generate_lexleast
from powerfree.morphisms import (
    PRIME0,
    PRIME1,
    ExplicitMorphism,
    NotProlongable,
    UnknownLetter,
)

W2 = ExplicitMorphism(k=2, u=[0], d=1)
W53 = ExplicitMorphism(k=7, u=[0, 0, 0, 0, 1, 0], d=1)
W95 = ExplicitMorphism(k=13, u=[0] * 8 + [1] + [0] * 3, d=1)

# the 6-uniform morphism whose coded fixed point is the 3/2 word
W32 = ExplicitMorphism(
    k=6,
    u=[PRIME1, 0, PRIME0, 1, PRIME1],
    d=2,
    primed_overrides={
        PRIME0: [PRIME0, 0, PRIME1, 1, PRIME0, 2],
        PRIME1: [PRIME0, 0, PRIME1, 1, PRIME0, 3],
    },
)


def test_expand_examples():
    assert W2.expand_fixed_point(8).digits() == "01020103"
    assert W53.expand_fixed_point(14).digits() == "00001010000101"
    assert W32.expand_fixed_point(12).digits() == "001102100112"


def test_expand_prefix_property():
    for m in (W2, W53, W32):
        long = m.expand_fixed_point(500)
        for n in (0, 1, 7, 100, 499):
            assert m.expand_fixed_point(n) == long[:n]


def test_apply():
    assert W2.apply([0, 1]).digits() == "0102"
    assert W53.apply([0]).digits() == "0000101"
    assert W2.apply([]).digits() == ""
    w1, w2 = [0, 2, 1], [4, 0]
    assert W53.apply(w1 + w2) == Word(
        np.concatenate([W53.apply(w1).letters, W53.apply(w2).letters])
    )


def test_apply_unknown_letter():
    with pytest.raises(UnknownLetter):
        W2.apply([PRIME1])


def test_letter_at_recurrence():
    assert W2.letter_at(15) == 4
    assert W2.letter_at(0) == 0
    w = W53.expand_fixed_point(3000)
    assert [W53.letter_at(i) for i in range(3000)] == list(w.letters)
    # override morphisms use the expansion fallback
    w32 = W32.expand_fixed_point(300)
    assert [W32.letter_at(i) for i in range(300)] == list(w32.letters)


def test_letter_at_with_transient():
    m = ExplicitMorphism(k=3, u=[0, 1], d=1, transient=[PRIME0, 0, 1, 1])
    w = m.expand_fixed_point(2000)
    assert [m.letter_at(i) for i in range(2000)] == list(w.letters)
    # the transient recurrence directly: w(k i + |v| + r)
    v_len, k = 4, 3
    for i in range(30):
        for r in range(k - 1):
            assert m.letter_at(k * i + v_len + r) == m.u[r]
        assert m.letter_at(k * i + v_len + k - 1) == m.letter_at(i) + 1


def test_letter_at_with_shift_exceptions():
    m = ExplicitMorphism(k=4, u=[0, 0, 1], d=2, shift_exceptions={0: 1})
    w = m.expand_fixed_point(1500)
    assert [m.letter_at(i) for i in range(1500)] == list(w.letters)


def test_not_prolongable():
    bad = ExplicitMorphism(k=2, u=[1], d=1)
    with pytest.raises(NotProlongable):
        bad.expand_fixed_point(5)


def test_agrees_with_generator():
    for m, (a, b) in [(W53, (5, 3)), (W95, (9, 5))]:
        assert m.expand_fixed_point(20000) == generate_lexleast(Fraction(a, b), 20000)
    assert W2.expand_fixed_point(20000) == generate_lexleast(Fraction(2, 1), 20000)
    assert W32.expand_fixed_point(20000) == generate_lexleast(Fraction(3, 2), 20000)


def test_validate_clean():
    checks = {c["check"]: c["passed"] for c in W53.validate()}
    assert all(checks.values())


def test_validate_one_position():
    m = ExplicitMorphism(k=3, u=[0, 0], d=1)
    checks = {c["check"]: c["passed"] for c in m.validate()}
    assert checks["one-position-difference"]


def test_validate_detects_power_image():
    # phi(0) = 0101 is a square
    m = ExplicitMorphism(k=4, u=[0, 1, 0], d=1)
    checks = {c["check"]: c for c in m.validate()}
    assert not checks["image-not-a-power"]["passed"]
    assert "2-power" in checks["image-not-a-power"]["detail"]


def test_validate_power_image_with_exceptions():
    # final letters are 1 or n+2: phi(n) = 010X is a square only for X = 1
    m = ExplicitMorphism(k=4, u=[0, 1, 0], d=2, shift_exceptions={0: 1})
    checks = {c["check"]: c for c in m.validate()}
    assert not checks["image-not-a-power"]["passed"]
    assert "phi(0)" in checks["image-not-a-power"]["detail"]
    # without the exception no final letter can be 1
    m2 = ExplicitMorphism(k=4, u=[0, 1, 0], d=2)
    checks2 = {c["check"]: c for c in m2.validate()}
    assert checks2["image-not-a-power"]["passed"]


def test_json_roundtrip():
    for m in (W2, W53, W32, ExplicitMorphism(k=3, u=[0, 1], d=1, transient=[PRIME0, 0, 1, 1])):
        text = m.to_json()
        again = ExplicitMorphism.from_json(text)
        assert again.to_json() == text
        assert np.array_equal(again.u, m.u)
        assert again.k == m.k and again.d == m.d
        assert again.expand_fixed_point(50) == m.expand_fixed_point(50)


def test_transient_validation():
    with pytest.raises(ValueError):
        ExplicitMorphism(k=3, u=[0, 1], d=1, transient=[0, 1])  # missing 0'
    with pytest.raises(ValueError):
        ExplicitMorphism(k=3, u=[0, 1], d=1, transient=[PRIME0, PRIME0])
