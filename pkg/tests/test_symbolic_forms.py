"""Linear forms, interval signs, symbolic words and the queue."""

from fractions import Fraction as Frac

import pytest

from powerfree.symbolic import (
    LinearForm,
    ParamEnv,
    RationalInterval,
    SplitRequest,
    SymbolicMorphism,
    sym_take,
)
from powerfree.symbolic.forms import compare, form_min, is_positive, never_zero, sign_of

LF = LinearForm.of

# the first theorem family: phi(n) = 0^{a-1} 1 0^{a-b-1} (n+1), k = 2a-b
THM2 = SymbolicMorphism(
    name="family-2-2a-b",
    blocks=[(LF(1, 0, -1), 1)],
    tail=LF(1, -1, -1),
    d=1,
    k=LF(2, -1),
    interval=RationalInterval(Frac(5, 3), Frac(2), True, False),
    gcd_s=2,
)

I53_2 = RationalInterval.open(Frac(5, 3), Frac(2))


def test_min_example():
    # min(2a-2b, a-1) = 2a-2b for 5/3 < a/b < 2
    assert form_min([LF(2, -2), LF(1, 0, -1)], I53_2) == LF(2, -2)


def test_split_example():
    # a-b-1 vs -4a+7b splits at the homogeneous root 8/5
    with pytest.raises(SplitRequest) as exc:
        compare(LF(1, -1, -1), LF(-4, 7), RationalInterval.open(Frac(3, 2), Frac(5, 3)))
    assert exc.value.point == Frac(8, 5)


def test_equal_forms():
    assert compare(LF(1, -1), LF(1, -1), I53_2) == "="


def test_sign_integrality():
    # a - 2b + 1 <= 0 on (5/3, 2) because a < 2b forces a <= 2b - 1
    assert sign_of(LF(1, -2, 1), I53_2) in ("nonpos", "neg")
    # 2b - a >= 1 there, so it is positive
    assert is_positive(LF(-1, 2), I53_2)
    # 5b - 3a + 1: nonpositive inside, but +1 at the point 5/3
    s = sign_of(LF(-3, 5, 1), RationalInterval.point(Frac(5, 3)))
    assert s == "pos"
    assert sign_of(LF(-3, 5, 1), I53_2) in ("nonpos", "neg", "mixed")


def test_sign_at_points():
    pt = RationalInterval.point(Frac(7, 4))
    assert sign_of(LF(1, -1, -3), pt) == "zero"  # 7 - 4 - 3
    assert sign_of(LF(1, -1, -2), pt) == "pos"
    assert sign_of(LF(1, -2, 0), pt) == "neg"


def test_never_zero():
    # 403a - 712b != 0 on (30/17, 53/30): root 712/403 lies outside
    assert never_zero(LF(403, -712), RationalInterval.open(Frac(30, 17), Frac(53, 30)))
    # gcd trick: 2a + 2b + 1 is odd, never zero anywhere
    assert never_zero(LF(2, 2, 1), I53_2)
    # a - b - 2 = 0 needs b in (2, 3): no integer point, so it is nonzero
    assert never_zero(LF(1, -1, -2), I53_2)
    # a - b - 3 vanishes at 7/4, which lies inside
    assert not never_zero(LF(1, -1, -3), I53_2)


def test_params_endpoint_elimination():
    env = ParamEnv({"i": (LinearForm.const(0), LF(1, -1, -1))})
    # a - 1 - i >= a - 1 - (a - b - 1) = b > 0
    assert is_positive(LF(1, 0, -1) - LinearForm.var("i"), I53_2, env)
    # i - (a - b) is always negative on the declared range
    assert sign_of(LinearForm.var("i") - LF(1, -1), I53_2, env) == "neg"


def test_interval_parse_roundtrip():
    for text in ("[5/3..2)", "(3/2..5/3)", "[9/7..4/3)", "(6/5..5/4]"):
        assert str(RationalInterval.parse(text)) == text


def test_sample_pairs():
    pairs = RationalInterval.open(Frac(5, 3), Frac(2)).sample_pairs(4, coprime_to=2)
    assert len(pairs) == 4
    for a, b in pairs:
        assert Frac(5, 3) < Frac(a, b) < 2 and b % 2 == 1


def test_sym_take_examples():
    # L = 0 gives the empty word
    w = sym_take(THM2, LinearForm.const(0), I53_2)
    assert not w.blocks
    # L = k gives exactly phi(n)
    w = sym_take(THM2, LF(2, -1), I53_2)
    assert [ly for ly, _ in w.blocks] == [0, 1, 0, ("n", 0)]
    assert w.blocks[0][1] == LF(1, 0, -1)
    assert w.blocks[2][1] == LF(1, -1, -1)
    # L = a is exactly 0^{a-1} 1
    w = sym_take(THM2, LF(1, 0), I53_2)
    assert [ly for ly, _ in w.blocks] == [0, 1]
    assert w.blocks[0][1] == LF(1, 0, -1)


def test_sym_take_instantiation_matches():
    # taking L letters then instantiating equals instantiating then slicing;
    # sym_values carry the final letter values themselves
    for (a, b) in [(5, 3), (9, 5), (12, 7)]:
        w = sym_take(THM2, LF(1, 1, 2), I53_2)  # length a + b + 2 wraps the image
        flat = w.instantiate(a, b, sym_values={0: 5, 1: 10})
        img = [0] * (a - 1) + [1] + [0] * (a - b - 1)
        full = (img + [5]) + (img + [10])
        assert flat == full[: a + b + 2]


def test_symbolic_json_roundtrip():
    text = THM2.to_json()
    again = SymbolicMorphism.from_json(text)
    assert again.to_json() == text
    assert again.k == THM2.k and again.blocks == THM2.blocks
