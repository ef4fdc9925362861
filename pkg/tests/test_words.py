"""Word core: power detection, the greedy generator, ordering."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powerfree import (
    AvoidMode,
    Fraction,
    Word,
    compare_lex,
    find_power_factor,
    first_occurrences,
    generate_lexleast,
    is_fractional_power,
    power_suffix,
)

from oracles import obf_find_power_factor, obf_generate, obf_is_power

# Prefixes printed in the source material, byte for byte.
GOLDEN = {
    (2, 1, AvoidMode.EXACT): "01020103010201040102010301020105",
    (3, 2, AvoidMode.EXACT): "001102100112001103100113001102100114001103100112",
    (5, 3, AvoidMode.EXACT): "0000101000010100001010000101000010200001010000102",
    (5, 2, AvoidMode.EXACT): "00001000010000100001000020000100001000010000100002",
    (3, 2, AvoidMode.AT_LEAST): "0120310213012041021401203102150120410213",
    (2, 1, AvoidMode.GREATER): "001001100100200100110010021001002001001100",
}


def test_golden_prefixes():
    for (a, b, mode), digits in GOLDEN.items():
        w = generate_lexleast(Fraction(a, b), len(digits), mode)
        assert w.digits() == digits, f"w_{a}/{b} mode {mode}"


def test_fraction_validation():
    assert Fraction.parse("7/4") == Fraction(7, 4)
    with pytest.raises(ValueError):
        Fraction(4, 2)
    with pytest.raises(ValueError):
        Fraction(3, 4)  # a/b <= 1: no avoiding word exists
    with pytest.raises(ValueError):
        Fraction(1, 1)


def test_is_fractional_power_examples():
    assert is_fractional_power("011101", Fraction(3, 2))
    assert is_fractional_power("000", Fraction(3, 1))
    assert not is_fractional_power("001102", Fraction(3, 2))
    # not a positive multiple of a
    assert not is_fractional_power("0111", Fraction(3, 2))
    assert not is_fractional_power("", Fraction(3, 2))


def test_find_power_factor_examples():
    assert find_power_factor("0000011", Fraction(3, 2)) == (0, 1)
    assert find_power_factor("001102100112", Fraction(3, 2)) is None
    assert find_power_factor("00100", Fraction(5, 3)) == (0, 1)


def test_power_suffix_examples():
    assert power_suffix("00000", Fraction(5, 3)) == 1
    assert power_suffix("0000101", Fraction(5, 3)) is None
    # frozen from the brute-force oracle
    assert power_suffix("0000110", Fraction(5, 3)) is None


def test_power_suffix_modes():
    # "00" ends in a square: forbidden at >=3/2, allowed at exactly 3/2
    assert power_suffix("00", Fraction(3, 2), AvoidMode.AT_LEAST) == 1
    assert power_suffix("00", Fraction(3, 2), AvoidMode.EXACT) is None
    # "010010" ends in (010)^2 = 2-power; > 2 avoids only above 2
    assert power_suffix("010010", Fraction(2, 1), AvoidMode.GREATER) is None
    assert power_suffix("0100100", Fraction(2, 1), AvoidMode.GREATER) == 4  # 0^... overlap 0100100?
    assert power_suffix("00", Fraction(2, 1), AvoidMode.GREATER) is None
    # shortest forbidden suffix of "000" is the overlap "000" itself, L=3, m=ceil(3/2)
    assert power_suffix("000", Fraction(2, 1), AvoidMode.GREATER) == 2


def test_compare_lex():
    assert compare_lex("01", "001") == 1
    assert compare_lex("0", "0") == 0
    w32 = generate_lexleast(Fraction(3, 2), 100)
    w2 = generate_lexleast(Fraction(2, 1), 100)
    assert compare_lex(w32, w2) == -1
    # prefix convention
    assert compare_lex("01", "0102") == 0


def test_first_occurrences():
    assert first_occurrences("0102") == {0: 0, 1: 1, 2: 3}
    w2 = generate_lexleast(Fraction(2, 1), 32)
    assert first_occurrences(w2) == {0: 0, 1: 1, 2: 3, 3: 7, 4: 15, 5: 31}


def test_growth_gaps():
    # consecutive first occurrences satisfy i_n - i_{n-1} >= n
    for a, b in [(2, 1), (3, 2), (5, 3)]:
        occ = first_occurrences(generate_lexleast(Fraction(a, b), 3000))
        values = sorted(occ)
        assert values == list(range(len(values)))
        for n in range(1, len(values)):
            assert occ[n] - occ[n - 1] >= n, (a, b, n)


def test_word_text_roundtrip():
    w = Word([0, 3, -1, 1, -2])
    assert w.text() == "0 3 0' 1 1'"
    assert Word.parse(w.text()) == w
    assert w.coded().text() == "0 3 0 1 1"


def test_prefix_law():
    # length-a prefix is 0^(a-1) 1; for b > 1 the next a-b letters are 0^(a-b-1) 1
    for a, b in [(3, 2), (5, 3), (7, 4), (8, 5), (5, 4), (2, 1), (4, 1)]:
        w = generate_lexleast(Fraction(a, b), a + max(a - b, 0))
        assert w.digits()[:a] == "0" * (a - 1) + "1", (a, b)
        if b > 1:
            assert w.digits()[a : 2 * a - b] == "0" * (a - b - 1) + "1", (a, b)


def test_mode_law_integer():
    for a in (2, 3, 5):
        exact = generate_lexleast(Fraction(a, 1), 400, AvoidMode.EXACT)
        atleast = generate_lexleast(Fraction(a, 1), 400, AvoidMode.AT_LEAST)
        assert exact == atleast


def test_mode_law_fractional():
    # for b >= 2 the exact and at-least words differ within the first a letters
    for a, b in [(3, 2), (5, 3), (7, 4)]:
        exact = generate_lexleast(Fraction(a, b), a)
        atleast = generate_lexleast(Fraction(a, b), a, AvoidMode.AT_LEAST)
        assert exact != atleast


def test_large_rationals_collapse():
    for a, b in [(5, 2), (7, 3), (9, 4)]:
        assert generate_lexleast(Fraction(a, b), 2000) == generate_lexleast(Fraction(a, 1), 2000)


def test_rejects_nonsense_exponent():
    with pytest.raises(ValueError):
        generate_lexleast(Fraction(3, 2), -1)


@pytest.mark.parametrize("a,b", [(2, 1), (3, 2), (5, 3), (7, 4), (5, 4), (7, 5), (3, 1)])
def test_generator_matches_reference(a, b):
    ref = obf_generate(a, b, "exact", 120)
    assert list(generate_lexleast(Fraction(a, b), 120).letters) == ref


@pytest.mark.parametrize("a,b,mode", [(3, 2, "geq"), (2, 1, "gt"), (4, 3, "geq"), (3, 2, "gt")])
def test_generator_matches_reference_modes(a, b, mode):
    ref = obf_generate(a, b, mode, 90)
    am = AvoidMode.AT_LEAST if mode == "geq" else AvoidMode.GREATER
    assert list(generate_lexleast(Fraction(a, b), 90, am).letters) == ref


@given(st.integers(2, 12), st.integers(1, 11), st.integers(0, 160))
@settings(max_examples=40, deadline=None)
def test_is_power_matches_oracle(a, b, seed):
    import math
    import random

    if math.gcd(a, b) != 1 or a <= b:
        return
    rng = random.Random(seed)
    n = rng.randrange(0, 3 * a + 1)
    w = [rng.randrange(0, 3) for _ in range(n)]
    assert is_fractional_power(w, Fraction(a, b)) == obf_is_power(w, a, b)


@given(st.integers(2, 9), st.integers(1, 8), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_find_power_factor_matches_oracle(a, b, seed):
    import math
    import random

    if math.gcd(a, b) != 1 or a <= b:
        return
    rng = random.Random(seed)
    w = [rng.randrange(0, 2) for _ in range(rng.randrange(0, 30))]
    assert find_power_factor(w, Fraction(a, b)) == obf_find_power_factor(w, a, b)


def test_generated_prefixes_are_power_free():
    # independent full-factor scan, not power_suffix
    for a, b in [(3, 2), (5, 3), (2, 1), (7, 4)]:
        w = list(generate_lexleast(Fraction(a, b), 400).letters)
        assert obf_find_power_factor(w, a, b) is None


def test_lexicographic_leastness_by_decrement():
    # replacing any nonzero letter by a smaller one creates a forbidden suffix
    from oracles import obf_suffix_forbidden

    for a, b in [(3, 2), (5, 3), (2, 1)]:
        w = list(generate_lexleast(Fraction(a, b), 160).letters)
        for i, letter in enumerate(w):
            for c in range(letter):
                assert obf_suffix_forbidden(w[:i], a, b, "exact", c), (a, b, i, c)


def test_xyx_characterization():
    # for 1 < a/b < 2 an a/b-power is xyx with |x| = m(a-b), |y| = m(2b-a)
    import random

    rng = random.Random(7)
    for a, b in [(3, 2), (5, 3), (8, 5)]:
        for _ in range(200):
            m = rng.randrange(1, 4)
            w = [rng.randrange(0, 2) for _ in range(m * a)]
            xyx = w[: m * (a - b)] == w[m * b :]
            assert is_fractional_power(w, Fraction(a, b)) == xyx
