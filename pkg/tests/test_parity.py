import itertools
import random

import pytest

from boxwords.parity import (
    PINWHEEL_3,
    char_sum_box,
    char_sum_cube,
    check_lemma1,
    handcrafted_tilings,
    lemma1_split,
    minimal_members,
    odd_witness,
    random_tiling,
    verify_tiling,
)
from boxwords.words import Word, WordError, clash_positions

from conftest import box_points, brute_char_sum


def strs(ws):
    return {str(w) for w in ws}


def test_char_sum_box_examples():
    assert brute_char_sum({1, 2}, "00*") == 2
    assert char_sum_box({1, 2}, "00*") == 2
    assert char_sum_box({1}, "**") == 0
    assert char_sum_box(set(), "0**") == 4


def test_char_sum_cube_examples():
    assert char_sum_cube({1}, 3) == 0
    assert char_sum_cube(set(), 3) == 8
    assert brute_char_sum({1, 2, 3}, "***") == 0
    assert char_sum_cube({1, 2, 3}, 3) == 0


def test_char_sum_out_of_range():
    with pytest.raises(WordError):
        char_sum_box({4}, "00*")
    with pytest.raises(WordError):
        char_sum_cube({0}, 3)


def test_char_sum_box_random_against_brute():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randint(1, 9)
        w = "".join(rng.choice("01*") for _ in range(n))
        s = {i for i in range(1, n + 1) if rng.random() < 0.5}
        assert char_sum_box(s, w) == brute_char_sum(s, w)


def test_char_sum_on_own_prop_uses_cube_dimension():
    # sum of chi_{prop A} over A is (-1)^s 2^(n - |prop A|), n the cube dimension
    for w in ["1*0**", "0**", "11***0*"]:
        a = Word.parse(w)
        s = str(a).count("1")
        support = {i + 1 for i, ch in enumerate(w) if ch != "*"}
        assert char_sum_box(support, w) == (-1) ** s * 2 ** (a.n - len(support))


@pytest.mark.parametrize(
    "tiling, ok, deficit",
    [
        (["0*", "1*"], True, 0),
        (["0*", "11"], False, 1),
        (["00", "01", "1*"], True, 0),
    ],
)
def test_verify_tiling_examples(tiling, ok, deficit):
    rep = verify_tiling(tiling)
    assert rep.ok == ok
    assert rep.deficit == deficit
    covered = set().union(*(box_points(w) for w in tiling))
    assert (len(covered) == 4 and sum(len(box_points(w)) for w in tiling) == 4) == ok


def test_verify_tiling_overlap_and_empty():
    rep = verify_tiling(["0*", "*1", "10"])
    assert not rep.ok and strs(rep.overlap) == {"0*", "*1"}
    rep = verify_tiling([], n=3)
    assert not rep.ok and rep.deficit == 8
    with pytest.raises(WordError):
        verify_tiling([])


def test_verify_tiling_pairwise_path_for_large_n():
    n = 30
    t = [Word.parse("0" + "*" * (n - 1)), Word.parse("1" + "*" * (n - 1))]
    assert verify_tiling(t).ok
    t = [Word.parse("0" + "*" * (n - 1)), Word.parse("*" * n)]
    rep = verify_tiling(t)
    assert not rep.ok and rep.overlap is not None


def test_minimal_members_examples():
    assert strs(minimal_members(["0*", "1*"])) == {"0*", "1*"}
    assert strs(minimal_members(["00", "01", "1*"])) == {"00", "01"}
    assert strs(minimal_members(["***"])) == {"***"}


def test_lemma1_split_examples():
    s = lemma1_split(["0*", "1*"], "0*")
    assert strs(s.even_side) == {"0*"} and strs(s.odd_side) == {"1*"}
    singles = ["00", "01", "10", "11"]
    s = lemma1_split(singles, "00")
    assert strs(s.even_side) == {"00", "11"} and strs(s.odd_side) == {"01", "10"}
    s = lemma1_split(["00", "01", "1*"], "00")
    assert strs(s.even_side) == {"00"} and strs(s.odd_side) == {"01"}


def test_lemma1_split_errors():
    with pytest.raises(WordError):
        lemma1_split(["00", "01", "1*"], "1*")
    with pytest.raises(WordError):
        lemma1_split(["00", "01", "1*"], "11")


def test_odd_witness_examples():
    assert str(odd_witness(["0*", "1*"], "0*")) == "1*"
    assert str(odd_witness(["00", "01", "10", "11"], "00")) in {"01", "10"}
    assert str(odd_witness(["00", "01", "1*"], "00")) == "01"
    with pytest.raises(WordError):
        odd_witness(["00", "1*"], "00")


def test_handcrafted_tilings_are_tilings_and_not_hierarchical():
    tilings = handcrafted_tilings()
    assert len(tilings) >= 5
    for t in tilings:
        assert verify_tiling(t).ok, [str(w) for w in t]
    pin = tilings[0]
    assert strs(pin) == set(PINWHEEL_3)
    # no coordinate is fixed in every box, so no first cut exists
    for i in range(3):
        assert any(str(w)[i] == "*" for w in pin)


def test_lemma1_on_pinwheel():
    (split,) = check_lemma1([Word.parse(w) for w in PINWHEEL_3])
    assert strs(split.even_side) == {"000"} and strs(split.odd_side) == {"111"}


@pytest.mark.parametrize("n", range(1, 9))
def test_random_tilings_are_tilings(n):
    rng = random.Random(n)
    for _ in range(50):
        t = random_tiling(n, rng, pinwheel_probability=0.3)
        assert verify_tiling(t).ok


def test_random_tiling_reproducible():
    a = random_tiling(8, random.Random(3), pinwheel_probability=0.2)
    b = random_tiling(8, random.Random(3), pinwheel_probability=0.2)
    assert a == b


def test_lemma1_exhaustive_small_tilings():
    # every tiling of {0,1}^2 and {0,1}^3 by enumeration of box subsets
    for n in (2, 3):
        boxes = ["".join(p) for p in itertools.product("01*", repeat=n)]
        found = 0
        for r in range(1, 2 ** n + 1):
            for combo in itertools.combinations(boxes, r):
                if sum(2 ** w.count("*") for w in combo) != 2 ** n:
                    continue
                if any(not clash_positions(a, b) for a, b in itertools.combinations(combo, 2)):
                    continue
                found += 1
                splits = check_lemma1(list(combo))
                if combo == ("*" * n,):
                    # prop A empty: chi_{} sums to 2^n, not 0, so no balance
                    assert not splits[0].balanced
                    continue
                for split in splits:
                    assert split.balanced, combo
        assert found > 0


@pytest.mark.parametrize("n", [3, 6, 10])
def test_partition_additivity(n):
    rng = random.Random(100 + n)
    for _ in range(30):
        t = random_tiling(n, rng, pinwheel_probability=0.3)
        s = {i for i in range(1, n + 1) if rng.random() < 0.3}
        assert sum(char_sum_box(s, w) for w in t) == char_sum_cube(s, n)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_proof_identity(n):
    rng = random.Random(200 + n)
    for _ in range(40):
        t = random_tiling(n, rng, pinwheel_probability=0.3)
        for a in minimal_members(t):
            pa = {i + 1 for i in range(n) if a.fixed >> i & 1}
            ref = char_sum_box(pa, a)
            assert ref != 0
            split = lemma1_split(t, a)
            for b in split.even_side:
                assert char_sum_box(pa, b) == ref
            for b in split.odd_side:
                assert char_sum_box(pa, b) == -ref
            for b in t:
                if b.fixed != a.fixed:
                    assert char_sum_box(pa, b) == 0
