import string

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from glyphkit.dawg import (Dawg, DawgFormatError, DawgState, build_dawg,
                           contains, enumerate_words, near_matches, parse_dawg,
                           serialize_dawg)

from oracles import (levenshtein, near_matches_brute, trie_merge_state_count,
                     trie_node_count)

words_strategy = st.lists(
    st.text(alphabet=string.ascii_lowercase, min_size=1, max_size=12),
    min_size=0, max_size=200)


def test_membership_by_construction():
    d = build_dawg(["cat", "car", "cart"])
    for w in ("cat", "car", "cart"):
        assert contains(d, w)
    for w in ("ca", "carts", "", "dog"):
        assert not contains(d, w)


def test_empty_language():
    d = build_dawg([])
    assert len(d) == 1
    assert not contains(d, "")
    assert not contains(d, "a")
    assert enumerate_words(d) == []


def test_duplicates_and_unsorted_input():
    d = build_dawg(["zebra", "ant", "zebra", "ant"])
    assert enumerate_words(d) == ["ant", "zebra"]


def test_empty_word_rejected():
    with pytest.raises(ValueError, match="empty word"):
        build_dawg(["ok", ""])


def test_prefix_membership():
    d = build_dawg(["to", "ton"])
    assert contains(d, "to")
    assert contains(d, "ton")
    assert not contains(d, "t")
    assert not contains(d, "")


def test_minimality_against_trie_merge_oracle(rng):
    letters = string.ascii_lowercase
    for trial in range(8):
        n = int(rng.integers(1, 100))
        words = ["".join(letters[int(rng.integers(0, 26))]
                         for _ in range(int(rng.integers(1, 10))))
                 for _ in range(n)]
        d = build_dawg(words)
        assert len(d) == trie_merge_state_count(words)


def test_language_equals_input_set(rng):
    letters = "abcdef"
    words = ["".join(letters[int(rng.integers(0, len(letters)))]
                     for _ in range(int(rng.integers(1, 8))))
             for _ in range(300)]
    d = build_dawg(words)
    assert enumerate_words(d, max_len=8) == sorted(set(words))


def test_contains_agrees_with_set_oracle(rng):
    letters = "abcd"
    words = {"".join(letters[int(rng.integers(0, 4))]
                     for _ in range(int(rng.integers(1, 6))))
             for _ in range(120)}
    d = build_dawg(sorted(words))
    for _ in range(1000):
        q = "".join(letters[int(rng.integers(0, 4))]
                    for _ in range(int(rng.integers(1, 6))))
        assert contains(d, q) == (q in words)


def test_suffix_sharing_beats_trie():
    words = ["nation", "station", "ration"]
    d = build_dawg(words)
    assert len(d) < trie_node_count(words)


def test_near_matches_examples():
    d = build_dawg(["cat"])
    assert near_matches(d, "cot") == [("cat", "substitution")]
    assert near_matches(d, "cat") == [("cat", "exact")]
    assert near_matches(d, "ca") == [("cat", "insertion")]
    assert near_matches(d, "cart") == [("cat", "deletion")]
    assert near_matches(d, "dog") == []


def test_near_matches_orders_lexicographically():
    d = build_dawg(["bat", "cat", "rat", "cut"])
    hits = near_matches(d, "cat")
    assert [w for w, _ in hits] == ["bat", "cat", "cut", "rat"]
    assert dict(hits)["cat"] == "exact"


def test_near_matches_against_brute_force(rng):
    letters = "abcde"
    words = sorted({"".join(letters[int(rng.integers(0, 5))]
                            for _ in range(int(rng.integers(1, 9))))
                    for _ in range(100)})
    d = build_dawg(words)
    for _ in range(50):
        q = "".join(letters[int(rng.integers(0, 5))]
                    for _ in range(int(rng.integers(1, 9))))
        assert [w for w, _ in near_matches(d, q)] == near_matches_brute(words, q)


def test_near_match_kinds_are_consistent_with_distance(rng):
    words = ["alpha", "beta", "gamma", "delta", "gamme", "bet"]
    d = build_dawg(words)
    for q in ("beta", "bets", "gamm", "alpka", "zzzzz"):
        for w, kind in near_matches(d, q):
            dist = levenshtein(q, w)
            assert dist <= 1
            assert (kind == "exact") == (dist == 0)


def test_serialize_empty_language_canonical_form():
    assert serialize_dawg(build_dawg([])) == "DAWG1 1 0\n0 _\n"


def test_round_trip_single_word():
    d = build_dawg(["a"])
    assert parse_dawg(serialize_dawg(d)) == d


def test_round_trip_preserves_language(rng):
    letters = "abcdef"
    words = sorted({"".join(letters[int(rng.integers(0, 6))]
                            for _ in range(int(rng.integers(1, 9))))
                    for _ in range(200)})
    d = build_dawg(words)
    text = serialize_dawg(d)
    d2 = parse_dawg(text)
    assert enumerate_words(d2, max_len=10) == words
    assert serialize_dawg(d2) == text


@settings(max_examples=60, deadline=None)
@given(words_strategy)
def test_parse_serialize_identity_property(words):
    d = build_dawg(words)
    assert parse_dawg(serialize_dawg(d)) == d


def test_parse_version_mismatch():
    with pytest.raises(DawgFormatError, match="version"):
        parse_dawg("DAWG9 1 0\n0 _\n")


def test_parse_dangling_target():
    with pytest.raises(DawgFormatError, match="dangling"):
        parse_dawg("DAWG1 2 0\n0 _ a:5\n1 F\n")


def test_parse_cycle_detected():
    text = "DAWG1 2 0\n0 _ a:1\n1 F b:0\n"
    with pytest.raises(DawgFormatError, match="cycle"):
        parse_dawg(text)


def test_parse_duplicate_edge_label():
    with pytest.raises(DawgFormatError, match="duplicate"):
        parse_dawg("DAWG1 2 0\n0 _ a:1 a:1\n1 F\n")


def test_dawg_states_are_deterministic():
    a = build_dawg(["cat", "car", "cart"])
    b = build_dawg(["cart", "car", "cat", "cat"])
    assert a == b
    assert isinstance(a.states[0], DawgState)
    assert isinstance(a, Dawg)
