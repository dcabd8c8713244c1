import random

import pytest

from conftest import make_sentence, random_projective_tree, subtree_span
from srlpipe.corpus_io import ROOT
from srlpipe.trees import (HeadAmbiguityError, NonContiguousYieldError,
                           span_head, subtree_yield, tree_depth)


def abby_sentence():
    # Abby bought a car
    return make_sentence("s1", ["Abby", "bought", "a", "car"], [1, ROOT, 3, 1])


class TestSpanHead:
    def test_whole_sentence_span_is_root(self):
        sent = abby_sentence()
        assert span_head(sent, (0, 3)) == 1

    def test_np_head(self):
        assert span_head(abby_sentence(), (2, 3)) == 3

    def test_ambiguous_span(self):
        # both tokens attach outside the span
        sent = make_sentence("s2", ["a", "b", "c"], [2, 2, ROOT])
        with pytest.raises(HeadAmbiguityError):
            span_head(sent, (0, 1))

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            span_head(abby_sentence(), (0, 9))


class TestSubtreeYield:
    def test_leaf(self):
        assert subtree_yield(abby_sentence(), 0) == (0, 0)

    def test_root_covers_sentence(self):
        assert subtree_yield(abby_sentence(), 1) == (0, 3)

    def test_np_with_flanking_determiners(self):
        # ha kelev ha gadol, all headed by kelev directly or transitively
        sent = make_sentence("s3", ["ha", "kelev", "ha", "gadol"], [1, ROOT, 3, 1])
        assert subtree_yield(sent, 1) == (0, 3)

    def test_non_contiguous_yield(self):
        # subtree of token 3 is {0, 3}: tokens 1 and 2 intervene
        sent = make_sentence("s4", ["a", "b", "c", "d"], [3, ROOT, 1, 1])
        with pytest.raises(NonContiguousYieldError):
            subtree_yield(sent, 3)

    def test_yields_match_naive_reachability(self):
        rng = random.Random(99)
        for _ in range(50):
            n = rng.randint(1, 12)
            heads = random_projective_tree(rng, n)
            sent = make_sentence("s", [f"w{i}" for i in range(n)], heads)
            for idx in range(n):
                assert subtree_yield(sent, idx) == subtree_span(heads, idx)


class TestTreeDepth:
    def test_single_token(self):
        assert tree_depth(make_sentence("s", ["x"], [ROOT])) == 0

    def test_chain_of_four(self):
        assert tree_depth(make_sentence("s", list("abcd"), [1, 2, 3, ROOT])) == 3

    def test_fixture_hand_count(self):
        # bought(root) -> Abby, car; car -> a  => depth 2
        assert tree_depth(abby_sentence()) == 2

    def test_empty(self):
        assert tree_depth(make_sentence("s", [], [])) == 0
