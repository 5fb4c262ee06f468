import math
import random

import pytest

from squarerun.adversary import (ALPHABET, SQUARE, EliminationBound, EnforcedSquare,
                                 QueryLimitReached, WitnessUnavailable, adversary_oracle,
                                 colorless_ranges, distinct_count_strategy, eliminability_check,
                                 random_strategy, reduction_double, reduction_separator,
                                 required_edges, sequential_strategy, square_free_completion,
                                 witness_large, witness_small)
from squarerun.approxlz import exact_lz, f_factorization
from squarerun.corpus import random_string
from squarerun.oracle import InputError, from_symbols
from squarerun.primitives import main_lorentz_square
from conftest import np_has_square, text

FIG1 = [(2, 3), (2, 6), (2, 7), (2, 8), (4, 6), (5, 6), (6, 7), (7, 8), (8, 9), (8, 10),
        (7, 10), (2, 10), (11, 15), (14, 15), (15, 16), (15, 20), (11, 16), (16, 17),
        (16, 18), (16, 19), (11, 14), (12, 14), (13, 14)]


def test_parameter_errors():
    for mode, n, sigma in ((ALPHABET, 8, 4), (ALPHABET, 8, 1), (SQUARE, 20, 4),
                           (SQUARE, 20, 10), (SQUARE, 8, 16), ("other", 10, 2)):
        with pytest.raises(InputError):
            adversary_oracle(mode, n, sigma)


def test_separators_and_fresh_edges():
    g = adversary_oracle(SQUARE, 20, 16)
    assert [g.color[i] for i in (1, 5, 9, 13, 17)] == [2, 1, 0, 2, 0]
    assert g.s.eq(1, 13)
    assert not g.s.eq(2, 3)
    assert g.edge(2, 3) and g.edge(3, 2)
    st = g.s.stats()
    assert st.negative == 1 and st.positive_merging == 1


def test_figure1_replay():
    g = adversary_oracle(SQUARE, 20, 16)
    for i, j in FIG1:
        g.s.eq(i, j)
    colors = {i: g.color[i] for i in (2, 6, 7, 8, 14, 15, 16)}
    # node 8 had to avoid {0,1,2,3,4}: 3 from neighbour 2, 4 from block mate 6
    assert colors == {2: 3, 6: 4, 8: 5, 7: 6, 15: 3, 16: 4, 14: 5}
    assert colorless_ranges(g) == [(3, 4), (10, 12), (18, 20)]
    res = eliminability_check(g, (10, 12))
    assert isinstance(res, EnforcedSquare) and (res.s, res.half) == (10, 1)
    assert res.choices[0] == [0, 1, 2] + list(range(7, 16))
    assert res.tokens[9] == res.tokens[10]
    assert g.replay_consistent(res.tokens)
    comp = square_free_completion(g)
    assert g.replay_consistent(comp) and not np_has_square(comp)


def test_eliminated_ranges():
    g = adversary_oracle(SQUARE, 20, 16)
    g.s.eq(2, 3)
    g.s.eq(3, 4)
    res = eliminability_check(g, (2, 4))
    assert isinstance(res, EliminationBound) and res.satisfied
    assert res.required == 2 and res.edges_by_shift == {1: 2}
    g = adversary_oracle(SQUARE, 16, 8)  # blocks of 2: every free node is alone
    res = eliminability_check(g, (2, 2))
    assert isinstance(res, EliminationBound) and res.satisfied and res.required == 0
    assert required_edges(6) == pytest.approx(5 + 3 / 2 + 1 / 3)


def test_witnesses_fresh_and_small():
    g = adversary_oracle(ALPHABET, 20, 4)
    assert witness_small(g) == [0] * 20
    assert len(set(witness_large(g))) == 20
    g = adversary_oracle(ALPHABET, 9, 2)
    g.s.eq(1, 2)
    g.s.eq(3, 4)
    w = witness_small(g)
    assert len(set(w)) <= 2 and g.replay_consistent(w)


def test_witness_large_contract():
    g = adversary_oracle(ALPHABET, 64, 4)
    g.query_limit = 64 * 4 // 8
    with pytest.raises(QueryLimitReached):
        sequential_strategy(g.s)
    assert g.replay_consistent(witness_large(g))
    g.query_limit = None
    g.s.eq(1, 64)
    with pytest.raises(WitnessUnavailable):
        witness_large(g)


@pytest.mark.parametrize("strategy", ["sequential", "random", "distinct"])
def test_ambiguity_after_limit(strategy):
    n, sigma = 256, 4
    g = adversary_oracle(ALPHABET, n, sigma, query_limit=n * sigma // 8)
    with pytest.raises(QueryLimitReached):
        if strategy == "sequential":
            sequential_strategy(g.s)
        elif strategy == "random":
            random_strategy(g.s, seed=1)
        else:
            distinct_count_strategy(g.s)
    small, large = witness_small(g), witness_large(g)
    assert len(set(small)) <= sigma and len(set(large)) >= n // 2
    assert g.replay_consistent(small) and g.replay_consistent(large)


def test_square_mode_completion_brute():
    rng = random.Random(2)
    for trial in range(40):
        sigma = rng.choice([8, 12, 16, 32])
        n = rng.randint(sigma, 512)
        limit = rng.randint(0, 40 * n)
        g = adversary_oracle(SQUARE, n, sigma, query_limit=limit)
        try:
            if trial % 2:
                random_strategy(g.s, seed=trial)
            else:
                main_lorentz_square(g.s)
        except QueryLimitReached:
            pass
        comp = square_free_completion(g)
        assert g.replay_consistent(comp)
        assert not np_has_square(comp)
        # separators spell the ternary Thue-Morse word
        b = sigma // 4
        assert all(comp[i] < 3 for i in range(0, n, b))
        assert all(c >= 3 for i, c in enumerate(comp) if i % b)


def test_transcript_dump(tmp_path):
    g = adversary_oracle(SQUARE, 20, 16)
    for i, j in FIG1[:6] + [(1, 13), (5, 9)]:
        g.s.eq(i, j)
    f = tmp_path / "t.txt"
    g.dump_transcript(f)
    lines = f.read_text().split("\n")[:-1]
    assert lines[0] == "2 3 0" and lines[-2:] == ["1 13 1", "5 9 0"]
    # answers follow from the final colouring and edges alone
    for line in lines:
        i, j, a = map(int, line.split())
        same = g.color[i] >= 0 and g.color[i] == g.color[j]
        assert same == bool(a)


def occurs_earlier(tokens, s, e):
    piece = tokens[s - 1:e]
    return any(tokens[q:q + len(piece)] == piece for q in range(s - 1))


def test_reductions():
    assert reduction_double(text("ab")) == text("aabb")
    sep = reduction_separator(text("ab"))
    assert sep[:2] == text("aa") and sep[3:5] == text("bb") and sep[2] == sep[5] not in text("ab")
    for seed in range(30):
        t = random_string(40, 1 + seed % 6, seed)
        sigma = len(set(t))
        f = f_factorization(from_symbols(reduction_double(t)))
        assert sum(1 for s, e in f if s == e and s % 2 == 1) == sigma
        r = reduction_separator(t)
        lz = exact_lz(from_symbols(r))
        hits = [(s, e) for s, e in lz if e - s == 1 and s % 3 == 2]
        # a final phrase cut short by the end of the text is not a
        # first-occurrence phrase; it is recognised by occurring earlier
        if hits and hits[-1][1] == len(r) and occurs_earlier(r, *hits[-1]):
            hits.pop()
        assert len(hits) == sigma
