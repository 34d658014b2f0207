from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from codebench.gf2core import Codeword
from codebench.graygen import (
    ConstantWeightIterator,
    GrayRangeError,
    GrayState,
    SwapDelta,
    constant_weight_sequence,
    format_support,
    format_word,
    rank,
    swap_deltas,
    unrank,
)

from conftest import brgc_weight_subsequence

K6_T3_TRIPLES = [
    {1, 2, 3}, {1, 3, 4}, {2, 3, 4}, {1, 2, 4}, {1, 4, 5}, {2, 4, 5}, {3, 4, 5},
    {1, 3, 5}, {2, 3, 5}, {1, 2, 5}, {1, 5, 6}, {2, 5, 6}, {3, 5, 6}, {4, 5, 6},
    {1, 4, 6}, {2, 4, 6}, {3, 4, 6}, {1, 3, 6}, {2, 3, 6}, {1, 2, 6},
]
K6_T3_SWAPS = [
    (2, 4), (1, 2), (1, 3), (2, 5), (1, 2), (2, 3), (1, 4), (1, 2), (1, 3), (2, 6),
    (1, 2), (2, 3), (3, 4), (1, 5), (1, 2), (2, 3), (1, 4), (1, 2), (1, 3),
]


def reference_states(k, t):
    """Straight transcription of the generator loop, recording (word, tau, s) at each output."""
    g = [0] * (k + 2)
    tau = [0] * (k + 2)
    for j in range(1, t + 1):
        g[j], tau[j] = 1, j + 1
    for j in range(t + 1, k + 2):
        g[j], tau[j] = 0, j + 1
    s, tau[1], i = t, t + 1, 0
    out = []
    while i < k + 1:
        out.append((sum(g[j] << (j - 1) for j in range(1, k + 1)), list(tau[1:]), s))
        i = tau[1]
        tau[1] = tau[i]
        tau[i] = i + 1
        if g[i] == 1:
            if s != 0:
                g[s] ^= 1
            else:
                g[i - 1] ^= 1
            s += 1
        else:
            if s != 1:
                g[s - 1] ^= 1
            else:
                g[i - 1] ^= 1
            s -= 1
        g[i] ^= 1
        if s == i - 1 or s == 0:
            s += 1
        else:
            s -= g[i - 1]
            tau[i - 1] = tau[1]
            tau[1] = i - 1 if s == 0 else s + 1
    return out


def test_k6_t3_triples():
    seq = constant_weight_sequence(6, 3)
    assert [set(w.support()) for w in seq] == K6_T3_TRIPLES
    assert format_word(seq[0]) == "000111"


def test_k6_t3_swaps():
    assert [d.positions for d in swap_deltas(6, 3)] == K6_T3_SWAPS


def test_k4_walks():
    assert [format_word(w) for w in constant_weight_sequence(4, 1)] == ["0001", "0010", "0100", "1000"]
    # weight-2 entries of the order-4 Gray walk, including 0011
    assert [format_word(w) for w in constant_weight_sequence(4, 2)] == [
        "0011", "0110", "0101", "1100", "1010", "1001",
    ]


def test_degenerate_weights():
    assert constant_weight_sequence(5, 5) == [Codeword(5, 0b11111)]
    assert constant_weight_sequence(5, 0) == [Codeword(5, 0)]
    assert swap_deltas(5, 5) == []
    assert [d.positions for d in swap_deltas(2, 1)] == [(1, 2)]
    assert swap_deltas(2, 1) == [SwapDelta(1, 2)]


@pytest.mark.parametrize("k,t", [(3, 4), (0, 0), (-1, 0), (4, -1)])
def test_bad_parameters(k, t):
    with pytest.raises(GrayRangeError):
        constant_weight_sequence(k, t)


def test_deltas_rebuild_k5_t2():
    seq = [w.bits for w in constant_weight_sequence(5, 2)]
    deltas = swap_deltas(5, 2)
    assert len(deltas) == 9
    for a, b, d in zip(seq, seq[1:], deltas):
        diff = a ^ b
        assert diff == (1 << (d.out_pos - 1)) | (1 << (d.in_pos - 1))
        assert a >> (d.out_pos - 1) & 1 and not a >> (d.in_pos - 1) & 1
        assert d.apply(a) == b


@pytest.mark.parametrize("k", range(1, 13))
def test_matches_gray_code_subsequence(k):
    for t in range(0, k + 1):
        assert list(ConstantWeightIterator(k, t)) == brgc_weight_subsequence(k, t)


@pytest.mark.parametrize("k", range(1, 17))
def test_completeness_and_adjacency(k):
    for t in range(0, k + 1):
        words = list(ConstantWeightIterator(k, t))
        assert len(words) == len(set(words)) == comb(k, t)
        assert all(w.bit_count() == t for w in words)
        assert all((a ^ b).bit_count() == 2 for a, b in zip(words, words[1:]))


@pytest.mark.parametrize("k", range(1, 13))
def test_first_and_last_words(k):
    for t in range(1, k + 1):
        seq = constant_weight_sequence(k, t)
        assert seq[0].to_string() == "1" * t + "0" * (k - t)
        # the walk ends at {1, ..., t-1, k}
        last = tuple(range(1, t)) + (k,) if t < k else tuple(range(1, k + 1))
        assert seq[-1].support() == last


def test_generator_matches_reference_loop():
    for k in range(1, 11):
        for t in range(1, k + 1):
            ref = reference_states(k, t)
            assert list(ConstantWeightIterator(k, t)) == [w for w, _, _ in ref]


def test_state_reconstruction_matches_reference_loop():
    for k in range(1, 11):
        for t in range(1, k + 1):
            for r, (bits, tau, s) in enumerate(reference_states(k, t), start=1):
                st_ = GrayState.from_rank(k, t, r)
                assert st_.bits() == bits
                assert st_.tau[1:] == tau
                assert st_.s == s
                assert st_.rank == r


def test_resumed_iterator_continues_sequence():
    k, t = 9, 4
    full = list(ConstantWeightIterator(k, t))
    for start in (1, 2, 17, 60, comb(k, t)):
        assert list(ConstantWeightIterator(k, t, start=start)) == full[start - 1:]
    assert list(ConstantWeightIterator(k, t, start=5, stop=9)) == full[4:9]


def test_unrank_examples():
    assert set(unrank(6, 3, 7).support()) == {3, 4, 5}
    assert rank(Codeword.from_support(6, [3, 4, 5]), 3) == 7
    for k in range(1, 9):
        for t in range(1, k + 1):
            assert unrank(k, t, 1).to_string() == "1" * t + "0" * (k - t)
            assert rank(unrank(k, t, 1), t) == 1


def test_unrank_matches_enumeration_exhaustively():
    for k in range(1, 11):
        for t in range(0, k + 1):
            for r, bits in enumerate(brgc_weight_subsequence(k, t), start=1):
                assert unrank(k, t, r).bits == bits
                assert rank(Codeword(k, bits), t) == r


def test_unrank_rank_errors():
    with pytest.raises(GrayRangeError):
        unrank(6, 3, 0)
    with pytest.raises(GrayRangeError):
        unrank(6, 3, 21)
    with pytest.raises(GrayRangeError):
        rank(Codeword.from_support(6, [1, 2]), 3)


@given(st.integers(1, 60).flatmap(lambda k: st.tuples(st.just(k), st.integers(0, k))), st.data())
def test_rank_unrank_roundtrip_large(kt, data):
    k, t = kt
    r = data.draw(st.integers(1, comb(k, t)))
    assert rank(unrank(k, t, r), t) == r


@given(st.integers(3, 40).flatmap(lambda k: st.tuples(st.just(k), st.integers(1, k - 1))), st.data())
def test_resumed_steps_agree_with_unrank(kt, data):
    k, t = kt
    r = data.draw(st.integers(1, comb(k, t)))
    state = GrayState.from_rank(k, t, r)
    for step in range(1, 6):
        if r + step > comb(k, t):
            assert state.step() is None
            break
        out_pos, in_pos = state.step()
        assert state.bits() == unrank(k, t, r + step).bits


def test_renderers():
    w = Codeword.from_support(6, [1, 2, 6])
    assert format_word(w) == "100011"
    assert format_support(w) == "{1,2,6}"
