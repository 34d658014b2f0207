"""Constant-weight Gray codes in revolving-door order.

The weight-t words of length k are listed in the order they occur in the
binary reflected Gray code of order k. Consecutive words differ in exactly
two positions, so each step is described by a ``SwapDelta``.

``GrayState`` is the loopless g/tau/s/i machine of Bitner, Ehrlich and
Reingold. It can start at the first word or be rebuilt from any word of
the sequence (see ``GrayState.from_word``), which is what lets parallel
workers begin in the middle without walking their predecessors.

Positions are 1-based throughout; position j is bit j-1 of a packed word.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator

from .gf2core import Codeword, GF2Error

MAX_K = 62


class GrayRangeError(GF2Error):
    """Invalid (k, t) or rank argument."""


def _check_kt(k: int, t: int) -> None:
    if k < 1:
        raise GrayRangeError(f"k must be >= 1, got {k}")
    if k > MAX_K:
        raise GrayRangeError(f"k must be <= {MAX_K}, got {k}")
    if not 0 <= t <= k:
        raise GrayRangeError(f"need 0 <= t <= k, got k={k} t={t}")


def binomial(k: int, t: int) -> int:
    return comb(k, t) if 0 <= t <= k else 0


@dataclass(frozen=True)
class SwapDelta:
    """One revolving-door step: ``out_pos`` turns 0, ``in_pos`` turns 1."""

    out_pos: int
    in_pos: int

    def __post_init__(self) -> None:
        if self.out_pos == self.in_pos:
            raise GrayRangeError("swap delta needs two distinct positions")

    @property
    def positions(self) -> tuple[int, int]:
        """The changed positions, ascending (the undirected form)."""
        return (min(self.out_pos, self.in_pos), max(self.out_pos, self.in_pos))

    def apply(self, bits: int) -> int:
        return bits ^ (1 << (self.out_pos - 1)) ^ (1 << (self.in_pos - 1))


class GrayState:
    """Explicit state of the constant-weight Gray code generator.

    ``g`` and ``tau`` are 1-indexed lists of length k+2 (index 0 unused,
    index k+1 is sentinel workspace). ``tau[1]`` is the next pivot; following
    ``tau`` from there gives the pending pivots in increasing order, ending
    at the terminal pivot k+1.
    """

    __slots__ = ("k", "t", "g", "tau", "s", "i", "rank")

    def __init__(self, k: int, t: int, g: list[int], tau: list[int], s: int, rank: int = 1):
        self.k = k
        self.t = t
        self.g = g
        self.tau = tau
        self.s = s
        self.i = 0
        self.rank = rank

    @classmethod
    def initial(cls, k: int, t: int) -> GrayState:
        _check_kt(k, t)
        g = [0] * (k + 2)
        tau = [0] * (k + 2)
        for j in range(1, t + 1):
            g[j] = 1
            tau[j] = j + 1
        for j in range(t + 1, k + 2):
            tau[j] = j + 1
        tau[1] = t + 1
        return cls(k, t, g, tau, t)

    @classmethod
    def from_word(cls, k: int, t: int, bits: int) -> GrayState:
        """Rebuild the state the generator is in when it outputs ``bits``.

        The pending-pivot chain is the sequence of record highs among the
        pivots still to come; it follows from the recursive structure
        G(k,t) = G(k-1,t), then reverse(G(k-1,t-1)) with bit k set.
        ``s`` is the leading run of ones, rounded up to the parity of t.
        """
        _check_kt(k, t)
        if bits < 0 or bits >> k or bits.bit_count() != t:
            raise GrayRangeError(f"word 0x{bits:x} is not a weight-{t} word of length {k}")
        g = [0] * (k + 2)
        for j in range(1, k + 1):
            g[j] = bits >> (j - 1) & 1
        chain = _pending_pivots(k, t, bits)
        tau = [j + 1 for j in range(k + 2)]
        tau[1] = chain[0]
        for a, b in zip(chain, chain[1:]):
            tau[a] = b
        lead = 0
        while lead < k and g[lead + 1]:
            lead += 1
        s = lead if (lead - t) % 2 == 0 else lead + 1
        return cls(k, t, g, tau, s, rank=rank_bits(k, t, bits))

    @classmethod
    def from_rank(cls, k: int, t: int, r: int) -> GrayState:
        return cls.from_word(k, t, unrank_bits(k, t, r))

    def copy(self) -> GrayState:
        new = GrayState(self.k, self.t, list(self.g), list(self.tau), self.s, self.rank)
        new.i = self.i
        return new

    @property
    def finished(self) -> bool:
        return self.t == 0 or self.t == self.k or self.tau[1] == self.k + 1

    def bits(self) -> int:
        g = self.g
        return sum(1 << (j - 1) for j in range(1, self.k + 1) if g[j])

    def word(self) -> Codeword:
        return Codeword(self.k, self.bits())

    def step(self) -> tuple[int, int] | None:
        """Advance to the next word; return ``(out_pos, in_pos)`` or None at the end."""
        k = self.k
        if self.t == 0 or self.t == k:
            return None
        g, tau = self.g, self.tau
        i = tau[1]
        if i == k + 1:
            return None
        self.i = i
        s = self.s
        tau[1] = tau[i]
        tau[i] = i + 1
        if g[i]:
            other = s if s != 0 else i - 1
            s += 1
        else:
            other = s - 1 if s != 1 else i - 1
            s -= 1
        g[other] ^= 1
        g[i] ^= 1
        if s == i - 1 or s == 0:
            s += 1
        else:
            s -= g[i - 1]
            tau[i - 1] = tau[1]
            tau[1] = i - 1 if s == 0 else s + 1
        self.s = s
        self.rank += 1
        return (i, other) if g[other] else (other, i)


def _pending_pivots(k: int, t: int, bits: int) -> list[int]:
    # G(L,w) = G(L-1,w), then reverse(G(L-1,w-1)) with bit L set. Walking
    # down from level k while tracking the walk direction, each level L
    # contributes exit pivot L+1. A level whose remaining walk never crosses
    # its midpoint drops the child's exit pivot, which is L itself.
    dropped = set()
    level, weight, forward = k, t, True
    while 0 < weight < level:
        top = bits >> (level - 1) & 1
        if forward == bool(top):
            dropped.add(level)
        if top:
            forward = not forward
            weight -= 1
        level -= 1
    return [v for v in range(level + 1, k + 2) if v not in dropped]


def unrank_bits(k: int, t: int, r: int) -> int:
    """Packed form of the r-th (1-based) word of the sequence."""
    _check_kt(k, t)
    total = binomial(k, t)
    if not 1 <= r <= total:
        raise GrayRangeError(f"rank {r} outside [1, {total}]")
    pos = r - 1
    bits = 0
    level, weight = k, t
    size = total  # C(level, weight)
    while 0 < weight < level:
        first = size * (level - weight) // level  # C(level-1, weight)
        if pos < first:
            size = first
        else:
            bits |= 1 << (level - 1)
            second = size - first  # C(level-1, weight-1)
            pos = second - 1 - (pos - first)
            size = second
            weight -= 1
        level -= 1
    if weight == level:
        bits |= (1 << level) - 1
    return bits


def unrank(k: int, t: int, r: int) -> Codeword:
    """The r-th (1-based) weight-t word, computed in O(k) steps."""
    return Codeword(k, unrank_bits(k, t, r))


def rank_bits(k: int, t: int, bits: int) -> int:
    _check_kt(k, t)
    if bits < 0 or bits >> k:
        raise GrayRangeError(f"word 0x{bits:x} does not fit in length {k}")
    if bits.bit_count() != t:
        raise GrayRangeError(f"word has weight {bits.bit_count()}, expected {t}")
    # position = sign * inner + offset, composed top-down
    sign, offset = 1, 0
    level, weight = k, t
    size = binomial(k, t)
    while 0 < weight < level:
        first = size * (level - weight) // level
        if bits >> (level - 1) & 1:
            second = size - first
            # pos = first + (second - 1 - inner)
            offset += sign * (first + second - 1)
            sign = -sign
            size = second
            weight -= 1
        else:
            size = first
        level -= 1
    return offset + 1


def rank(w: Codeword, t: int) -> int:
    """Inverse of ``unrank``: 1-based position of ``w`` in the sequence."""
    return rank_bits(w.length, t, w.bits)


class ConstantWeightIterator:
    """Iterate weight-t words of length k, optionally starting at rank ``start``.

    Iteration yields packed ints. ``deltas()`` yields the swap steps instead.
    """

    def __init__(self, k: int, t: int, start: int = 1, stop: int | None = None):
        _check_kt(k, t)
        self.k = k
        self.t = t
        total = binomial(k, t)
        self.stop = total if stop is None else stop
        if not 1 <= start <= total or not start <= self.stop <= total:
            raise GrayRangeError(f"bad range [{start}, {self.stop}] for C({k},{t}) = {total}")
        self.start = start

    def _state(self) -> GrayState:
        if self.start == 1:
            return GrayState.initial(self.k, self.t)
        return GrayState.from_rank(self.k, self.t, self.start)

    def __iter__(self) -> Iterator[int]:
        state = self._state()
        bits = state.bits()
        yield bits
        for _ in range(self.stop - self.start):
            out_pos, in_pos = state.step()
            bits ^= (1 << (out_pos - 1)) | (1 << (in_pos - 1))
            yield bits

    def __len__(self) -> int:
        return self.stop - self.start + 1

    def deltas(self) -> Iterator[SwapDelta]:
        state = self._state()
        for _ in range(self.stop - self.start):
            out_pos, in_pos = state.step()
            yield SwapDelta(out_pos, in_pos)


def constant_weight_sequence(k: int, t: int) -> list[Codeword]:
    """All C(k,t) weight-t words of length k in revolving-door order.

    ``t == 0`` gives the single zero word.
    """
    return [Codeword(k, b) for b in ConstantWeightIterator(k, t)]


def swap_deltas(k: int, t: int) -> list[SwapDelta]:
    return list(ConstantWeightIterator(k, t).deltas())


def format_word(w: Codeword) -> str:
    """Render with position k first, matching the g_k ... g_1 output order."""
    return format(w.bits, f"0{w.length}b")


def format_support(w: Codeword) -> str:
    return "{" + ",".join(str(p) for p in w.support()) + "}"
