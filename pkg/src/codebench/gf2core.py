"""Bit-packed GF(2) vectors and generator matrices.

Words are Python ints; coordinate 1 lives in the least significant bit.
Conversion to and from the left-to-right text form only happens in the
parsing/formatting helpers at the bottom of this module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

DEFAULT_MAX_ENUM_K = 28


class GF2Error(ValueError):
    """Base class for errors raised by the GF(2) layer."""


class RankError(GF2Error):
    """Generator rows are not linearly independent."""


class EnumerationLimitError(GF2Error):
    """Full codeword enumeration refused because k exceeds the limit."""

    def __init__(self, k: int, limit: int):
        super().__init__(f"refusing to enumerate 2^{k} codewords (limit k <= {limit})")
        self.k = k
        self.limit = limit


class MatrixFormatError(GF2Error):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Codeword:
    """Length-n binary word; ``bits`` has bit j-1 set iff coordinate j is 1."""

    length: int
    bits: int = 0

    def __post_init__(self) -> None:
        if self.length < 1:
            raise GF2Error(f"codeword length must be >= 1, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise GF2Error(f"bits 0x{self.bits:x} do not fit in length {self.length}")

    @classmethod
    def from_string(cls, text: str) -> Codeword:
        """Parse ``"1010"`` where the first character is coordinate 1."""
        if not text or set(text) - {"0", "1"}:
            raise GF2Error(f"not a 0/1 string: {text!r}")
        return cls(len(text), int(text[::-1], 2))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> Codeword:
        bits = 0
        for pos in support:
            if not 1 <= pos <= length:
                raise GF2Error(f"position {pos} outside [1, {length}]")
            bits |= 1 << (pos - 1)
        return cls(length, bits)

    def support(self) -> tuple[int, ...]:
        return tuple(j + 1 for j in range(self.length) if self.bits >> j & 1)

    def to_string(self) -> str:
        """Coordinate 1 first."""
        return format(self.bits, f"0{self.length}b")[::-1]

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: Codeword) -> Codeword:
        _check_lengths(self, other)
        return Codeword(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return self.to_string()


def _check_lengths(u: Codeword, v: Codeword) -> None:
    if u.length != v.length:
        raise GF2Error(f"length mismatch: {u.length} != {v.length}")


def weight(v: Codeword) -> int:
    return v.bits.bit_count()


def inner_product(u: Codeword, v: Codeword) -> int:
    """Standard GF(2) inner product, i.e. parity of the overlap."""
    _check_lengths(u, v)
    return (u.bits & v.bits).bit_count() & 1


def xor_combine(rows: Sequence[Codeword], indices: Iterable[int]) -> Codeword:
    """XOR of ``rows[i]`` for the 1-based ``indices``; empty selection gives zero."""
    if not rows:
        raise GF2Error("xor_combine needs at least one row to fix the length")
    length = rows[0].length
    acc = 0
    for i in indices:
        if not 1 <= i <= len(rows):
            raise GF2Error(f"row index {i} outside [1, {len(rows)}]")
        row = rows[i - 1]
        if row.length != length:
            raise GF2Error(f"length mismatch: {row.length} != {length}")
        acc ^= row.bits
    return Codeword(length, acc)


def _rref_ints(rows: Sequence[int], n: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form of int rows; returns (nonzero rows, 1-based pivots)."""
    work = [r for r in rows]
    out: list[int] = []
    pivots: list[int] = []
    for col in range(n):
        bit = 1 << col
        pivot = next((r for r in range(len(work)) if work[r] & bit), None)
        if pivot is None:
            continue
        prow = work.pop(pivot)
        work = [r ^ prow if r & bit else r for r in work]
        out = [r ^ prow if r & bit else r for r in out]
        out.append(prow)
        pivots.append(col + 1)
        if not work:
            break
    return out, pivots


def rank_of(rows: Sequence[int], n: int) -> int:
    return len(_rref_ints(rows, n)[1])


@dataclass(frozen=True)
class GeneratorMatrix:
    """k x n generator matrix with linearly independent rows.

    ``rows`` holds packed ints (coordinate 1 = LSB). Rank is validated on
    construction. The 0-row matrix is allowed so that the dual of a
    full-space code has somewhere to live.
    """

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if self.n < 1:
            raise GF2Error(f"code length must be >= 1, got {self.n}")
        if len(self.rows) > self.n:
            raise RankError(f"{len(self.rows)} rows cannot be independent in length {self.n}")
        for r in self.rows:
            if r < 0 or r >> self.n:
                raise GF2Error(f"row 0x{r:x} does not fit in length {self.n}")
        rank = rank_of(self.rows, self.n)
        if rank != len(self.rows):
            raise RankError(f"rows have rank {rank}, expected {len(self.rows)}")

    @classmethod
    def from_codewords(cls, rows: Sequence[Codeword]) -> GeneratorMatrix:
        if not rows:
            raise GF2Error("need at least one row")
        n = rows[0].length
        for r in rows:
            if r.length != n:
                raise GF2Error(f"length mismatch: {r.length} != {n}")
        return cls(n, tuple(r.bits for r in rows))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> GeneratorMatrix:
        return cls.from_codewords([Codeword.from_string(r) for r in rows])

    @classmethod
    def identity(cls, k: int) -> GeneratorMatrix:
        return cls(k, tuple(1 << j for j in range(k)))

    @property
    def k(self) -> int:
        return len(self.rows)

    def codeword_rows(self) -> list[Codeword]:
        return [Codeword(self.n, r) for r in self.rows]

    def row(self, i: int) -> Codeword:
        """1-based row access."""
        return Codeword(self.n, self.rows[i - 1])

    def permute_columns(self, perm: Sequence[int]) -> GeneratorMatrix:
        """Send coordinate j to coordinate ``perm[j-1]`` (both 1-based)."""
        return GeneratorMatrix(self.n, tuple(permute_word(r, perm) for r in self.rows))

    def codewords(self, max_k: int = DEFAULT_MAX_ENUM_K) -> Iterator[int]:
        """All 2^k codewords as ints, in binary reflected Gray order."""
        if self.k > max_k:
            raise EnumerationLimitError(self.k, max_k)
        acc = 0
        yield acc
        rows = self.rows
        for step in range(1, 1 << self.k):
            acc ^= rows[(step & -step).bit_length() - 1]
            yield acc

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines.extend(format(r, f"0{self.n}b")[::-1] for r in self.rows)
        return "\n".join(lines) + "\n"


def permute_word(bits: int, perm: Sequence[int]) -> int:
    out = 0
    j = 0
    while bits:
        if bits & 1:
            out |= 1 << (perm[j] - 1)
        bits >>= 1
        j += 1
    return out


def _as_int_rows(m: GeneratorMatrix | Sequence[Codeword]) -> tuple[list[int], int]:
    if isinstance(m, GeneratorMatrix):
        return list(m.rows), m.n
    if not m:
        raise GF2Error("need at least one row")
    n = m[0].length
    for r in m:
        if r.length != n:
            raise GF2Error(f"length mismatch: {r.length} != {n}")
    return [r.bits for r in m], n


@dataclass(frozen=True)
class RREF:
    rows: tuple[Codeword, ...]
    rank: int
    pivots: tuple[int, ...]


def rref(m: GeneratorMatrix | Sequence[Codeword]) -> RREF:
    """Reduced row echelon form over GF(2).

    Accepts rank-deficient input given as a list of codewords; zero rows
    are dropped from the result. Pivot columns are 1-based and ascending.
    """
    rows, n = _as_int_rows(m)
    out, pivots = _rref_ints(rows, n)
    return RREF(tuple(Codeword(n, r) for r in out), len(pivots), tuple(pivots))


def canonical_rows(m: GeneratorMatrix) -> tuple[int, ...]:
    """RREF rows as ints; equal tuples iff equal row spaces."""
    return tuple(_rref_ints(m.rows, m.n)[0])


def same_code(a: GeneratorMatrix, b: GeneratorMatrix) -> bool:
    return a.n == b.n and canonical_rows(a) == canonical_rows(b)


def dual(m: GeneratorMatrix) -> GeneratorMatrix:
    """Generator matrix of the dual code, dimension n - k."""
    red, pivots = _rref_ints(m.rows, m.n)
    pivot_set = set(pivots)
    out = []
    for col in range(1, m.n + 1):
        if col in pivot_set:
            continue
        word = 1 << (col - 1)
        for prow, p in zip(red, pivots):
            if prow >> (col - 1) & 1:
                word |= 1 << (p - 1)
        out.append(word)
    return GeneratorMatrix(m.n, tuple(out))


def is_self_orthogonal(m: GeneratorMatrix) -> bool:
    rows = m.rows
    for a in range(len(rows)):
        for b in range(a, len(rows)):
            if (rows[a] & rows[b]).bit_count() & 1:
                return False
    return True


def is_self_dual(m: GeneratorMatrix) -> bool:
    return m.n == 2 * m.k and is_self_orthogonal(m)


@dataclass(frozen=True)
class WeightEnumerator:
    """``counts[w]`` is the number of codewords of weight w."""

    counts: tuple[int, ...]
    _total: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        object.__setattr__(self, "_total", sum(self.counts))
        if not self.counts or self.counts[0] != 1:
            raise GF2Error("weight enumerator must have counts[0] == 1")
        total = self._total
        if total & (total - 1):
            raise GF2Error(f"codeword count {total} is not a power of two")

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def k(self) -> int:
        return self._total.bit_length() - 1

    def min_distance(self) -> int | None:
        return next((w for w, c in enumerate(self.counts) if w and c), None)

    def as_list(self) -> list[int]:
        return list(self.counts)


def weight_enumerator(m: GeneratorMatrix, max_k: int = DEFAULT_MAX_ENUM_K) -> WeightEnumerator:
    """Weight distribution by full enumeration of all 2^k codewords."""
    if m.k > max_k:
        raise EnumerationLimitError(m.k, max_k)
    if m.n <= 64 and m.k >= 10:
        return WeightEnumerator(_weight_counts_numpy(m))
    counts = [0] * (m.n + 1)
    for c in m.codewords(max_k):
        counts[c.bit_count()] += 1
    return WeightEnumerator(tuple(counts))


_NP_BLOCK = 16


def _weight_counts_numpy(m: GeneratorMatrix) -> tuple[int, ...]:
    import numpy as np

    low = m.rows[:_NP_BLOCK]
    high = m.rows[_NP_BLOCK:]
    block = np.zeros(1, dtype=np.uint64)
    for r in low:
        block = np.concatenate([block, block ^ np.uint64(r)])
    counts = np.zeros(m.n + 1, dtype=np.int64)
    offset = 0
    for step in range(1 << len(high)):
        if step:
            offset ^= high[(step & -step).bit_length() - 1]
        w = np.bitwise_count(block ^ np.uint64(offset))
        counts += np.bincount(w, minlength=m.n + 1)
    return tuple(int(c) for c in counts)


def all_codewords(m: GeneratorMatrix, max_k: int = DEFAULT_MAX_ENUM_K) -> list[int]:
    """All codewords, index i = XOR of rows selected by the bits of i."""
    if m.k > max_k:
        raise EnumerationLimitError(m.k, max_k)
    words = [0]
    for r in m.rows:
        words += [w ^ r for w in words]
    return words


# --- text format -----------------------------------------------------------


def parse_generator_matrix(text: str, first_line: int = 1) -> GeneratorMatrix:
    """Parse ``n k`` followed by k rows of n 0/1 characters; ``#`` lines are comments."""
    header: tuple[int, int] | None = None
    rows: list[int] = []
    last = first_line
    for lineno, raw in enumerate(text.splitlines(), start=first_line):
        line = raw.strip()
        last = lineno
        if not line or line.startswith("#"):
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise MatrixFormatError(f"expected 'n k' header, got {line!r}", lineno)
            n, k = int(parts[0]), int(parts[1])
            if n < 1 or not 1 <= k <= n:
                raise MatrixFormatError(f"need 1 <= k <= n, got n={n} k={k}", lineno)
            header = (n, k)
            continue
        n, k = header
        if len(rows) == k:
            raise MatrixFormatError(f"more than {k} rows", lineno)
        if len(line) != n or set(line) - {"0", "1"}:
            raise MatrixFormatError(f"row must be {n} characters of 0/1, got {line!r}", lineno)
        rows.append(int(line[::-1], 2))
    if header is None:
        raise MatrixFormatError("missing 'n k' header", last)
    if len(rows) != header[1]:
        raise MatrixFormatError(f"expected {header[1]} rows, found {len(rows)}", last)
    try:
        return GeneratorMatrix(header[0], tuple(rows))
    except RankError as exc:
        raise MatrixFormatError(str(exc), last) from exc


def read_generator_matrix(path: str | Path) -> GeneratorMatrix:
    return parse_generator_matrix(Path(path).read_text())


def format_generator_matrix(m: GeneratorMatrix) -> str:
    return m.to_text()

