"""Permutation equivalence of binary codes and set-level purging.

``find_equivalence`` searches for a coordinate permutation sending one code
onto another. Columns are assigned one at a time; a partial assignment is
kept only if, for every weight w, the multiset of codeword restrictions to
the assigned columns agrees between the two codes. Once all n columns are
assigned this says the two codeword sets coincide, so the search is sound
and complete. Candidates for each column are limited to columns of the
other code with the same signature (how many codewords of each weight are
1 there).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .gf2core import (
    DEFAULT_MAX_ENUM_K,
    EnumerationLimitError,
    GF2Error,
    GeneratorMatrix,
    MatrixFormatError,
    WeightEnumerator,
    all_codewords,
    canonical_rows,
    parse_generator_matrix,
    weight_enumerator,
)

DEFAULT_MAX_N = 24


class EquivalenceLimitError(GF2Error):
    def __init__(self, n: int, limit: int):
        super().__init__(f"refusing equivalence search at n={n} (limit n <= {limit})")
        self.n = n
        self.limit = limit


class LibraryFormatError(MatrixFormatError):
    pass


@dataclass(frozen=True)
class CodeRecord:
    id: str
    matrix: GeneratorMatrix
    invariant_key: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        we = weight_enumerator(self.matrix)
        object.__setattr__(self, "invariant_key", (self.matrix.n, self.matrix.k, we.counts))

    @property
    def weight_enumerator(self) -> WeightEnumerator:
        return WeightEnumerator(self.invariant_key[2])


@dataclass(frozen=True)
class CodeSet:
    label: str
    records: tuple[CodeRecord, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        ids = [r.id for r in self.records]
        dup = [i for i, c in Counter(ids).items() if c > 1]
        if dup:
            raise ValueError(f"duplicate record ids in set {self.label!r}: {sorted(dup)}")

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    def replace(self, records: Iterable[CodeRecord]) -> CodeSet:
        return CodeSet(self.label, tuple(records))


@dataclass
class EquivStats:
    """Counters filled in by the set-level operations."""

    pair_comparisons: int = 0
    equivalence_tests: int = 0
    self_comparisons: int = 0
    purges: int = 0


class _CodeData:
    """Codeword table of one code, prepared for the column search."""

    def __init__(self, m: GeneratorMatrix):
        self.n = m.n
        words = all_codewords(m)
        if m.n <= 62:
            arr = np.array(words, dtype=np.int64)
            self.bits = (arr[:, None] >> np.arange(m.n)) & 1
        else:
            self.bits = np.array([[w >> j & 1 for j in range(m.n)] for w in words], dtype=np.int64)
        self.weights = self.bits.sum(axis=1)
        top = int(self.weights.max()) + 1
        # signature of column j: number of codewords of each weight with a 1 at j
        sig = np.zeros((m.n, top), dtype=np.int64)
        for w in range(top):
            sel = self.weights == w
            if sel.any():
                sig[:, w] = self.bits[sel].sum(axis=0)
        self.signatures = [tuple(row) for row in sig]


def _refusal(a: GeneratorMatrix, max_n: int) -> None:
    if a.n > max_n:
        raise EquivalenceLimitError(a.n, max_n)


def find_equivalence(
    a: GeneratorMatrix,
    b: GeneratorMatrix,
    max_n: int = DEFAULT_MAX_N,
    max_k: int = DEFAULT_MAX_ENUM_K,
) -> tuple[int, ...] | None:
    """Permutation ``perm`` with a.permute_columns(perm) spanning b's code, or None.

    ``perm[j-1]`` is the image of coordinate j (1-based).
    """
    _refusal(a, max_n)
    _refusal(b, max_n)
    if a.n != b.n or a.k != b.k:
        return None
    if a.k > max_k or b.k > max_k:
        raise EnumerationLimitError(max(a.k, b.k), max_k)
    if canonical_rows(a) == canonical_rows(b):
        return tuple(range(1, a.n + 1))
    if weight_enumerator(a, max_k) != weight_enumerator(b, max_k):
        return None
    da, db = _CodeData(a), _CodeData(b)
    if sorted(da.signatures) != sorted(db.signatures):
        return None
    perm = _search(da, db)
    if perm is None:
        return None
    if canonical_rows(a.permute_columns(perm)) != canonical_rows(b):
        raise AssertionError("equivalence witness failed verification")
    return perm


def _search(da: _CodeData, db: _CodeData) -> tuple[int, ...] | None:
    n = da.n
    by_sig: dict[tuple, list[int]] = {}
    for j, sg in enumerate(db.signatures):
        by_sig.setdefault(sg, []).append(j)
    # most constrained columns first
    order = sorted(range(n), key=lambda j: (len(by_sig[da.signatures[j]]), j))
    shift = int(max(da.weights.max(), 1)).bit_length()
    base_a = da.weights.astype(np.int64)
    base_b = db.weights.astype(np.int64)
    image = [-1] * n
    used = [False] * n

    def rec(depth: int, key_a: np.ndarray, key_b: np.ndarray) -> bool:
        if depth == n:
            return True
        j = order[depth]
        next_a = (key_a << 1) | da.bits[:, j]
        target = np.sort(next_a)
        for cand in by_sig[da.signatures[j]]:
            if used[cand]:
                continue
            next_b = (key_b << 1) | db.bits[:, cand]
            if not np.array_equal(target, np.sort(next_b)):
                continue
            used[cand] = True
            image[j] = cand
            if rec(depth + 1, next_a, next_b):
                return True
            used[cand] = False
        image[j] = -1
        return False

    # keys pack (weight, restriction pattern); weight sits above n pattern bits
    if n + shift > 62:
        key_a = base_a.astype(object)
        key_b = base_b.astype(object)
    else:
        key_a, key_b = base_a, base_b
    if not rec(0, key_a, key_b):
        return None
    return tuple(c + 1 for c in image)


def are_equivalent(
    a: GeneratorMatrix, b: GeneratorMatrix, max_n: int = DEFAULT_MAX_N
) -> bool:
    return find_equivalence(a, b, max_n) is not None


Comparator = Callable[[GeneratorMatrix, GeneratorMatrix], bool]


def _matches(
    rec: CodeRecord, pool: Sequence[CodeRecord], equivalent: Comparator, stats: EquivStats | None
) -> bool:
    for other in pool:
        if stats is not None:
            stats.pair_comparisons += 1
        if other.invariant_key != rec.invariant_key:
            continue
        if stats is not None:
            stats.equivalence_tests += 1
        if equivalent(other.matrix, rec.matrix):
            return True
    return False


def eq_sets(
    a: CodeSet,
    b: CodeSet,
    max_n: int = DEFAULT_MAX_N,
    stats: EquivStats | None = None,
    equivalent: Comparator | None = None,
) -> CodeSet:
    """Return ``b`` without the records equivalent to some record of ``a``.

    Both inputs are assumed reduced (no two equivalent records inside a set).
    """
    if equivalent is None:
        equivalent = lambda x, y: are_equivalent(x, y, max_n)  # noqa: E731
    kept = []
    for rec in b.records:
        if _matches(rec, a.records, equivalent, stats):
            if stats is not None:
                stats.purges += 1
        else:
            kept.append(rec)
    return b.replace(kept)


def reduce_set(
    s: CodeSet,
    max_n: int = DEFAULT_MAX_N,
    stats: EquivStats | None = None,
    equivalent: Comparator | None = None,
) -> CodeSet:
    """Keep the first record of each equivalence class, in set order."""
    if equivalent is None:
        equivalent = lambda x, y: are_equivalent(x, y, max_n)  # noqa: E731
    inner = EquivStats() if stats is not None else None
    kept: list[CodeRecord] = []
    for rec in s.records:
        if _matches(rec, kept, equivalent, inner):
            if stats is not None:
                stats.purges += 1
        else:
            kept.append(rec)
    if stats is not None:
        stats.self_comparisons += inner.pair_comparisons
        stats.equivalence_tests += inner.equivalence_tests
    return s.replace(kept)


# --- library file format -----------------------------------------------------


def parse_library(text: str) -> list[CodeRecord]:
    """Blocks of ``name: <id>`` followed by a generator matrix, blank-line separated."""
    records: list[CodeRecord] = []
    name: str | None = None
    start = 0
    body: list[str] = []
    lines = text.splitlines()

    def flush(end_line: int) -> None:
        nonlocal name, body
        if name is None:
            if any(l.strip() and not l.strip().startswith("#") for l in body):
                raise LibraryFormatError("matrix block without 'name:' line", end_line)
            body = []
            return
        try:
            m = parse_generator_matrix("\n".join(body), first_line=start + 1)
        except MatrixFormatError as exc:
            raise LibraryFormatError(str(exc)) from exc
        records.append(CodeRecord(name, m))
        name, body = None, []

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith("name:"):
            flush(lineno)
            name = line[len("name:"):].strip()
            if not name:
                raise LibraryFormatError("empty record name", lineno)
            start = lineno
            body = []
        elif not line and name is not None and any(b.strip() for b in body):
            flush(lineno)
        else:
            body.append(raw)
    flush(len(lines))
    seen = Counter(r.id for r in records)
    dup = sorted(i for i, c in seen.items() if c > 1)
    if dup:
        raise LibraryFormatError(f"duplicate record ids: {dup}")
    return records


def format_library(records: Iterable[CodeRecord]) -> str:
    blocks = [f"name: {r.id}\n{r.matrix.to_text()}" for r in records]
    return "\n".join(blocks)


def read_library(path: str | Path, label: str | None = None) -> CodeSet:
    path = Path(path)
    return CodeSet(label or path.stem, tuple(parse_library(path.read_text())))


def write_library(path: str | Path, records: Iterable[CodeRecord]) -> None:
    Path(path).write_text(format_library(records))
