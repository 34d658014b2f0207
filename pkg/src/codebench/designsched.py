"""Block-design scheduling of set-versus-set equivalence purging.

With v sets of codes and a 2-(v,k,1) design on the set indices, every pair
of sets shares exactly one block. Processing the blocks in order, with each
set purged against the earlier sets of its block, leaves one representative
per equivalence class while never holding more than k sets at once.

A set's purge state is global: it accumulates across blocks. The prime
level shown for a set in a step counts the purges it has been through
before that step. Inside a step every member except the first is purged
against its predecessors in the block; a set entering its first step as the
first member is only reduced against itself, which also counts as a purge.
"""

from __future__ import annotations

import json
import tempfile
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .equiv import (
    DEFAULT_MAX_N,
    CodeRecord,
    CodeSet,
    EquivStats,
    eq_sets,
    format_library,
    parse_library,
    reduce_set,
)


class DesignError(ValueError):
    """Malformed design, or a design unusable as a schedule."""

    def __init__(self, message: str, block_index: int | None = None):
        if block_index is not None:
            message = f"block {block_index}: {message}"
        super().__init__(message)
        self.block_index = block_index


@dataclass(frozen=True)
class Design:
    v: int
    block_size: int
    lam: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))


def validate_design(d: Design, t: int = 2) -> bool:
    """Brute-force check that every t-subset of points lies in exactly ``lam`` blocks.

    Raises ``DesignError`` (with the block index) for structurally broken blocks.
    """
    if d.v < 1 or d.block_size < 1 or d.lam < 1:
        raise DesignError(f"need v, k, lambda >= 1, got {d.v}, {d.block_size}, {d.lam}")
    for idx, block in enumerate(d.blocks):
        if len(block) != d.block_size:
            raise DesignError(f"has {len(block)} points, expected {d.block_size}", idx)
        if len(set(block)) != len(block):
            raise DesignError("repeats a point", idx)
        bad = [p for p in block if not 1 <= p <= d.v]
        if bad:
            raise DesignError(f"points {bad} outside [1, {d.v}]", idx)
    if t > d.block_size:
        return False
    counts = dict.fromkeys(combinations(range(1, d.v + 1), t), 0)
    for block in d.blocks:
        for sub in combinations(sorted(block), t):
            counts[sub] += 1
    return all(c == d.lam for c in counts.values())


def fano_plane() -> Design:
    """The 2-(7,3,1) design, blocks in the order used by the standard schedule."""
    return Design(7, 3, 1, ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)))


def complete_design(v: int) -> Design:
    """Every pair as its own block; schedules to the naive all-pairs plan."""
    if v < 2:
        raise DesignError(f"complete pair design needs v >= 2, got {v}")
    return Design(v, 2, 1, tuple(combinations(range(1, v + 1), 2)))


def naive_pair_count(s: int) -> int:
    """Pairs among 2s half-size sets: C(2s, 2) = s(2s - 1)."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    return s * (2 * s - 1)


def parse_design(text: str) -> Design:
    """First line ``v k lambda``, then one block per line (1-based points)."""
    lines = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), 1)]
    lines = [(no, ln) for no, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise DesignError("empty design file")
    try:
        v, k, lam = (int(x) for x in lines[0][1].split())
    except ValueError:
        raise DesignError(f"line {lines[0][0]}: expected 'v k lambda'") from None
    blocks = []
    for no, ln in lines[1:]:
        try:
            blocks.append(tuple(int(x) for x in ln.split()))
        except ValueError:
            raise DesignError(f"line {no}: non-integer point") from None
    return Design(v, k, lam, tuple(blocks))


def format_design(d: Design) -> str:
    out = [f"{d.v} {d.block_size} {d.lam}"]
    out.extend(" ".join(map(str, b)) for b in d.blocks)
    return "\n".join(out) + "\n"


def read_design(path: str | Path) -> Design:
    return parse_design(Path(path).read_text())


# --- schedule ----------------------------------------------------------------

_PRIMES = {0: "", 1: "′", 2: "″", 3: "‴"}


def prime_mark(level: int) -> str:
    return _PRIMES.get(level, f"^({level})")


@dataclass(frozen=True)
class ScheduleStep:
    block_index: int
    members: tuple[int, ...]
    levels: tuple[int, ...]
    comparisons: tuple[tuple[int, int], ...]

    def notation(self) -> str:
        parts = [f"i_{m}{prime_mark(lv)}" for m, lv in zip(self.members, self.levels)]
        return "Eq(" + ",".join(parts) + ")"


@dataclass(frozen=True)
class Schedule:
    v: int
    steps: tuple[ScheduleStep, ...]
    final_levels: tuple[int, ...]

    def notation(self) -> list[str]:
        return [s.notation() for s in self.steps]

    def union_notation(self) -> str:
        return "∪".join(f"i_{j}{prime_mark(lv)}" for j, lv in enumerate(self.final_levels, 1))

    def pairs(self) -> list[tuple[int, int]]:
        return [p for s in self.steps for p in s.comparisons]


def make_schedule(d: Design, set_count: int | None = None) -> Schedule:
    if set_count is None:
        set_count = d.v
    if set_count != d.v:
        raise DesignError(f"design has v={d.v} points but {set_count} sets were given")
    if d.lam != 1:
        raise DesignError(f"schedules need lambda = 1 (got {d.lam}); pairs would be re-compared")
    if not validate_design(d):
        raise DesignError("not a 2-(v,k,1) design")
    levels = [0] * (d.v + 1)
    steps = []
    for idx, block in enumerate(d.blocks):
        members = tuple(sorted(block))
        before = tuple(levels[m] for m in members)
        comps = tuple((a, b) for a, b in combinations(members, 2))
        steps.append(ScheduleStep(idx, members, before, comps))
        first, rest = members[0], members[1:]
        if levels[first] == 0:
            levels[first] = 1
        for m in rest:
            levels[m] += 1
    return Schedule(d.v, tuple(steps), tuple(levels[1:]))


# --- execution ---------------------------------------------------------------


class SetStore:
    """Holds sets out of core and counts how many are loaded at once.

    Sets live as library text (on disk for ``DirectorySetStore``); ``load``
    parses one into memory and ``release`` writes it back and drops it.
    """

    def __init__(self, labels: Sequence[str]):
        self.labels = list(labels)
        self._resident: set[int] = set()
        self.resident_peak = 0
        self.loads = 0

    def __len__(self) -> int:
        return len(self.labels)

    def _read(self, idx: int) -> str:
        raise NotImplementedError

    def _write(self, idx: int, text: str) -> None:
        raise NotImplementedError

    def load(self, idx: int) -> CodeSet:
        """1-based set index."""
        if idx in self._resident:
            raise RuntimeError(f"set {idx} is already loaded")
        self._resident.add(idx)
        self.loads += 1
        self.resident_peak = max(self.resident_peak, len(self._resident))
        return CodeSet(self.labels[idx - 1], tuple(parse_library(self._read(idx))))

    def release(self, idx: int, s: CodeSet | None = None) -> None:
        if idx not in self._resident:
            raise RuntimeError(f"set {idx} is not loaded")
        if s is not None:
            self._write(idx, format_library(s.records))
        self._resident.discard(idx)

    @property
    def resident(self) -> int:
        return len(self._resident)


class MemorySetStore(SetStore):
    def __init__(self, sets: Sequence[CodeSet]):
        super().__init__([s.label for s in sets])
        self._text = [format_library(s.records) for s in sets]

    def _read(self, idx: int) -> str:
        return self._text[idx - 1]

    def _write(self, idx: int, text: str) -> None:
        self._text[idx - 1] = text


class DirectorySetStore(SetStore):
    def __init__(self, root: str | Path, sets: Sequence[CodeSet]):
        super().__init__([s.label for s in sets])
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        for i, s in enumerate(sets, 1):
            self._path(i).write_text(format_library(s.records))

    @classmethod
    def from_files(cls, root: str | Path, paths: Sequence[str | Path]) -> DirectorySetStore:
        """Copy library files into ``root`` without keeping them in memory."""
        store = cls.__new__(cls)
        SetStore.__init__(store, [Path(p).stem for p in paths])
        store.root = Path(root)
        store.root.mkdir(parents=True, exist_ok=True)
        for i, p in enumerate(paths, 1):
            text = Path(p).read_text()
            parse_library(text)  # fail early on malformed input
            store._path(i).write_text(text)
        return store

    def _path(self, idx: int) -> Path:
        return self.root / f"set_{idx:04d}.lib"

    def _read(self, idx: int) -> str:
        return self._path(idx).read_text()

    def _write(self, idx: int, text: str) -> None:
        self._path(idx).write_text(text)


@dataclass
class DedupAudit:
    blocks_executed: int = 0
    pair_comparisons: int = 0
    equivalence_tests: int = 0
    self_comparisons: int = 0
    purges: int = 0
    resident_set_peak: int = 0
    classes: int = 0
    steps: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


@dataclass(frozen=True)
class DedupResult:
    survivors: CodeSet
    audit: DedupAudit


def execute_schedule(
    store: SetStore | Sequence[CodeSet],
    d: Design,
    max_n: int = DEFAULT_MAX_N,
    equivalent=None,
) -> DedupResult:
    """Run the block schedule over ``store`` and collect the survivors in set order."""
    if not isinstance(store, SetStore):
        store = MemorySetStore(list(store))
    schedule = make_schedule(d, len(store))
    stats = EquivStats()
    audit = DedupAudit()
    reduced = [False] * (d.v + 1)

    for step in schedule.steps:
        loaded: dict[int, CodeSet] = {}
        for m in step.members:
            s = store.load(m)
            if not reduced[m]:
                s = reduce_set(s, max_n, stats, equivalent)
                reduced[m] = True
            loaded[m] = s
        for a, b in step.comparisons:
            loaded[b] = eq_sets(loaded[a], loaded[b], max_n, stats, equivalent)
        for m in step.members:
            store.release(m, loaded[m])
        audit.blocks_executed += 1
        audit.steps.append(step.notation())

    survivors: list[CodeRecord] = []
    for j in range(1, d.v + 1):
        s = store.load(j)
        if not reduced[j]:
            s = reduce_set(s, max_n, stats, equivalent)
        survivors.extend(s.records)
        store.release(j)

    audit.pair_comparisons = stats.pair_comparisons
    audit.equivalence_tests = stats.equivalence_tests
    audit.self_comparisons = stats.self_comparisons
    audit.purges = stats.purges
    audit.resident_set_peak = store.resident_peak
    audit.classes = len(survivors)
    return DedupResult(_union(survivors), audit)


def _union(records: Iterable[CodeRecord]) -> CodeSet:
    # ids may repeat across sets; keep the first, rename later ones
    seen: dict[str, int] = {}
    out = []
    for r in records:
        if r.id in seen:
            seen[r.id] += 1
            r = CodeRecord(f"{r.id}#{seen[r.id]}", r.matrix)
        else:
            seen[r.id] = 0
        out.append(r)
    return CodeSet("union", tuple(out))


def run_dedup(
    sets: SetStore | Sequence[CodeSet], d: Design, max_n: int = DEFAULT_MAX_N
) -> CodeSet:
    """Reduced union of the input sets; one record per equivalence class."""
    return execute_schedule(sets, d, max_n).survivors


def all_pairs_dedup(
    store: SetStore | Sequence[CodeSet], max_n: int = DEFAULT_MAX_N, equivalent=None
) -> DedupResult:
    """Baseline: load every set, then purge all pairs in index order."""
    if not isinstance(store, SetStore):
        store = MemorySetStore(list(store))
    stats = EquivStats()
    v = len(store)
    loaded = {j: reduce_set(store.load(j), max_n, stats, equivalent) for j in range(1, v + 1)}
    for a, b in combinations(range(1, v + 1), 2):
        loaded[b] = eq_sets(loaded[a], loaded[b], max_n, stats, equivalent)
    for j in range(1, v + 1):
        store.release(j, loaded[j])
    survivors = [r for j in range(1, v + 1) for r in loaded[j].records]
    audit = DedupAudit(
        blocks_executed=v * (v - 1) // 2,
        pair_comparisons=stats.pair_comparisons,
        equivalence_tests=stats.equivalence_tests,
        self_comparisons=stats.self_comparisons,
        purges=stats.purges,
        resident_set_peak=store.resident_peak,
        classes=len(survivors),
    )
    return DedupResult(_union(survivors), audit)


def temporary_store(sets: Sequence[CodeSet]) -> DirectorySetStore:
    root = tempfile.mkdtemp(prefix="codebench-sets-")
    return DirectorySetStore(root, sets)
