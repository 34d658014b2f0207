"""Seeded random codes and planted deduplication instances."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .equiv import CodeRecord, CodeSet
from .gf2core import GeneratorMatrix, RankError, weight_enumerator


def random_full_rank(n: int, k: int, rng: random.Random) -> GeneratorMatrix:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n} k={k}")
    while True:
        try:
            return GeneratorMatrix(n, tuple(rng.getrandbits(n) for _ in range(k)))
        except RankError:
            continue


def random_permutation(n: int, rng: random.Random) -> tuple[int, ...]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return tuple(perm)


def scramble(m: GeneratorMatrix, rng: random.Random) -> GeneratorMatrix:
    """Random column permutation plus a random change of basis."""
    p = m.permute_columns(random_permutation(m.n, rng))
    rows = list(p.rows)
    for _ in range(2 * len(rows)):
        i, j = rng.sample(range(len(rows)), 2) if len(rows) > 1 else (0, 0)
        if i != j:
            rows[i] ^= rows[j]
    return GeneratorMatrix(m.n, tuple(rows))


@dataclass(frozen=True)
class PlantedInstance:
    sets: tuple[CodeSet, ...]
    truth: dict[str, int]  # record id -> planted class

    @property
    def classes(self) -> int:
        return len(set(self.truth.values()))


def planted_instance(
    seed: int,
    set_count: int = 7,
    max_per_set: int = 10,
    n: int | None = None,
    k: int | None = None,
    new_class_prob: float = 0.35,
) -> PlantedInstance:
    """Sets of scrambled copies of base codes with pairwise distinct weight enumerators.

    Distinct enumerators make the planted classes the true equivalence
    classes regardless of how equivalence is decided.
    """
    rng = random.Random(seed)
    if n is None:
        n = rng.randint(8, 14)
    if k is None:
        k = rng.randint(3, min(7, n - 2))
    bases: list[GeneratorMatrix] = []
    seen_we: set[tuple[int, ...]] = set()

    def new_base() -> int | None:
        for _ in range(200):
            m = random_full_rank(n, k, rng)
            we = weight_enumerator(m).counts
            if we not in seen_we:
                seen_we.add(we)
                bases.append(m)
                return len(bases) - 1
        return None

    sets = []
    truth: dict[str, int] = {}
    for s in range(1, set_count + 1):
        records = []
        for r in range(rng.randint(0, max_per_set)):
            cls = None
            if not bases or rng.random() < new_class_prob:
                cls = new_base()
            if cls is None:
                cls = rng.randrange(len(bases))
            rid = f"s{s}r{r}"
            records.append(CodeRecord(rid, scramble(bases[cls], rng)))
            truth[rid] = cls
        sets.append(CodeSet(f"i{s}", tuple(records)))
    return PlantedInstance(tuple(sets), truth)
