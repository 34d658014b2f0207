"""Minimum distance of binary linear codes by exhaustive enumeration.

Two serial engines walk every nonzero codeword, one weight class t (number
of generator rows combined) at a time:

* ``min_distance_direct`` builds each codeword from scratch with t XORs,
  visiting t-subsets in nested-loop (lexicographic) order.
* ``min_distance_gray`` visits the t-subsets in revolving-door order, so
  each codeword after the first of its class costs two row XORs.

``min_distance_parallel`` splits every class into contiguous rank chunks and
seeds each chunk through ``GrayState.from_rank``.

Row-op accounting: one op is one full row XORed into the accumulator.
Initialising a class costs t ops (the first load counts as one).
"""

from __future__ import annotations

import json
import time
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Iterator

from .gf2core import DEFAULT_MAX_ENUM_K, Codeword, EnumerationLimitError, GeneratorMatrix
from .graygen import GrayState, binomial


@dataclass(frozen=True)
class DistanceReport:
    n: int
    k: int
    d: int
    witness: Codeword
    xor_row_ops: int
    codewords_enumerated: int
    wall_time_ms: float
    workers: int = 1
    method: str = "gray"
    complete: bool = True

    def to_dict(self) -> dict:
        out = asdict(self)
        out["witness"] = self.witness.to_string()
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> DistanceReport:
        fields = dict(data)
        fields["witness"] = Codeword.from_string(fields["witness"])
        return cls(**fields)

    def result_key(self) -> tuple:
        """Everything except timing and labels."""
        return (self.n, self.k, self.d, self.witness, self.xor_row_ops, self.codewords_enumerated)


def _check(m: GeneratorMatrix, max_k: int) -> None:
    if m.k > max_k:
        raise EnumerationLimitError(m.k, max_k)
    if m.k < 1:
        raise ValueError("minimum distance of the zero code is undefined")


def _elapsed_ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000.0, 3)


def min_distance_direct(
    m: GeneratorMatrix, max_k: int = DEFAULT_MAX_ENUM_K, stop_at: int | None = None
) -> DistanceReport:
    _check(m, max_k)
    t0 = time.perf_counter()
    rows, k = m.rows, m.k
    best_w, best = m.n + 1, 0
    ops = count = 0
    done = False
    for t in range(1, k + 1):
        for combo in combinations(range(k), t):
            c = 0
            for i in combo:
                c ^= rows[i]
                ops += 1
            count += 1
            w = c.bit_count()
            if w < best_w:
                best_w, best = w, c
                if stop_at is not None and w <= stop_at:
                    done = True
                    break
        if done:
            break
    return DistanceReport(
        m.n, k, best_w, Codeword(m.n, best), ops, count, _elapsed_ms(t0),
        method="direct", complete=count == (1 << k) - 1,
    )


def min_distance_gray(
    m: GeneratorMatrix, max_k: int = DEFAULT_MAX_ENUM_K, stop_at: int | None = None
) -> DistanceReport:
    _check(m, max_k)
    t0 = time.perf_counter()
    res = _walk(m.rows, m.n, m.k, [(t, 1, binomial(m.k, t)) for t in range(1, m.k + 1)], stop_at)
    return DistanceReport(
        m.n, m.k, res[0], Codeword(m.n, res[3]), res[4], res[5], _elapsed_ms(t0),
        method="gray", complete=res[5] == (1 << m.k) - 1,
    )


def _walk(rows, n, k, tasks, stop_at):
    """Walk rank ranges [(t, start, stop), ...]; return (w, t, rank, word, ops, count).

    The best hit is the first minimal weight in (t, rank) order.
    """
    best = (n + 1, 0, 0, 0)
    ops = count = 0
    for t, start, stop in tasks:
        state = GrayState.initial(k, t) if start == 1 else GrayState.from_rank(k, t, start)
        g = state.g
        c = 0
        for j in range(1, k + 1):
            if g[j]:
                c ^= rows[j - 1]
                ops += 1
        count += 1
        w = c.bit_count()
        if w < best[0]:
            best = (w, t, start, c)
            if stop_at is not None and w <= stop_at:
                return (*best, ops, count)
        step = state.step
        for r in range(start + 1, stop + 1):
            out_pos, in_pos = step()
            c ^= rows[out_pos - 1]
            c ^= rows[in_pos - 1]
            ops += 2
            count += 1
            w = c.bit_count()
            if w < best[0]:
                best = (w, t, r, c)
                if stop_at is not None and w <= stop_at:
                    return (*best, ops, count)
    return (*best, ops, count)


def partition(total: int, workers: int) -> list[tuple[int, int]]:
    """Split ranks 1..total into at most ``workers`` contiguous inclusive chunks."""
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    base, extra = divmod(total, workers)
    chunks = []
    start = 1
    for w in range(workers):
        size = base + (1 if w < extra else 0)
        if size:
            chunks.append((start, start + size - 1))
        start += size
    return chunks


def _walk_task(args):
    rows, n, k, task, stop_at = args
    return _walk(rows, n, k, [task], stop_at)


def min_distance_parallel(
    m: GeneratorMatrix,
    workers: int,
    max_k: int = DEFAULT_MAX_ENUM_K,
    stop_at: int | None = None,
    executor: str = "process",
) -> DistanceReport:
    """Gray enumeration with every weight class split over ``workers`` chunks.

    Chunks are merged by (weight, t, rank), so the witness does not depend
    on the worker count. With ``stop_at`` each chunk stops on its own.
    """
    _check(m, max_k)
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    t0 = time.perf_counter()
    tasks = [
        (t, a, b) for t in range(1, m.k + 1) for a, b in partition(binomial(m.k, t), workers)
    ]
    payloads = [(m.rows, m.n, m.k, task, stop_at) for task in tasks]
    if workers == 1:
        results = [_walk(m.rows, m.n, m.k, tasks, stop_at)]
    else:
        with _make_executor(executor, workers) as ex:
            results = list(ex.map(_walk_task, payloads))
    w, _, _, word = min((r[:4] for r in results), key=lambda r: r[:3])
    ops = sum(r[4] for r in results)
    count = sum(r[5] for r in results)
    return DistanceReport(
        m.n, m.k, w, Codeword(m.n, word), ops, count, _elapsed_ms(t0),
        workers=workers, method="parallel", complete=count == (1 << m.k) - 1,
    )


def _make_executor(kind: str, workers: int) -> Executor:
    if kind == "process":
        return ProcessPoolExecutor(max_workers=workers)
    if kind == "thread":
        return ThreadPoolExecutor(max_workers=workers)
    raise ValueError(f"unknown executor {kind!r}")


def direct_xor_ops(k: int) -> int:
    """Closed form for the direct engine: sum_t t*C(k,t) = k*2^(k-1)."""
    return sum(t * binomial(k, t) for t in range(1, k + 1))


def gray_xor_ops(k: int) -> int:
    """Closed form for the Gray engine: sum_t (t + 2*(C(k,t) - 1))."""
    return sum(t + 2 * (binomial(k, t) - 1) for t in range(1, k + 1))


def class_codewords_direct(m: GeneratorMatrix, t: int) -> Iterator[int]:
    rows = m.rows
    for combo in combinations(range(m.k), t):
        c = 0
        for i in combo:
            c ^= rows[i]
        yield c


def class_codewords_gray(m: GeneratorMatrix, t: int) -> Iterator[int]:
    rows = m.rows
    state = GrayState.initial(m.k, t)
    c = 0
    for j in range(t):
        c ^= rows[j]
    yield c
    while (delta := state.step()) is not None:
        c ^= rows[delta[0] - 1] ^ rows[delta[1] - 1]
        yield c


ENGINES = {
    "direct": min_distance_direct,
    "gray": min_distance_gray,
}
