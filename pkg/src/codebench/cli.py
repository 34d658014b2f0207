"""Command-line front end.

Exit codes: 0 success, 2 bad input (parse errors, bad arguments),
3 enumeration/search limit exceeded, 4 invalid design.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import __version__
from .designsched import (
    Design,
    DesignError,
    DirectorySetStore,
    complete_design,
    execute_schedule,
    fano_plane,
    format_design,
    read_design,
    validate_design,
)
from .equiv import DEFAULT_MAX_N, EquivalenceLimitError, find_equivalence, format_library
from .gf2core import (
    DEFAULT_MAX_ENUM_K,
    EnumerationLimitError,
    GF2Error,
    MatrixFormatError,
    dual,
    is_self_dual,
    is_self_orthogonal,
    read_generator_matrix,
    weight_enumerator,
)
from .graygen import ConstantWeightIterator, GrayRangeError, binomial
from .mindist import min_distance_direct, min_distance_gray, min_distance_parallel
from .randcodes import random_full_rank

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_DESIGN = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[Path] = field(default_factory=list)
    workers: int = 1
    max_k: int = DEFAULT_MAX_ENUM_K
    max_n: int = DEFAULT_MAX_N
    output_format: str = "json"
    stop_at: int | None = None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        inputs = getattr(args, "inputs", None) or []
        return cls(
            subcommand=args.command,
            inputs=[Path(p) for p in inputs],
            workers=getattr(args, "workers", 1),
            max_k=getattr(args, "max_k", DEFAULT_MAX_ENUM_K),
            max_n=getattr(args, "max_n", DEFAULT_MAX_N),
            output_format=getattr(args, "format", "json"),
            stop_at=getattr(args, "stop_at", None),
        )


def _load_matrix(path: Path):
    try:
        return read_generator_matrix(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_INPUT) from exc
    except MatrixFormatError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INPUT) from exc


def _emit(data: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        for key, value in data.items():
            if isinstance(value, list):
                value = " ".join(map(str, value))
            out.write(f"{key}: {value}\n")


def cmd_mindist(args: argparse.Namespace, out) -> int:
    cfg = RunConfig.from_args(args)
    m = _load_matrix(cfg.inputs[0])
    if cfg.workers < 1:
        raise CliError("--workers must be >= 1", EXIT_INPUT)
    if args.method == "direct":
        report = min_distance_direct(m, cfg.max_k, cfg.stop_at)
    elif args.method == "gray":
        report = min_distance_gray(m, cfg.max_k, cfg.stop_at)
    else:
        report = min_distance_parallel(m, cfg.workers, cfg.max_k, cfg.stop_at)
    _emit(report.to_dict(), cfg.output_format, out)
    return EXIT_OK


def cmd_grayseq(args: argparse.Namespace, out) -> int:
    k, t = args.k, args.t
    try:
        total = binomial(k, t) if 0 <= t <= k else 0
        stop = args.stop if args.stop is not None else total
        it = ConstantWeightIterator(k, t, start=args.start, stop=stop)
    except GrayRangeError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    lines = []
    if args.deltas:
        for d in it.deltas():
            a, b = (d.out_pos, d.in_pos) if args.directed else d.positions
            lines.append(f"{a},{b}")
    else:
        for bits in it:
            if args.format == "sets":
                support = [j + 1 for j in range(k) if bits >> j & 1]
                lines.append("{" + ",".join(map(str, support)) + "}")
            else:
                lines.append(format(bits, f"0{k}b"))
    if lines:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def _resolve_design(choice: str, set_count: int) -> Design:
    if choice == "fano":
        return fano_plane()
    if choice == "complete":
        return complete_design(set_count)
    try:
        return read_design(choice)
    except OSError as exc:
        raise CliError(f"{choice}: {exc.strerror}", EXIT_INPUT) from exc


def cmd_dedup(args: argparse.Namespace, out) -> int:
    cfg = RunConfig.from_args(args)
    try:
        design = _resolve_design(args.design, len(cfg.inputs))
        if design.v != len(cfg.inputs):
            raise DesignError(f"design has v={design.v} but {len(cfg.inputs)} library files were given")
        if design.lam != 1 or not validate_design(design):
            raise DesignError(f"not a 2-({design.v},{design.block_size},1) design")
    except DesignError as exc:
        raise CliError(f"invalid design: {exc}", EXIT_DESIGN) from exc

    workdir = Path(args.workdir) if args.workdir else Path(tempfile.mkdtemp(prefix="codebench-"))
    try:
        store = DirectorySetStore.from_files(workdir, cfg.inputs)
    except OSError as exc:
        raise CliError(f"{exc.filename}: {exc.strerror}", EXIT_INPUT) from exc
    except MatrixFormatError as exc:
        raise CliError(str(exc), EXIT_INPUT) from exc
    result = execute_schedule(store, design, cfg.max_n)
    Path(args.out).write_text(format_library(result.survivors.records))
    audit = result.audit.to_json(indent=2) + "\n"
    if args.audit:
        Path(args.audit).write_text(audit)
    out.write(audit)
    return EXIT_OK


def cmd_codeinfo(args: argparse.Namespace, out) -> int:
    cfg = RunConfig.from_args(args)
    m = _load_matrix(cfg.inputs[0])
    info: dict = {
        "n": m.n,
        "k": m.k,
        "rank": m.k,
        "dual_dimension": m.n - m.k,
        "self_orthogonal": is_self_orthogonal(m),
        "self_dual": is_self_dual(m),
    }
    if m.k <= cfg.max_k:
        we = weight_enumerator(m, cfg.max_k)
        info["weight_enumerator"] = we.as_list()
        info["min_distance"] = we.min_distance()
    else:
        info["weight_enumerator"] = None
        print(f"codebench: weight enumerator skipped (k={m.k} > {cfg.max_k})", file=sys.stderr)
    _emit(info, cfg.output_format, out)
    return EXIT_OK


def cmd_dual(args: argparse.Namespace, out) -> int:
    m = _load_matrix(Path(args.inputs[0]))
    d = dual(m)
    if d.k == 0:
        out.write(f"{m.n} 0\n")
    else:
        out.write(d.to_text())
    return EXIT_OK


def cmd_equiv(args: argparse.Namespace, out) -> int:
    cfg = RunConfig.from_args(args)
    a, b = (_load_matrix(p) for p in cfg.inputs[:2])
    perm = find_equivalence(a, b, cfg.max_n, cfg.max_k)
    data = {"equivalent": perm is not None, "permutation": list(perm) if perm else None}
    _emit(data, cfg.output_format, out)
    return EXIT_OK


def cmd_randcode(args: argparse.Namespace, out) -> int:
    if not 1 <= args.k <= args.n:
        raise CliError("need 1 <= k <= n", EXIT_INPUT)
    m = random_full_rank(args.n, args.k, random.Random(args.seed))
    out.write(f"# random [{args.n},{args.k}] code, seed {args.seed}\n")
    out.write(m.to_text())
    return EXIT_OK


def cmd_design(args: argparse.Namespace, out) -> int:
    design = fano_plane() if args.name == "fano" else complete_design(args.v)
    out.write(format_design(design))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="codebench", description="Binary linear code workbench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def limits(sp, k=True, n=False):
        if k:
            sp.add_argument("--max-k", type=int, default=DEFAULT_MAX_ENUM_K,
                            help="refuse full enumeration above this dimension")
        if n:
            sp.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                            help="refuse equivalence search above this length")

    sp = sub.add_parser("mindist", help="minimum distance of a code")
    sp.add_argument("inputs", nargs=1, metavar="MATRIX")
    sp.add_argument("--method", choices=["direct", "gray", "parallel"], default="gray")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--stop-at", type=int, default=None, help="stop once a word of weight <= W is seen")
    sp.add_argument("--format", choices=["json", "text"], default="json")
    limits(sp)
    sp.set_defaults(func=cmd_mindist)

    sp = sub.add_parser("grayseq", help="list constant-weight words in revolving-door order")
    sp.add_argument("-k", type=int, required=True, help="word length")
    sp.add_argument("-t", type=int, required=True, help="weight")
    sp.add_argument("--deltas", action="store_true", help="print swapped positions instead of words")
    sp.add_argument("--directed", action="store_true", help="with --deltas, print 'out,in' instead of ascending pairs")
    sp.add_argument("--format", choices=["bits", "sets"], default="bits")
    sp.add_argument("--start", type=int, default=1, help="first rank (1-based)")
    sp.add_argument("--stop", type=int, default=None, help="last rank (inclusive)")
    sp.set_defaults(func=cmd_grayseq)

    sp = sub.add_parser("dedup", help="deduplicate code libraries with a block design")
    sp.add_argument("inputs", nargs="+", metavar="LIBRARY")
    sp.add_argument("--design", default="fano", help="'fano', 'complete' or a design file")
    sp.add_argument("--out", required=True, help="survivor library file")
    sp.add_argument("--audit", default=None, help="also write the audit JSON here")
    sp.add_argument("--workdir", default=None, help="where sets are kept between blocks")
    limits(sp, k=False, n=True)
    sp.set_defaults(func=cmd_dedup)

    sp = sub.add_parser("codeinfo", help="parameters, self-duality and weight enumerator")
    sp.add_argument("inputs", nargs=1, metavar="MATRIX")
    sp.add_argument("--format", choices=["json", "text"], default="json")
    limits(sp)
    sp.set_defaults(func=cmd_codeinfo)

    sp = sub.add_parser("dual", help="print a generator matrix of the dual code")
    sp.add_argument("inputs", nargs=1, metavar="MATRIX")
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("equiv", help="test two codes for permutation equivalence")
    sp.add_argument("inputs", nargs=2, metavar="MATRIX")
    sp.add_argument("--format", choices=["json", "text"], default="json")
    limits(sp, k=True, n=True)
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("randcode", help="random full-rank generator matrix")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.set_defaults(func=cmd_randcode)

    sp = sub.add_parser("design", help="print a built-in design in design-file format")
    sp.add_argument("name", choices=["fano", "complete"])
    sp.add_argument("-v", type=int, default=7, help="point count for 'complete'")
    sp.set_defaults(func=cmd_design)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"codebench: error: {exc}", file=sys.stderr)
        return exc.code
    except (EnumerationLimitError, EquivalenceLimitError) as exc:
        print(f"codebench: limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except DesignError as exc:
        print(f"codebench: invalid design: {exc}", file=sys.stderr)
        return EXIT_DESIGN
    except GF2Error as exc:
        print(f"codebench: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
