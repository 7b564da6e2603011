"""Command-line interface over the JSON automaton/relation formats.

Subcommands: dbsim, dbbisim, greatest, check, lang, formula. All results are
printed as deterministic JSON (keys sorted, numbers at 12 significant
digits). Exit codes: 0 success, 1 I/O or parse problem, 2 semantic mismatch
(alphabets, shapes, unknown symbols), 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .automata import (
    DEFAULT_WORD_CAP,
    FuzzyAutomaton,
    automaton_from_json,
    language_bounded,
    language_eval,
    word_from_names,
)
from .dbsim import (
    DbSimResult,
    check_bisim,
    check_dbbisim_prefix,
    check_dbsim_prefix,
    check_sim,
    compute_dbbisim,
    compute_dbsim,
    greatest_fixpoint,
)
from .errors import (
    AlphabetMismatch,
    DegreeRangeError,
    DialectError,
    DimensionMismatch,
    FormulaSyntaxError,
    FuzzboundError,
    InputFormatError,
    UnknownSymbol,
    WordCapExceeded,
)
from .fuzzy import FuzzyRelation, relation_from_json
from .lattice import DEFAULT_EPS, STRUCTURE_NAMES, Structure, structure
from .logic import eval_formula, format_formula, parse_formula

ENV_TNORM = "FUZZBOUND_TNORM"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SEMANTIC = 2
EXIT_RESOURCE = 3


@dataclass(frozen=True)
class CliConfig:
    """Resolved run configuration shared by the command handlers."""

    tnorm: str
    eps_cmp: float
    max_iters: int
    tol: float
    word_cap: int
    output: Optional[str]

    def __post_init__(self):
        if self.tnorm not in STRUCTURE_NAMES:
            raise InputFormatError(
                f"unknown structure {self.tnorm!r} (known: {', '.join(STRUCTURE_NAMES)})")
        if self.eps_cmp < 0 or self.tol < 0 or self.max_iters < 0 or self.word_cap < 0:
            raise InputFormatError("numeric options must be >= 0")

    def structure(self) -> Structure:
        return structure(self.tnorm, self.eps_cmp)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Route usage problems through the normal error path (exit 1, not
    # argparse's default exit 2, which this tool reserves for semantic
    # mismatches).
    def error(self, message):
        raise _UsageError(message)


def _round12(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _emit(doc: dict, output: Optional[str]) -> None:
    text = json.dumps(_round12(doc), sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path} is not valid JSON: {exc}") from None


def _load_automaton(path: str) -> FuzzyAutomaton:
    return automaton_from_json(_load_json(path))


def _relation_by_name(rel: FuzzyRelation, a: FuzzyAutomaton,
                      b: FuzzyAutomaton) -> dict:
    out: dict[str, dict[str, float]] = {}
    for x, xp, v in rel.entries():
        out.setdefault(a.state_names[x], {})[b.state_names[xp]] = v
    return out


def _result_doc(result: DbSimResult, a: FuzzyAutomaton,
                b: FuzzyAutomaton) -> dict:
    doc = result.to_json()
    doc["phi_k_by_name"] = _relation_by_name(result.relation, a, b)
    return doc


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tnorm", default=None,
                        help=f"structure name ({', '.join(STRUCTURE_NAMES)}); "
                             f"defaults to ${ENV_TNORM} or godel")
    parser.add_argument("--eps", type=float, default=DEFAULT_EPS,
                        help="comparison tolerance")
    parser.add_argument("--output", default=None, help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzbound",
                     description="Depth-bounded fuzzy (bi)simulations between "
                                 "finite fuzzy automata")
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("dbsim", parents=[], help="depth-bounded fuzzy simulation")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    _add_common(p)

    p = commands.add_parser("dbbisim", help="depth-bounded fuzzy bisimulation")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    _add_common(p)

    p = commands.add_parser("greatest",
                            help="greatest fuzzy (bi)simulation via fixpoint iteration")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--mode", choices=["sim", "bisim"], default="sim")
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--trace", action="store_true")
    _add_common(p)

    p = commands.add_parser("check", help="check a relation or chain against the definitions")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--relation", required=True)
    p.add_argument("--mode", choices=["sim", "bisim", "dbsim", "dbbisim"],
                   required=True)
    _add_common(p)

    p = commands.add_parser("lang", help="evaluate the recognized fuzzy language")
    p.add_argument("--left", required=True, help="automaton file")
    p.add_argument("--word", default=None, help="space-separated symbol names")
    p.add_argument("--max-len", type=int, default=None)
    _add_common(p)

    p = commands.add_parser("formula", help="evaluate a formula on an automaton")
    p.add_argument("--left", required=True, help="automaton file")
    p.add_argument("--expr", required=True)
    _add_common(p)

    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    tnorm = args.tnorm or os.environ.get(ENV_TNORM) or "godel"
    return CliConfig(
        tnorm=tnorm,
        eps_cmp=args.eps,
        max_iters=getattr(args, "max_iters", 1000),
        tol=getattr(args, "tol", 1e-9),
        word_cap=DEFAULT_WORD_CAP,
        output=args.output,
    )


def _cmd_depth_bounded(args: argparse.Namespace, config: CliConfig,
                       bisim: bool) -> int:
    st = config.structure()
    left = _load_automaton(args.left)
    right = _load_automaton(args.right)
    if args.depth < 0:
        raise InputFormatError("--depth must be >= 0")
    compute = compute_dbbisim if bisim else compute_dbsim
    result = compute(st, left, right, args.depth, trace=args.trace)
    _emit(_result_doc(result, left, right), config.output)
    return EXIT_OK


def _cmd_greatest(args: argparse.Namespace, config: CliConfig) -> int:
    st = config.structure()
    left = _load_automaton(args.left)
    right = _load_automaton(args.right)
    if config.max_iters < 1:
        raise InputFormatError("--max-iters must be >= 1")
    result = greatest_fixpoint(st, left, right, args.mode,
                               max_iters=config.max_iters, tol=config.tol,
                               trace=args.trace)
    _emit(_result_doc(result, left, right), config.output)
    return EXIT_OK


def _load_prefix(doc) -> list[FuzzyRelation]:
    if isinstance(doc, dict) and "trace" in doc:
        doc = doc["trace"]
    if isinstance(doc, dict):
        return [relation_from_json(doc)]
    if isinstance(doc, list):
        if not doc:
            raise InputFormatError("prefix file contains no relations")
        return [relation_from_json(item) for item in doc]
    raise InputFormatError("relation file must hold an object or an array")


def _cmd_check(args: argparse.Namespace, config: CliConfig) -> int:
    st = config.structure()
    left = _load_automaton(args.left)
    right = _load_automaton(args.right)
    doc = _load_json(args.relation)
    if args.mode in ("sim", "bisim"):
        if not isinstance(doc, dict) or "trace" in doc:
            raise InputFormatError(
                f"--mode {args.mode} expects a single relation object")
        rel = relation_from_json(doc)
        checker = check_sim if args.mode == "sim" else check_bisim
        ok = checker(st, left, right, rel)
    else:
        prefix = _load_prefix(doc)
        checker = check_dbsim_prefix if args.mode == "dbsim" else check_dbbisim_prefix
        ok = checker(st, left, right, prefix)
    _emit({"mode": args.mode, "ok": ok}, config.output)
    return EXIT_OK


def _cmd_lang(args: argparse.Namespace, config: CliConfig) -> int:
    st = config.structure()
    automaton = _load_automaton(args.left)
    if (args.word is None) == (args.max_len is None):
        raise InputFormatError("lang needs exactly one of --word or --max-len")
    if args.word is not None:
        names = args.word.split()
        word = word_from_names(automaton, names)
        degree = language_eval(st, automaton, word)
        _emit({"word": names, "degree": degree}, config.output)
        return EXIT_OK
    if args.max_len < 0:
        raise InputFormatError("--max-len must be >= 0")
    table = language_bounded(st, automaton, args.max_len, cap=config.word_cap)
    language = {
        " ".join(automaton.alphabet[s] for s in word): degree
        for word, degree in table.items()
    }
    _emit({"max_len": args.max_len, "language": language}, config.output)
    return EXIT_OK


def _cmd_formula(args: argparse.Namespace, config: CliConfig) -> int:
    st = config.structure()
    automaton = _load_automaton(args.left)
    formula = parse_formula(args.expr)
    values = eval_formula(st, automaton, formula)
    _emit({
        "formula": format_formula(formula),
        "values": {automaton.state_names[i]: v
                   for i, v in enumerate(values.degrees)},
    }, config.output)
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config(args)
        if args.command == "dbsim":
            return _cmd_depth_bounded(args, config, bisim=False)
        if args.command == "dbbisim":
            return _cmd_depth_bounded(args, config, bisim=True)
        if args.command == "greatest":
            return _cmd_greatest(args, config)
        if args.command == "check":
            return _cmd_check(args, config)
        if args.command == "lang":
            return _cmd_lang(args, config)
        if args.command == "formula":
            return _cmd_formula(args, config)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        print(f"fuzzbound: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputFormatError, FormulaSyntaxError, DegreeRangeError) as exc:
        print(f"fuzzbound: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AlphabetMismatch, DimensionMismatch, UnknownSymbol, DialectError) as exc:
        print(f"fuzzbound: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except WordCapExceeded as exc:
        print(f"fuzzbound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FuzzboundError as exc:
        print(f"fuzzbound: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"fuzzbound: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
