"""Command-line front end.

Subcommands: enumerate | index | estimate | verify-axioms | partition-vectors.
Every JSON report embeds a run manifest (tool version, subcommand, input
digest and the fully resolved configuration); identical manifests produce
bit-identical reports.  Exit codes: 0 success, 2 validation error,
3 capacity error, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .axioms import (
    AXIOM_IDS,
    CHARACTERIZING,
    axioms_for,
    check_axiom,
    partition_game,
)
from .coalition import members_of
from .enumeration import (
    MINIMAL,
    QUASI_MINIMAL,
    minimal_causes,
    quasi_minimal_causes,
)
from .errors import (
    EXIT_INTERNAL,
    EXIT_OK,
    CausalPowerError,
    InvalidArgumentError,
    ValidationError,
)
from .fileio import LoadedSource, load_source, sha256_hex
from .indices import INDEX_KINDS, RAW, SCALES, compute_index
from .sampling import ESTIMATOR_KINDS, SamplingConfig, estimate

try:  # single source of truth is package metadata
    from importlib.metadata import version as _dist_version

    TOOL_VERSION = _dist_version("causalpower")
except Exception:  # pragma: no cover - metadata missing in odd installs
    TOOL_VERSION = "0.1.0"

WORKERS_ENV = "CAUSALPOWER_WORKERS"


def _check_workers_env() -> None:
    """Worker-count override: validated, but with no semantic effect."""
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return
    try:
        workers = int(raw)
    except ValueError:
        raise ValidationError(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    if workers < 1:
        raise ValidationError(f"{WORKERS_ENV} must be at least 1, got {workers}")


def render_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _manifest(subcommand: str, path: str, data: bytes, config: dict) -> dict:
    return {
        "tool_version": TOOL_VERSION,
        "subcommand": subcommand,
        "inputs": [{"path": path, "sha256": sha256_hex(data)}],
        "config": config,
    }


def _load(path: str) -> tuple[LoadedSource, bytes]:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}")
    source = load_source(path)
    return source, data


def _value_entry(name: str, value: Fraction) -> dict:
    return {"feature": name, "fraction": str(value), "decimal": float(value)}


def _cause_ids(mask: int) -> list[int]:
    return [i + 1 for i in members_of(mask)]


# ---------------------------------------------------------------------------
# report builders (shared with the scripting bindings)


def build_enumerate_report(source: LoadedSource, kind: str, path: str, data: bytes) -> dict:
    if kind == MINIMAL:
        family = minimal_causes(source.game)
    elif kind == QUASI_MINIMAL:
        family = quasi_minimal_causes(source.game)
    else:
        raise InvalidArgumentError(f"unknown enumeration kind {kind!r}")
    report = {
        "manifest": _manifest("enumerate", path, data, {"kind": kind}),
        "kind": kind,
        "n": source.game.n,
        "features": list(source.names),
        "causes": [_cause_ids(m) for m in family.causes],
        "count": len(family.causes),
    }
    if kind == QUASI_MINIMAL:
        report["critical"] = {
            ",".join(str(i) for i in _cause_ids(m)): _cause_ids(family.critical[m])
            for m in family.causes
        }
    return report


def build_index_report(
    source: LoadedSource, kind: str, scale: str, path: str, data: bytes
) -> dict:
    vector = compute_index(source.game, kind, scale)
    return {
        "manifest": _manifest("index", path, data, {"kind": kind, "scale": scale}),
        "kind": vector.kind,
        "scale": vector.scale,
        "n": vector.n,
        "values": [
            _value_entry(source.names[i], vector[i]) for i in range(vector.n)
        ],
    }


def build_estimate_report(
    source: LoadedSource, kind: str, config: SamplingConfig, path: str, data: bytes
) -> dict:
    report = estimate(source.game, kind, config)
    manifest_config = {
        "kind": kind,
        "epsilon": config.epsilon,
        "delta": config.delta,
        "samples": config.samples,
        "seed": config.seed,
        "exhaustive": config.exhaustive,
        "resolved_m": report.m,
    }
    return {
        "manifest": _manifest("estimate", path, data, manifest_config),
        "kind": report.kind,
        "n": report.n,
        "m": report.m,
        "seed": report.seed,
        "epsilon": report.epsilon,
        "delta": report.delta,
        "exhaustive": report.exhaustive,
        "oracle_calls": report.oracle_calls,
        "estimates": [
            _value_entry(source.names[i], report.estimates[i]) for i in range(report.n)
        ],
        "hits": list(report.hits),
    }


def build_verify_report(index_kind: str, axioms: Sequence[str], trials: int, seed: int) -> dict:
    results = []
    for axiom in axioms:
        check = check_axiom(index_kind, axiom, trials=trials, seed=seed)
        results.append(
            {
                "axiom": check.axiom,
                "index": check.index_kind,
                "verdict": check.verdict,
                "trials": check.trials,
                "witness": check.witness,
            }
        )
    return {
        "manifest": {
            "tool_version": TOOL_VERSION,
            "subcommand": "verify-axioms",
            "inputs": [],
            "config": {
                "index": index_kind,
                "axioms": list(axioms),
                "trials": trials,
                "seed": seed,
            },
        },
        "results": results,
    }


def build_partition_report(values: Sequence[int]) -> dict:
    game, expectation = partition_game(values)
    family = minimal_causes(game)
    marker = expectation.marker_feature
    marker_causes = [m for m in family.causes if m >> marker & 1]
    eta_raw = Fraction(len(marker_causes), 1 << (expectation.n - 1))
    return {
        "manifest": {
            "tool_version": TOOL_VERSION,
            "subcommand": "partition-vectors",
            "inputs": [],
            "config": {"values": list(expectation.values)},
        },
        "values": list(expectation.values),
        "total": expectation.total,
        "even": expectation.even,
        "n": expectation.n,
        "marker_feature": marker + 1,
        "expected_count": expectation.expected_count,
        "enumerated_count": len(marker_causes),
        # The count identity is the even-total branch of the reduction; odd
        # totals answer NO before the game is consulted.
        "match": (len(marker_causes) == expectation.expected_count)
        if expectation.even
        else None,
        "marker_holler_packel_raw": {
            "fraction": str(eta_raw),
            "decimal": float(eta_raw),
        },
        "game": {
            "type": "weighted_voting",
            "weights": [str(w) for w in game.weights],
            "threshold": str(game.threshold),
        },
    }


# ---------------------------------------------------------------------------
# table rendering


def _render_values_table(entries, header: str) -> str:
    ordered = sorted(
        enumerate(entries), key=lambda kv: (-Fraction(kv[1]["fraction"]), kv[0])
    )
    width = max(len("feature"), *(len(e["feature"]) for _, e in ordered))
    lines = [f"{'feature':<{width}}  {header}"]
    for _, entry in ordered:
        lines.append(
            f"{entry['feature']:<{width}}  {entry['decimal']:< 12.6g} ({entry['fraction']})"
        )
    return "\n".join(lines) + "\n"


def _render_enumerate_table(report: dict) -> str:
    names = report["features"]
    lines = [f"{report['kind']} causes: {report['count']}"]
    for cause in report["causes"]:
        label = "{" + ",".join(names[i - 1] for i in cause) + "}"
        if "critical" in report:
            key = ",".join(str(i) for i in cause)
            crit = "{" + ",".join(names[i - 1] for i in report["critical"][key]) + "}"
            lines.append(f"{label}  critical={crit}")
        else:
            lines.append(label)
    return "\n".join(lines) + "\n"


def _render_verify_table(report: dict) -> str:
    lines = []
    for result in report["results"]:
        lines.append(
            f"{result['index']}  {result['axiom']:<5} {result['verdict']}"
            + ("" if result["witness"] is None else f"  witness={json.dumps(result['witness'], sort_keys=True)}")
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causalpower",
        description="Causal explanations of binary classifier decisions: "
        "minimal causes and power indices.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_enum = sub.add_parser("enumerate", help="enumerate minimal or quasi-minimal causes")
    p_enum.add_argument("input", help="game or causal-model JSON file")
    p_enum.add_argument("--kind", choices=(MINIMAL, QUASI_MINIMAL), default=MINIMAL)
    p_enum.add_argument("--format", choices=("json", "table"), default="json")

    p_index = sub.add_parser("index", help="compute an exact power index")
    p_index.add_argument("input", help="game or causal-model JSON file")
    p_index.add_argument("--kind", choices=INDEX_KINDS, required=True)
    p_index.add_argument(
        "--scale",
        choices=SCALES,
        default=RAW,
        help="raw keeps the 1/2^(n-1) factor where the index defines one",
    )
    p_index.add_argument("--format", choices=("json", "table"), default="json")

    p_est = sub.add_parser("estimate", help="Monte Carlo index estimation")
    p_est.add_argument("input", help="game or causal-model JSON file")
    p_est.add_argument("--kind", choices=ESTIMATOR_KINDS, required=True)
    p_est.add_argument("--epsilon", type=float, default=None)
    p_est.add_argument("--delta", type=float, default=None)
    p_est.add_argument(
        "--samples", type=int, default=None, help="explicit sample count (overrides the bound)"
    )
    p_est.add_argument("--seed", type=int, default=0)
    p_est.add_argument(
        "--exhaustive",
        action="store_true",
        help="iterate every coalition once instead of sampling",
    )
    p_est.add_argument("--format", choices=("json", "table"), default="json")

    p_ver = sub.add_parser("verify-axioms", help="run randomized axiom checks")
    p_ver.add_argument("--index", required=True, help="index procedure to check")
    p_ver.add_argument(
        "--axioms",
        default=None,
        help="comma-separated axiom ids (default: all applicable)",
    )
    p_ver.add_argument("--trials", type=int, default=200)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--format", choices=("json", "table"), default="json")

    p_part = sub.add_parser(
        "partition-vectors", help="PARTITION-reduction test vector for a multiset"
    )
    p_part.add_argument("values", type=int, nargs="+", help="positive integers")
    p_part.add_argument("--format", choices=("json", "table"), default="json")

    return parser


def _dispatch(args) -> str:
    if args.subcommand == "enumerate":
        source, data = _load(args.input)
        report = build_enumerate_report(source, args.kind, args.input, data)
        if args.format == "table":
            return _render_enumerate_table(report)
        return render_json(report)
    if args.subcommand == "index":
        source, data = _load(args.input)
        report = build_index_report(source, args.kind, args.scale, args.input, data)
        if args.format == "table":
            return _render_values_table(report["values"], f"{args.kind} ({report['scale']})")
        return render_json(report)
    if args.subcommand == "estimate":
        source, data = _load(args.input)
        config = SamplingConfig(
            epsilon=args.epsilon,
            delta=args.delta,
            samples=args.samples,
            seed=args.seed,
            exhaustive=args.exhaustive,
        )
        report = build_estimate_report(source, args.kind, config, args.input, data)
        if args.format == "table":
            return _render_values_table(
                report["estimates"], f"{args.kind} estimate (m={report['m']})"
            )
        return render_json(report)
    if args.subcommand == "verify-axioms":
        if args.axioms is None:
            axioms = list(axioms_for(args.index)) or list(
                CHARACTERIZING.get(args.index, ())
            )
            if not axioms:
                raise InvalidArgumentError(f"no axioms apply to index {args.index!r}")
        else:
            axioms = [a.strip() for a in args.axioms.split(",") if a.strip()]
            unknown = [a for a in axioms if a not in AXIOM_IDS]
            if unknown:
                raise InvalidArgumentError(f"unknown axiom ids: {unknown}")
        report = build_verify_report(args.index, axioms, args.trials, args.seed)
        if args.format == "table":
            return _render_verify_table(report)
        return render_json(report)
    if args.subcommand == "partition-vectors":
        report = build_partition_report(args.values)
        if args.format == "table":
            return (
                f"A={report['values']} W={report['total']} "
                f"count={report['expected_count']} enumerated={report['enumerated_count']} "
                f"match={report['match']}\n"
            )
        return render_json(report)
    raise InvalidArgumentError(f"unknown subcommand {args.subcommand!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _check_workers_env()
        sys.stdout.write(_dispatch(args))
        return EXIT_OK
    except CausalPowerError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - anything else is an internal bug
        sys.stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
