"""Command-line interface: ``oracle``, ``run``, ``scenarios``, ``summarize``.

Option precedence, lowest to highest: built-in defaults, a ``--config``
JSON document, explicit flags. All randomness is governed by ``--seed``;
the backend selection environment variable changes only which
implementation computes the (identical) results.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .core import (
    InstanceFormatError,
    KnapsackInstance,
    bundled_instance_path,
    dp_optimal,
    load_instance,
)
from .engine import GaConfig, run_ga
from .experiments import (
    SCENARIO_SEED_STRIDE,
    SCENARIOS,
    ScenarioReport,
    TraceFormatError,
    TraceRecord,
    read_trace_rows,
    run_all,
    scenario_by_id,
    scenario_seed_base,
    summarize_trace_rows,
    write_report_csv,
    write_traces_csv,
)

# argparse dest -> GaConfig document key, for flags that override config
# fields. Values pass through except crossover, whose CLI spelling is
# hyphenated.
_CONFIG_FLAGS = {
    "seed": "seed",
    "generations": "generations",
    "pop_size": "population_size",
    "mutation_rate": "mutation_rate",
    "mutation_scope": "mutation_scope",
    "crossover_rate": "crossover_rate",
    "crossover": "crossover",
    "selection": "selection",
    "tournament_size": "tournament_size",
    "elitism": "elitism",
}


def _parse_scenario_ids(text: str) -> list[int]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("scenario list is empty")
    ids = []
    for part in parts:
        try:
            value = int(part)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad scenario id: {part!r}") from None
        if not 1 <= value <= 6:
            raise argparse.ArgumentTypeError(f"scenario id must be in 1..6: {value}")
        if value not in ids:
            ids.append(value)
    return ids


def _seed_type(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 bits: {value}")
    return value


def _add_instance_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--instance",
        type=Path,
        default=None,
        help="instance JSON file (default: the bundled benchmark instance)",
    )


def _add_config_flags(parser: argparse.ArgumentParser, operators: bool) -> None:
    parser.add_argument("--seed", type=_seed_type, default=None, help="run seed (u64)")
    parser.add_argument("--generations", type=int, default=None)
    parser.add_argument("--pop-size", type=int, default=None, help="population size")
    parser.add_argument("--mutation-rate", type=float, default=None)
    parser.add_argument("--mutation-scope", choices=["chromosome", "gene"], default=None)
    parser.add_argument("--crossover-rate", type=float, default=None)
    parser.add_argument("--elitism", type=int, default=None)
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        help="JSON file of config fields; explicit flags override it",
    )
    if operators:
        parser.add_argument("--crossover", choices=["one-point", "two-point"], default=None)
        parser.add_argument(
            "--selection", choices=["rank", "roulette", "tournament"], default=None
        )
        parser.add_argument("--tournament-size", type=int, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knapsack-ga",
        description="Genetic-algorithm benchmark for the 0/1 knapsack problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_oracle = sub.add_parser(
        "oracle", help="print the exact optimum and a witness item set"
    )
    _add_instance_flag(p_oracle)

    p_run = sub.add_parser("run", help="one seeded GA run; writes a trace CSV")
    _add_instance_flag(p_run)
    _add_config_flags(p_run, operators=True)
    p_run.add_argument("--output", type=Path, default=Path("."), help="output directory")

    p_scen = sub.add_parser(
        "scenarios", help="run the six-scenario suite; writes trace and report CSVs"
    )
    _add_instance_flag(p_scen)
    _add_config_flags(p_scen, operators=False)
    p_scen.add_argument(
        "--scenarios",
        type=_parse_scenario_ids,
        default=list(range(1, 7)),
        metavar="IDS",
        help="comma-separated scenario ids from 1..6 (default: all six)",
    )
    p_scen.add_argument(
        "--replications", type=int, default=200, help="runs per scenario (default 200)"
    )
    p_scen.add_argument("--output", type=Path, default=Path("."), help="output directory")

    p_sum = sub.add_parser(
        "summarize", help="recompute a report CSV from trace CSVs"
    )
    p_sum.add_argument("traces", type=Path, nargs="+", help="trace CSV files")
    _add_instance_flag(p_sum)
    p_sum.add_argument("--output", type=Path, default=Path("."), help="output directory")

    return parser


def _load_instance_arg(path: Path | None) -> KnapsackInstance:
    return load_instance(bundled_instance_path() if path is None else path)


def _build_config(args: argparse.Namespace) -> GaConfig:
    doc: dict[str, Any] = {}
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            try:
                loaded = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{args.config}: not valid JSON: {exc}") from None
        if not isinstance(loaded, dict):
            raise ValueError(f"{args.config}: expected a JSON object")
        doc.update(loaded)
    for dest, key in _CONFIG_FLAGS.items():
        value = getattr(args, dest, None)
        if value is not None:
            doc[key] = value.replace("-", "_") if key == "crossover" else value
    return GaConfig.from_dict(doc)


def _print_wrote(path: Path) -> None:
    print(f"wrote {path}")


def _cmd_oracle(args: argparse.Namespace) -> int:
    instance = _load_instance_arg(args.instance)
    optimum, witness = dp_optimal(instance)
    items = witness.items()
    weight = sum(instance.weights[i] for i in items)
    print(f"optimum: {optimum}")
    print("items:" + "".join(f" {i}" for i in items))
    print(f"weight: {weight} (capacity {instance.capacity})")
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    instance = _load_instance_arg(args.instance)
    config = _build_config(args)
    optimum = dp_optimal(instance)[0]
    trace = run_ga(instance, config, optimum)
    args.output.mkdir(parents=True, exist_ok=True)
    out = args.output / "trace.csv"
    write_traces_csv(
        [TraceRecord(scenario_id=0, replication=0, seed=config.seed, trace=trace)], out
    )
    if trace.first_hit is None:
        print(f"no first hit within {config.generations} generations (optimum {optimum})")
    else:
        print(f"first hit at generation {trace.first_hit} (optimum {optimum})")
    _print_wrote(out)
    return 0


_TABLE_COLUMNS = (
    ("scenario", lambda r: str(r.scenario_id)),
    ("crossover", lambda r: r.crossover),
    ("selection", lambda r: r.selection),
    ("runs", lambda r: str(r.replications)),
    ("successes", lambda r: str(r.success_count)),
    ("rate", lambda r: format(r.success_rate, ".3f")),
    (
        "median_hit",
        lambda r: "-" if r.first_hit_median is None else format(r.first_hit_median, ".1f"),
    ),
    ("final_best_mean", lambda r: format(r.best_final_fitness_mean, ".2f")),
)


def _print_table(reports: Sequence[ScenarioReport]) -> None:
    rows = [[name for name, _ in _TABLE_COLUMNS]]
    rows += [[fmt(r) for _, fmt in _TABLE_COLUMNS] for r in reports]
    widths = [max(len(row[c]) for row in rows) for c in range(len(_TABLE_COLUMNS))]
    for row in rows:
        print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))


def _cmd_scenarios(args: argparse.Namespace) -> int:
    instance = _load_instance_arg(args.instance)
    config = _build_config(args)
    if args.replications < 1:
        raise ValueError(f"replications must be >= 1, got {args.replications}")
    scenarios = [scenario_by_id(i) for i in args.scenarios]
    reports, records = run_all(
        instance, config, args.replications, config.seed, scenarios=scenarios
    )
    args.output.mkdir(parents=True, exist_ok=True)
    _print_table(reports)
    written = []
    for scenario in sorted(scenarios, key=lambda s: s.id):
        path = args.output / f"scenario_{scenario.id}_traces.csv"
        write_traces_csv(
            [r for r in records if r.scenario_id == scenario.id], path
        )
        written.append(path)
    report_path = args.output / "report.csv"
    write_report_csv(reports, report_path)
    written.append(report_path)
    metadata = {
        "instance": str(args.instance) if args.instance else "bundled",
        "base_config": config.to_dict(),
        "seed0": config.seed,
        "replications": args.replications,
        "scenario_seed_stride": SCENARIO_SEED_STRIDE,
        "seed_formula": (
            "seed = (seed0 + scenario_id * scenario_seed_stride + replication)"
            " mod 2**64"
        ),
        "scenarios": [
            {
                "id": s.id,
                "crossover": s.crossover,
                "selection": s.selection,
                "seed_base": scenario_seed_base(config.seed, s.id),
            }
            for s in sorted(scenarios, key=lambda s: s.id)
        ],
    }
    metadata_path = args.output / "metadata.json"
    with open(metadata_path, "w", encoding="utf-8") as fh:
        json.dump(metadata, fh, indent=2)
        fh.write("\n")
    written.append(metadata_path)
    for path in written:
        _print_wrote(path)
    return 0


def _cmd_summarize(args: argparse.Namespace) -> int:
    instance = _load_instance_arg(args.instance)
    optimum = dp_optimal(instance)[0]
    rows = []
    for path in args.traces:
        rows.extend(read_trace_rows(path))
    reports = summarize_trace_rows(rows, optimum)
    args.output.mkdir(parents=True, exist_ok=True)
    report_path = args.output / "report.csv"
    write_report_csv(reports, report_path)
    if reports:
        _print_table(reports)
    _print_wrote(report_path)
    return 0


_COMMANDS = {
    "oracle": _cmd_oracle,
    "run": _cmd_run,
    "scenarios": _cmd_scenarios,
    "summarize": _cmd_summarize,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (
        InstanceFormatError,
        TraceFormatError,
        FileNotFoundError,
        ValueError,
        RuntimeError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
