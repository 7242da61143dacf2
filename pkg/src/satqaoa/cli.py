"""Command-line front-end: ``satqaoa {generate,solve,compare,sweep}``.

All subcommands read one JSON config (``--config``); scalar flags override the
file, and the file overrides built-in defaults. Outputs go to ``output_dir``.
Wall-clock timings are written to ``timing.json`` only, so every other output
is byte-identical across repeated runs of the same config.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .constellation import (
    OverlapPolicy,
    build_conflict_graph,
    instance_from_dict,
    instance_to_dict,
    random_constellation,
)
from .errors import ConfigurationError, SatQaoaError, SizeLimitError
from .hamiltonian import DEFAULT_RHO
from .mwis import EXACT_MAX_NODES, MwisInstance, solve_exact, solve_greedy
from .qaoa import DEFAULT_DEPTH, DEFAULT_SHOTS, PROBABILITY_DUMP_MAX, OptimizerConfig, solve_qaoa

log = logging.getLogger("satqaoa")

METHODS = ("exact", "greedy", "qaoa")
SWEEP_AXES = ("rho", "depth", "threshold")


@dataclass
class GeneratorSpec:
    seed: int = 0
    n: int = 6
    region: float = 10.0
    radius_range: tuple = (1.0, 2.0)
    weight_range: tuple = (1.0, 5.0)
    threshold: float = 0.1


@dataclass
class RunConfig:
    instance_path: str | None = None
    generator: GeneratorSpec | None = None
    method: str = "qaoa"
    rho: float = DEFAULT_RHO
    p: int = DEFAULT_DEPTH
    optimizer: dict = field(default_factory=dict)
    shots: int = DEFAULT_SHOTS
    seed: int = 0
    output_dir: str = "out"
    sweep_axis: str | None = None
    sweep_values: list = field(default_factory=list)

    def optimizer_config(self, p: int | None = None) -> OptimizerConfig:
        settings = {"seed": self.seed, **self.optimizer, "p": self.p if p is None else p}
        return OptimizerConfig.from_dict(settings)

    def load_instance(self, threshold: float | None = None):
        """Return ``(footprints, policy)``, optionally with a replacement threshold."""
        if self.instance_path is not None:
            path = Path(self.instance_path)
            if not path.exists():
                raise ConfigurationError(f"instance file {path} does not exist")
            fps, policy = instance_from_dict(_read_json(path))
        elif self.generator is not None:
            g = self.generator
            fps = random_constellation(g.seed, g.n, g.region, tuple(g.radius_range), tuple(g.weight_range))
            policy = OverlapPolicy(g.threshold)
        else:
            raise ConfigurationError("config needs either instance.path or instance.generator")
        if threshold is not None:
            policy = OverlapPolicy(threshold)
        return fps, policy

    def mwis_instance(self, threshold: float | None = None) -> MwisInstance:
        fps, policy = self.load_instance(threshold)
        return MwisInstance(build_conflict_graph(fps, policy))


def _read_json(path: Path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON ({exc})") from None


def _write_json(path: Path, obj) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2) + "\n")


def _write_csv(path: Path, header, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = _read_json(Path(args.config)) if args.config else {}
    cfg = RunConfig()
    inst = raw.get("instance", {})
    if "path" in inst:
        cfg.instance_path = str(Path(args.config).parent / inst["path"]) if args.config else inst["path"]
    if "generator" in inst:
        try:
            cfg.generator = GeneratorSpec(**inst["generator"])
        except TypeError as exc:
            raise ConfigurationError(f"bad generator spec: {exc}") from None
    for key in ("method", "rho", "p", "optimizer", "shots", "seed", "output_dir"):
        if key in raw:
            setattr(cfg, key, raw[key])
    if "sweep" in raw:
        cfg.sweep_axis = raw["sweep"].get("axis")
        cfg.sweep_values = list(raw["sweep"].get("values", []))

    # flag > file > default
    if args.instance is not None:
        cfg.instance_path, cfg.generator = args.instance, None
    gen_flags = {"seed": args.gen_seed, "n": args.n, "threshold": args.threshold}
    if any(v is not None for v in gen_flags.values()):
        cfg.generator = replace(cfg.generator or GeneratorSpec(), **{k: v for k, v in gen_flags.items() if v is not None})
        if args.instance is None:
            cfg.instance_path = None
    for key in ("method", "rho", "p", "shots", "seed"):
        val = getattr(args, key)
        if val is not None:
            setattr(cfg, key, val)
    if args.out is not None:
        cfg.output_dir = args.out
    if getattr(args, "axis", None) is not None:
        cfg.sweep_axis = args.axis
    if getattr(args, "values", None) is not None:
        cfg.sweep_values = [v for v in args.values.split(",") if v.strip()]

    if cfg.method not in METHODS:
        raise ConfigurationError(f"method must be one of {METHODS}, got {cfg.method!r}")
    if cfg.shots < 1:
        raise ConfigurationError("shots must be >= 1")
    return cfg


def _graph_summary(graph) -> dict:
    return {"n": graph.n, "edges": graph.edge_count, "density": graph.density}


def _run_method(method: str, inst: MwisInstance, cfg: RunConfig, out: Path | None = None):
    if method == "exact":
        return solve_exact(inst)
    if method == "greedy":
        return solve_greedy(inst)
    run = solve_qaoa(inst, cfg.rho, cfg.optimizer_config(), cfg.shots, cfg.seed)
    if out is not None:
        _write_csv(out / "trace.csv", ["iteration", "best_expectation"], run.trace)
        if inst.n <= PROBABILITY_DUMP_MAX:
            _write_json(out / "probabilities.json", run.state.probability_dump())
    return run.report


def cmd_generate(cfg: RunConfig) -> dict:
    if cfg.generator is None:
        raise ConfigurationError("generate needs a generator spec (instance.generator or --n/--gen-seed)")
    out = Path(cfg.output_dir)
    fps, policy = cfg.load_instance()
    graph = build_conflict_graph(fps, policy)
    summary = _graph_summary(graph)
    _write_json(out / "instance.json", instance_to_dict(fps, policy))
    _write_json(out / "graph.json", graph.to_dict())
    _write_json(out / "summary.json", summary)
    return summary


def cmd_solve(cfg: RunConfig) -> dict:
    out = Path(cfg.output_dir)
    inst = cfg.mwis_instance()
    if cfg.method == "exact" and inst.n > EXACT_MAX_NODES:
        raise SizeLimitError(f"exact solver is limited to {EXACT_MAX_NODES} nodes, instance has {inst.n}")
    report = _run_method(cfg.method, inst, cfg, out)
    doc = report.to_dict(include_timing=False)
    _write_json(out / f"report_{cfg.method}.json", doc)
    _write_json(out / "timing.json", {f"{cfg.method}_elapsed_s": report.elapsed})
    return doc


def cmd_compare(cfg: RunConfig) -> dict:
    out = Path(cfg.output_dir)
    inst = cfg.mwis_instance()
    reports = {m: _run_method(m, inst, cfg, out if m == "qaoa" else None) for m in METHODS}
    optimum = reports["exact"].weight
    doc = {"instance": _graph_summary(inst.graph), "methods": {}}
    for m, rep in reports.items():
        entry = {
            "bits": str(rep.best),
            "weight": rep.weight,
            "feasible": rep.feasible,
            "ratio": rep.weight / optimum,
        }
        if m == "qaoa":
            entry["feasible_fraction"] = rep.metadata["feasible_fraction"]
            entry["expectation"] = rep.metadata["expectation"]
        doc["methods"][m] = entry
    _write_json(out / "compare.json", doc)
    _write_json(out / "timing.json", {f"{m}_elapsed_s": r.elapsed for m, r in reports.items()})
    return doc


def cmd_sweep(cfg: RunConfig) -> list:
    axis = cfg.sweep_axis
    if axis not in SWEEP_AXES:
        raise ConfigurationError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")
    if not cfg.sweep_values:
        raise ConfigurationError("sweep needs at least one value")
    try:
        values = [int(v) if axis == "depth" else float(v) for v in cfg.sweep_values]
    except ValueError:
        raise ConfigurationError(f"unparseable sweep values {cfg.sweep_values}") from None
    out = Path(cfg.output_dir)
    rows, timings = [], {}
    for v in values:
        inst = cfg.mwis_instance(threshold=v if axis == "threshold" else None)
        rho = v if axis == "rho" else cfg.rho
        opt = cfg.optimizer_config(p=v if axis == "depth" else None)
        run = solve_qaoa(inst, rho, opt, cfg.shots, cfg.seed)
        rep = run.report
        rows.append([v, inst.graph.edge_count, rep.weight, rep.metadata["expectation"], rep.metadata["feasible_fraction"]])
        timings[f"{axis}={v!r}"] = rep.elapsed
    _write_csv(out / f"sweep_{axis}.csv", [axis, "edges", "best_weight", "expectation", "feasible_fraction"], rows)
    _write_json(out / "timing.json", timings)
    return rows


COMMANDS = {"generate": cmd_generate, "solve": cmd_solve, "compare": cmd_compare, "sweep": cmd_sweep}


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config")
    common.add_argument("--out", help="output directory")
    common.add_argument("--instance", help="instance JSON file")
    common.add_argument("--gen-seed", type=int, help="generator seed")
    common.add_argument("--n", type=int, help="generator footprint count")
    common.add_argument("--threshold", type=float, help="overlap threshold")
    common.add_argument("--method", choices=METHODS)
    common.add_argument("--rho", type=float, help="penalty rate (>= 1)")
    common.add_argument("--p", type=int, help="QAOA depth")
    common.add_argument("--shots", type=int)
    common.add_argument("--seed", type=int, help="sampling / optimizer seed")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="satqaoa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("generate", parents=[common], help="write a random constellation instance")
    sub.add_parser("solve", parents=[common], help="solve with one method")
    sub.add_parser("compare", parents=[common], help="exact vs greedy vs qaoa")
    sw = sub.add_parser("sweep", parents=[common], help="sweep rho, depth or threshold")
    sw.add_argument("--axis", choices=SWEEP_AXES)
    sw.add_argument("--values", help="comma-separated values")
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = build_config(args)
        t0 = time.perf_counter()
        result = COMMANDS[args.command](cfg)
        log.info("%s finished in %.3fs", args.command, time.perf_counter() - t0)
    except SatQaoaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(result, indent=2))
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
