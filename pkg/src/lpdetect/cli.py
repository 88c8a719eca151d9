"""Command line entry points: ``analyze``, ``sweep`` and ``classify``.

Every command that writes results also writes a ``*.manifest.json`` next to
them holding the full configuration and the SHA-256 of each output, so
``lpdetect replay <manifest>`` can regenerate and verify them.

Exit codes: 0 success, 2 input error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import warnings
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .dataio import DatasetOptions, load_signal_matrix
from .detector import DetectionReport, detect, sample_covariance
from .filters import FilterSetting, classify_lowpass, response_from_dict
from .graph import GsoKind, is_connected, load_edge_list, shift_operator
from .simulate import SWEEP_AXES, SweepResult, TrialConfig, sweep
from .spectral import order_spectrum
from .svg import Series, line_chart

__all__ = [
    "ConfigError",
    "RunManifest",
    "SWEEP_SCHEMA",
    "default_out_dir",
    "validate_sweep_config",
    "cmd_analyze",
    "cmd_sweep",
    "cmd_classify",
    "replay",
    "main",
]

OUT_ENV = "LPDETECT_OUT"
EXIT_OK, EXIT_INPUT, EXIT_NUMERIC = 0, 2, 3


class ConfigError(ValueError):
    """A sweep configuration failed schema validation."""


SWEEP_SCHEMA = {
    "type": "object",
    "required": ["axis", "grid"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "axis": {"enum": list(SWEEP_AXES)},
        "grid": {"type": "array", "minItems": 1, "items": {"type": "number", "minimum": 0}},
        "settings": {
            "type": "array",
            "minItems": 1,
            "uniqueItems": True,
            "items": {"enum": [s.value for s in FilterSetting]},
        },
        "n": {"type": "integer", "minimum": 2},
        "m": {"type": "integer", "minimum": 1},
        "sigma2": {"type": "number", "minimum": 0},
        "trials": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "fixed_graph": {"type": "boolean"},
    },
}


def default_out_dir() -> Path:
    return Path(os.environ.get(OUT_ENV, "lpdetect-out"))


def _sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class RunManifest:
    command: str
    config: dict
    seed: int | None = None
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    warnings: list = field(default_factory=list)
    outputs: dict = field(default_factory=dict)

    def add_output(self, path) -> None:
        self.outputs[Path(path).name] = _sha256(path)

    def write(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(asdict(self), fh, indent=2)
            fh.write("\n")

    @classmethod
    def read(cls, path) -> "RunManifest":
        with open(path) as fh:
            return cls(**json.load(fh))


def _write_text(path, text):
    with open(path, "w", newline="") as fh:
        fh.write(text)


def _write_json(path, obj):
    _write_text(path, json.dumps(obj, indent=2) + "\n")


# --- analyze -----------------------------------------------------------------


def cmd_analyze(path, opts: DatasetOptions = DatasetOptions(), out_dir=None) -> DetectionReport:
    """Score every sample-covariance eigenvector of a signal CSV and decide.

    Writes ``<stem>.report.json``, ``<stem>.profile.csv`` (frequency index,
    eigenvalue, l2 and l-inf scores), ``<stem>.profile.svg`` and
    ``<stem>.manifest.json`` into ``out_dir``.
    """
    path = Path(path)
    out = Path(out_dir) if out_dir is not None else default_out_dir()
    y = load_signal_matrix(path, opts)
    rep = detect(sample_covariance(y, center=opts.center))

    out.mkdir(parents=True, exist_ok=True)
    stem = path.stem
    manifest = RunManifest("analyze", {"path": str(path.resolve()), **asdict(opts)})
    if rep.ambiguous:
        manifest.warnings.append(
            f"{len(rep.near_positive)} eigenvectors are close to sign-uniform "
            f"(indices {rep.near_positive}); the decision may be unreliable"
        )

    report_path = out / f"{stem}.report.json"
    _write_json(report_path, {**rep.to_dict(), "n": y.n, "m": y.m})

    csv_path = out / f"{stem}.profile.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["i", "eigenvalue", "score", "score_inf"])
        for i, (ev, s, si) in enumerate(zip(rep.eigenvalues, rep.scores, rep.scores_inf), start=1):
            writer.writerow([i, repr(float(ev)), repr(float(s)), repr(float(si))])

    idx = np.arange(1, y.n + 1)
    svg_path = out / f"{stem}.profile.svg"
    _write_text(
        svg_path,
        line_chart(
            [Series("l2 score", idx, rep.scores), Series("l-inf score", idx, rep.scores_inf)],
            xlabel="graph frequency i",
            ylabel="score",
            title=f"{stem}: decision {rep.decision.value}",
            logx=True,
        ),
    )
    for p in (report_path, csv_path, svg_path):
        manifest.add_output(p)
    manifest.write(out / f"{stem}.manifest.json")
    return rep


# --- sweep -------------------------------------------------------------------


def validate_sweep_config(cfg) -> dict:
    """Check a sweep config against :data:`SWEEP_SCHEMA`.

    Raises
    ------
    ConfigError
        Listing every violation as ``<json-pointer>: <message>``.
    """
    validator = jsonschema.Draft202012Validator(SWEEP_SCHEMA)
    errors = sorted(validator.iter_errors(cfg), key=lambda e: list(e.absolute_path))
    if errors:
        lines = ["/" + "/".join(str(p) for p in e.absolute_path) + ": " + e.message for e in errors]
        raise ConfigError("invalid sweep config:\n  " + "\n  ".join(lines))
    return cfg


def _sweep_charts(res: SweepResult):
    colors = ["#1f4fd1", "#d12a1f", "#1f8a3a", "#222222"]
    logx = min(res.values) > 0
    err, score = [], []
    for k, s in enumerate(res.settings):
        c = colors[k % len(colors)]
        err.append(Series(f"{s} l2", res.values, res.error_l2[k], color=c))
        err.append(Series(f"{s} l-inf", res.values, res.error_linf[k], dashed=True, color=c))
        score.append(Series(f"{s} T0", res.values, res.score_t0[k], color=c))
        score.append(Series(f"{s} T1", res.values, res.score_t1[k], dashed=True, color=c))
    return (
        line_chart(err, xlabel=res.axis, ylabel="error rate", logx=logx),
        line_chart(score, xlabel=res.axis, ylabel="mean top score", logx=logx),
    )


def cmd_sweep(config, out_dir=None, threads: int = 1) -> SweepResult:
    """Run a Monte-Carlo sweep described by a JSON config (path or dict).

    Writes ``<name>.csv``, ``<name>.json``, ``<name>.error.svg``,
    ``<name>.score.svg`` and ``<name>.manifest.json``.
    """
    if not isinstance(config, dict):
        with open(config) as fh:
            try:
                config = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"{config}: not valid JSON: {exc}") from None
    config = validate_sweep_config(dict(config))
    name = config.get("name", "sweep")
    base = TrialConfig(
        **{k: config[k] for k in ("n", "m", "sigma2", "trials", "seed", "fixed_graph") if k in config}
    )
    settings = config.get("settings", [s.value for s in FilterSetting])
    res = sweep(base, config["axis"], config["grid"], settings, workers=threads)

    out = Path(out_dir) if out_dir is not None else default_out_dir()
    out.mkdir(parents=True, exist_ok=True)
    manifest = RunManifest("sweep", config, seed=base.seed)
    if base.trials == 1:
        manifest.warnings.append("high variance: trials=1, averages are single draws")
    paths = [out / f"{name}.csv", out / f"{name}.json", out / f"{name}.error.svg", out / f"{name}.score.svg"]
    res.write_csv(paths[0])
    res.write_json(paths[1])
    err_svg, score_svg = _sweep_charts(res)
    _write_text(paths[2], err_svg)
    _write_text(paths[3], score_svg)
    for p in paths:
        manifest.add_output(p)
    manifest.write(out / f"{name}.manifest.json")
    return res


# --- classify ----------------------------------------------------------------


def cmd_classify(graph_path, response, K: int, gso=None) -> dict:
    """Lowpass verdict for a response on a user-supplied graph.

    ``response`` is a dict, a JSON string or a path to a JSON file. The shift
    operator comes from the response when it names one, else from ``gso``
    (default Laplacian). A disconnected graph only triggers a warning.
    """
    g = load_edge_list(graph_path)
    if isinstance(response, (str, os.PathLike)):
        text = str(response)
        if not text.lstrip().startswith("{"):
            text = Path(response).read_text()
        response = json.loads(text)
    r = response_from_dict(response)
    kind = r.gso or GsoKind(gso or GsoKind.LAPLACIAN)
    notes = []
    if not is_connected(g):
        msg = "graph is disconnected; the Perron-Frobenius sign structure is not guaranteed"
        warnings.warn(msg)
        notes.append(msg)
    sp = order_spectrum(shift_operator(g, kind), kind)
    verdict = classify_lowpass(r, sp, K)
    return {**verdict.to_dict(), "gso": kind.value, "n": g.n, "warnings": notes}


# --- replay ------------------------------------------------------------------


def replay(manifest_path, out_dir) -> bool:
    """Re-run the command recorded in a manifest and compare output hashes."""
    man = RunManifest.read(manifest_path)
    out = Path(out_dir)
    if man.command == "analyze":
        cfg = dict(man.config)
        path = cfg.pop("path")
        cmd_analyze(path, DatasetOptions(**cfg), out)
    elif man.command == "sweep":
        cmd_sweep(man.config, out)
    else:
        raise ValueError(f"cannot replay command {man.command!r}")
    return all(_sha256(out / name) == digest for name, digest in man.outputs.items())


# --- argument parsing ----------------------------------------------------------


def _parser():
    p = argparse.ArgumentParser(prog="lpdetect", description="Blind detection of first-order lowpass graph signals.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="score a signal CSV (rows = nodes, columns = samples)")
    a.add_argument("csv")
    a.add_argument("--no-center", action="store_true", help="use the raw second-moment matrix")
    a.add_argument("--standardize", action="store_true", help="scale rows to zero mean, unit variance")
    a.add_argument("--transpose", action="store_true", help="input rows are samples")
    a.add_argument("--out", default=None, help=f"output directory (default ${OUT_ENV} or ./lpdetect-out)")

    s = sub.add_parser("sweep", help="run a Monte-Carlo sweep from a JSON config")
    s.add_argument("config")
    s.add_argument("--out", default=None)
    s.add_argument("--threads", type=int, default=1)

    c = sub.add_parser("classify", help="lowpass ratio of a response on a given graph")
    c.add_argument("--graph", required=True, help="edge list CSV: i,j[,w]")
    c.add_argument("--response", required=True, help="JSON object or file: {form, params}")
    c.add_argument("--cutoff", type=int, default=1, help="cutoff index K (1-based)")
    c.add_argument("--gso", choices=[k.value for k in GsoKind], default=None)

    r = sub.add_parser("replay", help="re-run a manifest and verify its outputs")
    r.add_argument("manifest")
    r.add_argument("--out", required=True)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "analyze":
            opts = DatasetOptions(center=not args.no_center, standardize_rows=args.standardize, transpose=args.transpose)
            rep = cmd_analyze(args.csv, opts, args.out)
            print(json.dumps({"decision": rep.decision.value, "argmin_index": rep.argmin_index, "ambiguous": rep.ambiguous}))
        elif args.command == "sweep":
            res = cmd_sweep(args.config, args.out, args.threads)
            print(f"wrote {len(res.values)} grid points x {len(res.settings)} settings")
        elif args.command == "classify":
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                verdict = cmd_classify(args.graph, args.response, args.cutoff, args.gso)
            for w in verdict["warnings"]:
                print(f"warning: {w}", file=sys.stderr)
            print(json.dumps(verdict))
        elif args.command == "replay":
            ok = replay(args.manifest, args.out)
            print("outputs match" if ok else "outputs differ")
            return EXIT_OK if ok else EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
