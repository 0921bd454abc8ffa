"""The ``satake`` command line.

Every invocation is turned into a :class:`JobSpec` and executed by :func:`run`,
so a job file and the equivalent flags produce identical bytes. Reports go to
stdout; progress, timings and error messages go to stderr.

Exit status: 0 success, 1 verification mismatch, 2 input error,
3 refused computation (cap exceeded or truncation not certifiable).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from . import __version__
from .acceptance import CRITERIA, ConfigError, load_config, run_criterion
from .coulomb import QuiverGaugeDatum, TruncationRefused, monopole_hilbert_series, sym_power_orbifold_series, weights_from_dims
from .kacmoody import AffineCartanDatum, AffineWeight, affine_freudenthal, eq5_weight_table, weyl_kac_multiplicity
from .lie import CartanDatum, weyl_dimension
from .poly import QSeries, format_poly
from .qchar import (
    DEFAULT_DIM_CAP,
    DEFAULT_ORDER,
    CapExceeded,
    VanishingViolation,
    lusztig_q_analog,
    verify_diagram7_corners,
    verify_eq1,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3

FORMATS = ("table", "json", "csv")
DEFAULT_DEPTH = 4
LIMIT_KEYS = ("order", "dim_cap", "depth")

# command -> (required params, optional params); "type" and "cartan" are alternatives
_CARTAN = {"type", "cartan"}
PARAMS: dict[str, tuple[set[str], set[str]]] = {
    "kostka": ({"lambda", "mu"}, _CARTAN | {"basis"}),
    "verify-eq1": ({"lambda", "mu"}, _CARTAN | {"basis", "N"}),
    "verify-diagram7": ({"lambda", "mu"}, _CARTAN | {"basis", "N"}),
    "weight-table": ({"lambda"}, _CARTAN | {"basis", "depth", "method"}),
    "affine-mult": ({"lambda", "mu"}, _CARTAN | {"basis", "depth", "mu_delta"}),
    "monopole-hs": ({"quiver"}, {"N"}),
    "sym-power": ({"ell", "k"}, {"N"}),
    "sweep": (set(), {"config"}),
}
COMMANDS = tuple(PARAMS)
_NEEDS_CARTAN = {"kostka", "verify-eq1", "verify-diagram7", "weight-table", "affine-mult"}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class JobSpec:
    command: str
    params: dict = field(default_factory=dict)
    output: str = "json"
    limits: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.command not in PARAMS:
            raise InputError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if self.output not in FORMATS:
            raise InputError(f"unknown output format {self.output!r}")
        if not isinstance(self.params, Mapping):
            raise InputError("'params' must be an object")
        if not isinstance(self.limits, Mapping):
            raise InputError("'limits' must be an object")
        for key, value in self.limits.items():
            if key not in LIMIT_KEYS:
                raise InputError(f"unknown limit {key!r}")
            if value is not None and (not isinstance(value, int) or isinstance(value, bool) or value < 0):
                raise InputError(f"limit {key!r} must be a nonnegative integer")
        required, optional = PARAMS[self.command]
        for key in self.params:
            if key not in required | optional:
                raise InputError(f"unknown parameter {key!r} for {self.command}")
        missing = sorted(required - set(self.params))
        if missing:
            raise InputError(f"missing parameter {missing[0]!r} for {self.command}")
        if self.command in _NEEDS_CARTAN and len(_CARTAN & set(self.params)) != 1:
            raise InputError(f"{self.command} needs exactly one of 'type' or 'cartan'")
        if self.params.get("basis", "fundamental") != "fundamental":
            raise InputError("parameter 'basis': weights are accepted in the fundamental basis only")

    def to_json(self) -> dict:
        return {"command": self.command, "params": dict(self.params), "output": self.output, "limits": dict(self.limits)}

    @classmethod
    def from_json(cls, doc: Mapping | str) -> JobSpec:
        """Nested ``{"command", "params", "output", "limits"}`` or flat ``{"command": ..., "type": ..., ...}``."""
        if isinstance(doc, str):
            try:
                doc = json.loads(doc)
            except json.JSONDecodeError as exc:
                raise InputError(f"job is not valid JSON: {exc}") from exc
        if not isinstance(doc, Mapping) or "command" not in doc:
            raise InputError("a job must be an object with a 'command' key")
        if not isinstance(doc.get("params", {}), Mapping):
            raise InputError("'params' must be an object")
        params = dict(doc.get("params", {}))
        for key, value in doc.items():
            if key not in ("command", "params", "output", "limits"):
                if key in params:
                    raise InputError(f"parameter {key!r} given twice")
                params[key] = value
        return cls(doc["command"], params, doc.get("output", "json"), dict(doc.get("limits", {})))


@dataclass(frozen=True)
class RunResult:
    status: int
    stdout: str
    stderr: str = ""


# --------------------------------------------------------------- parameters


def _int_list(params: Mapping, key: str) -> tuple[int, ...]:
    value = params[key]
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise InputError(f"parameter {key!r} must be a list of integers")
    return tuple(value)


def _int(params: Mapping, key: str, default: int | None = None, minimum: int = 0) -> int:
    value = params.get(key, default)
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise InputError(f"parameter {key!r} must be an integer >= {minimum}")
    return value


def _order(job: JobSpec, default: int = DEFAULT_ORDER) -> int:
    a, b = job.params.get("N"), job.limits.get("order")
    if a is not None and b is not None and a != b:
        raise InputError("parameter 'N' conflicts with limit 'order'")
    merged = {"N": a if a is not None else b if b is not None else default}
    return _int(merged, "N")


def _depth(job: JobSpec) -> int:
    a, b = job.params.get("depth"), job.limits.get("depth")
    if a is not None and b is not None and a != b:
        raise InputError("parameter 'depth' conflicts with limit 'depth'")
    return _int({"depth": a if a is not None else b if b is not None else DEFAULT_DEPTH}, "depth")


def _finite_datum(params: Mapping) -> CartanDatum:
    if "cartan" in params:
        return CartanDatum.from_json(params["cartan"])
    if not isinstance(params["type"], str):
        raise InputError("parameter 'type' must be a string such as \"A2\"")
    return CartanDatum.parse(params["type"])


def _affine_datum(params: Mapping) -> AffineCartanDatum:
    if "cartan" in params:
        return AffineCartanDatum(CartanDatum.from_json(params["cartan"]))
    if not isinstance(params["type"], str):
        raise InputError("parameter 'type' must be a string such as \"A1\"")
    return AffineCartanDatum.parse(params["type"])


def _weight(params: Mapping, key: str, size: int) -> tuple[int, ...]:
    w = _int_list(params, key)
    if len(w) != size:
        raise InputError(f"parameter {key!r} needs {size} fundamental-weight coordinates, got {len(w)}")
    return w


# ---------------------------------------------------------------- rendering


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _dump_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _graded(series: QSeries) -> tuple[str, list[int], int]:
    """Coefficients in ``t = q^2`` when only even powers occur, else in ``q``."""
    c = list(series.coeffs)
    if not any(c[1::2]):
        return "t", c[0::2], series.trunc // 2
    return "q", c, series.trunc


def _series_text(var: str, coeffs: Sequence[int], order: int) -> str:
    return f"{format_poly(coeffs, var)} + O({var}^{order + 1})"


def _render(job: JobSpec, payload: dict, table: str, csv_rows: tuple[Sequence[str], Sequence[Sequence]]) -> str:
    if job.output == "json":
        return _dump_json(payload)
    if job.output == "csv":
        return _dump_csv(*csv_rows)
    return table if table.endswith("\n") else table + "\n"


# ----------------------------------------------------------------- commands


def _check_dim(datum: CartanDatum, lam: tuple[int, ...], job: JobSpec) -> None:
    cap = job.limits.get("dim_cap", DEFAULT_DIM_CAP)
    if cap is not None and min(lam) >= 0:
        dim = weyl_dimension(datum, lam)
        if dim > cap:
            raise CapExceeded(f"dim V{list(lam)} = {dim} exceeds dimension cap {cap}")


def _cmd_kostka(job: JobSpec, progress) -> tuple[int, str]:
    datum = _finite_datum(job.params)
    lam, mu = _weight(job.params, "lambda", datum.rank), _weight(job.params, "mu", datum.rank)
    _check_dim(datum, lam, job)
    k = lusztig_q_analog(datum, lam, mu)
    payload = {
        "command": "kostka",
        "type": datum.label,
        "lambda": list(lam),
        "mu": list(mu),
        "coeffs": list(k.coeffs),
        "polynomial": str(k),
        "at_one": k(1),
    }
    rows = [(d, c) for d, c in enumerate(k.coeffs)]
    return EXIT_OK, _render(job, payload, str(k), (("degree", "coefficient"), rows))


def _cmd_verify_eq1(job: JobSpec, progress) -> tuple[int, str]:
    datum = _finite_datum(job.params)
    lam, mu = _weight(job.params, "lambda", datum.rank), _weight(job.params, "mu", datum.rank)
    _check_dim(datum, lam, job)
    report = verify_eq1(datum, lam, mu, _order(job))
    payload = dict(report.to_json(), command="verify-eq1")
    lines = [
        f"type {datum.label}  lambda {list(lam)}  mu {list(mu)}  shift {report.shift}",
        f"sections:  {report.lhs}",
        f"q-analog:  {report.rhs}",
        f"verdict:   {report.verdict}" + (f" (first mismatch at q^{report.first_mismatch})" if report.first_mismatch is not None else ""),
    ]
    rhs = report.rhs.to_series(report.order).coeffs
    rows = [(d, a, b) for d, (a, b) in enumerate(zip(report.lhs.coeffs, rhs))]
    status = EXIT_OK if report.verdict == "match" else EXIT_MISMATCH
    return status, _render(job, payload, "\n".join(lines), (("degree", "sections", "q_analog"), rows))


def _cmd_verify_diagram7(job: JobSpec, progress) -> tuple[int, str]:
    datum = _finite_datum(job.params)
    lam, mu = _weight(job.params, "lambda", datum.rank), _weight(job.params, "mu", datum.rank)
    _check_dim(datum, lam, job)
    report = verify_diagram7_corners(datum, lam, mu, _order(job))
    payload = dict(report.to_json(), command="verify-diagram7")
    corners = ("top_left", "top_right", "bottom_left", "bottom_right")
    lines = [f"type {datum.label}  lambda {list(lam)}  mu {list(mu)}"]
    lines += [f"{name:<13}{getattr(report, name)}" for name in corners]
    lines.append(f"ranks        top {report.top_rank}  bottom {report.bottom_rank}")
    lines.append(f"verdict      {payload['verdict']}")
    rows = [(d,) + tuple(getattr(report, n).coeffs[d] for n in corners) for d in range(report.top_left.trunc + 1)]
    status = EXIT_OK if report.passed else EXIT_MISMATCH
    return status, _render(job, payload, "\n".join(lines), (("degree",) + corners, rows))


def _cmd_weight_table(job: JobSpec, progress) -> tuple[int, str]:
    datum = _affine_datum(job.params)
    lam = AffineWeight(_weight(job.params, "lambda", datum.size), 0)
    method = job.params.get("method", "freudenthal")
    if method not in ("freudenthal", "weyl-kac"):
        raise InputError("parameter 'method' must be 'freudenthal' or 'weyl-kac'")
    table = eq5_weight_table(datum, lam, _depth(job), method=method)
    payload = dict(table.to_json(), command="weight-table", method=method)
    if job.output == "csv":
        return EXIT_OK, table.to_csv()
    width = max(len(str(list(r.mu.coords))) for r in table.rows)
    lines = [f"type {datum.label}  lambda {lam}  depth {table.depth}", f"{'mu_coords':<{width}}  delta_drop  multiplicity"]
    lines += [f"{str(list(r.mu.coords)):<{width}}  {r.delta_drop:>10}  {r.multiplicity:>12}" for r in table.rows]
    return EXIT_OK, _render(job, payload, "\n".join(lines), ((), ()))


def _cmd_affine_mult(job: JobSpec, progress) -> tuple[int, str]:
    datum = _affine_datum(job.params)
    lam = AffineWeight(_weight(job.params, "lambda", datum.size), 0)
    delta = job.params.get("mu_delta", 0)
    if not isinstance(delta, int) or isinstance(delta, bool):
        raise InputError("parameter 'mu_delta' must be an integer")
    mu = AffineWeight(_weight(job.params, "mu", datum.size), delta)
    depth = _depth(job)
    fr = affine_freudenthal(datum, lam, mu, depth)
    wk = weyl_kac_multiplicity(datum, lam, mu, depth)
    verdict = "match" if fr == wk else "mismatch"
    payload = {
        "command": "affine-mult",
        "type": datum.label,
        "lambda": lam.to_json(),
        "mu": mu.to_json(),
        "depth": depth,
        "freudenthal": fr,
        "weyl_kac": wk,
        "verdict": verdict,
    }
    text = f"dim V({lam})_({mu}) = {fr} (Freudenthal), {wk} (Weyl-Kac): {verdict}"
    status = EXIT_OK if fr == wk else EXIT_MISMATCH
    return status, _render(job, payload, text, (("method", "multiplicity"), [("freudenthal", fr), ("weyl-kac", wk)]))


def _weights_json(weights) -> dict:
    def enc(x):
        return x.to_json() if isinstance(x, AffineWeight) else list(x)

    return {
        "kind": weights.kind,
        "type": getattr(weights.datum, "label", None),
        "lambda": enc(weights.lam),
        "mu": enc(weights.mu),
        "node_order": list(weights.order),
    }


def _cmd_monopole_hs(job: JobSpec, progress) -> tuple[int, str]:
    quiver = QuiverGaugeDatum.from_json(job.params["quiver"])
    t_order = _order(job)
    result = monopole_hilbert_series(quiver, 2 * t_order)
    grading, coeffs, order = _graded(result.series)
    payload = {
        "command": "monopole-hs",
        "quiver": quiver.to_json(),
        "weights": _weights_json(weights_from_dims(quiver)),
        "grading": grading,
        "order": order,
        "coeffs": coeffs,
        "shells": result.shells,
        "growth": str(result.growth),
    }
    text = "1" if quiver.gauge_rank == 0 and job.output == "table" else _series_text(grading, coeffs, order)
    return EXIT_OK, _render(job, payload, text, (("degree", "coefficient"), list(enumerate(coeffs))))


def _cmd_sym_power(job: JobSpec, progress) -> tuple[int, str]:
    ell, k = _int(job.params, "ell", minimum=1), _int(job.params, "k")
    t_order = _order(job)
    grading, coeffs, order = _graded(sym_power_orbifold_series(ell, k, 2 * t_order))
    payload = {"command": "sym-power", "ell": ell, "k": k, "grading": grading, "order": order, "coeffs": coeffs}
    text = _series_text(grading, coeffs, order)
    return EXIT_OK, _render(job, payload, text, (("degree", "coefficient"), list(enumerate(coeffs))))


def _criterion_worker(args: tuple[int, dict]):
    return run_criterion(*args)


def _cmd_sweep(job: JobSpec, progress, workers: int = 1) -> tuple[int, str]:
    try:
        cfg = load_config(job.params.get("config"))
    except ConfigError as exc:
        raise InputError(f"sweep config: {exc}") from exc
    numbers = sorted(set(cfg["criteria"]))
    tasks = [(n, cfg) for n in numbers]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_criterion_worker, tasks))
    else:
        results = []
        for task in tasks:
            if progress:
                progress(f"running criterion {task[0]} ...")
            results.append(_criterion_worker(task))
    total = 0.0
    for r in results:
        total += r.seconds
        if progress:
            progress(r.line())
    if progress:
        progress(f"sweep runtime {total:.2f} s")
    passed = all(r.passed for r in results)
    payload = {"command": "sweep", "config": cfg, "criteria": [r.to_json() for r in results], "passed": passed}
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.number}  {r.name}  ({r.checked} checks)")
        lines += [f"      {f}" for f in r.failures]
    rows = [(r.number, r.passed, r.checked, len(r.failures)) for r in results]
    status = EXIT_OK if passed else EXIT_MISMATCH
    return status, _render(job, payload, "\n".join(lines), (("criterion", "passed", "checked", "failures"), rows))


HANDLERS: dict[str, Callable] = {
    "kostka": _cmd_kostka,
    "verify-eq1": _cmd_verify_eq1,
    "verify-diagram7": _cmd_verify_diagram7,
    "weight-table": _cmd_weight_table,
    "affine-mult": _cmd_affine_mult,
    "monopole-hs": _cmd_monopole_hs,
    "sym-power": _cmd_sym_power,
    "sweep": _cmd_sweep,
}
assert set(HANDLERS) == set(COMMANDS) and set(CRITERIA) == set(range(1, 8))


def run(job: JobSpec, progress: Callable[[str], None] | None = None, workers: int = 1) -> RunResult:
    """Execute one job; never raises for bad input or refusals."""
    try:
        if job.command == "sweep":
            status, out = _cmd_sweep(job, progress, workers)
        else:
            status, out = HANDLERS[job.command](job, progress)
        return RunResult(status, out)
    except (CapExceeded, TruncationRefused) as exc:
        return RunResult(EXIT_REFUSED, "", f"refused: {exc}\n")
    except VanishingViolation as exc:
        return RunResult(EXIT_MISMATCH, "", f"verification failed: {exc}\n")
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        return RunResult(EXIT_INPUT, "", f"input error: {exc}\n")


def _run_one(job: JobSpec) -> RunResult:
    return run(job)


def run_many(jobs: Sequence[JobSpec], workers: int = 1) -> list[RunResult]:
    """Run jobs, concurrently if ``workers > 1``; results come back in job order."""
    if workers <= 1 or len(jobs) <= 1:
        return [run(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_one, jobs))


# ------------------------------------------------------------------ argparse


def _parse_weight(text: str) -> list[int]:
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    try:
        return [int(x) for x in s.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _load_json_file(path: str, what: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what} {path!r}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} {path!r} is not valid JSON: {exc}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="satake", description="Weight multiplicities, q-analogs, affine tables and monopole series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=FORMATS):
        p.add_argument("--format", choices=formats, default="table")

    def cartan(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--type", help="type label such as A2, B2, G2 (affine commands also accept A1^(1))")
        g.add_argument("--cartan-file", help='JSON file with {"type": "A", "rank": 2} or {"cartan": [[2,-1],[-1,2]]}')

    for name, help_ in (
        ("kostka", "Lusztig q-analog of the weight multiplicity"),
        ("verify-eq1", "compare graded section multiplicities with the q-analog"),
        ("verify-diagram7", "compare the four corners of the graded-rank square"),
    ):
        p = sub.add_parser(name, help=help_)
        cartan(p)
        p.add_argument("--lambda", dest="lam", type=_parse_weight, required=True, help="fundamental coordinates, e.g. 1,1")
        p.add_argument("--mu", type=_parse_weight, required=True)
        if name != "kostka":
            p.add_argument("--max-deg", type=int, default=DEFAULT_ORDER, help="truncation order in q")
        p.add_argument("--dim-cap", type=int, default=None, help="refuse highest weights of larger dimension")
        common(p)

    p = sub.add_parser("weight-table", help="affine weight multiplicities down to a depth")
    cartan(p)
    p.add_argument("--lambda", dest="lam", type=_parse_weight, required=True, help="affine coordinates, node 0 first")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.add_argument("--method", choices=("freudenthal", "weyl-kac"), default="freudenthal")
    common(p)

    p = sub.add_parser("affine-mult", help="one affine multiplicity by both algorithms")
    cartan(p)
    p.add_argument("--lambda", dest="lam", type=_parse_weight, required=True)
    p.add_argument("--mu", type=_parse_weight, required=True)
    p.add_argument("--mu-delta", type=int, default=0, help="delta coefficient of mu")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    common(p)

    p = sub.add_parser("monopole-hs", help="monopole-formula Hilbert series of a quiver gauge theory")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--quiver-file", help="quiver JSON file")
    g.add_argument("--quiver", help="inline quiver JSON")
    p.add_argument("--max-deg", type=int, default=DEFAULT_ORDER, help="truncation order in t = q^2")
    common(p)

    p = sub.add_parser("sym-power", help="Hilbert series of Sym^k(C^2/(Z/l))")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-deg", type=int, default=DEFAULT_ORDER, help="truncation order in t = q^2")
    common(p)

    p = sub.add_parser("sweep", help="run the acceptance sweeps")
    p.add_argument("--config", help="JSON config overriding the default sweep bounds")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    common(p)

    p = sub.add_parser("run", help="execute a job file (one job object or a list of jobs)")
    p.add_argument("jobfile")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    params: dict = {}
    limits: dict = {}
    if getattr(args, "type", None) is not None:
        params["type"] = args.type
    if getattr(args, "cartan_file", None) is not None:
        params["cartan"] = _load_json_file(args.cartan_file, "Cartan file")
    for attr, key in (("lam", "lambda"), ("mu", "mu"), ("ell", "ell"), ("k", "k")):
        if getattr(args, attr, None) is not None:
            params[key] = getattr(args, attr)
    if args.command == "weight-table":
        params["method"] = args.method
    if args.command == "affine-mult":
        params["mu_delta"] = args.mu_delta
    if getattr(args, "quiver_file", None) is not None:
        params["quiver"] = _load_json_file(args.quiver_file, "quiver file")
    if getattr(args, "quiver", None) is not None:
        try:
            params["quiver"] = json.loads(args.quiver)
        except json.JSONDecodeError as exc:
            raise InputError(f"--quiver is not valid JSON: {exc}") from exc
    if getattr(args, "config", None) is not None:
        params["config"] = _load_json_file(args.config, "sweep config")
    if getattr(args, "max_deg", None) is not None:
        limits["order"] = args.max_deg
    if getattr(args, "depth", None) is not None:
        limits["depth"] = args.depth
    if getattr(args, "dim_cap", None) is not None:
        limits["dim_cap"] = args.dim_cap
    return JobSpec(args.command, params, args.format, limits)


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    workers = max(1, getattr(args, "jobs", 1))
    try:
        if args.command == "run":
            doc = _load_json_file(args.jobfile, "job file")
            jobs = [JobSpec.from_json(d) for d in (doc if isinstance(doc, list) else [doc])]
        else:
            jobs = [job_from_args(args)]
    except InputError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    if len(jobs) == 1:
        results = [run(jobs[0], _progress, workers)]
    else:
        results = run_many(jobs, workers)
    for res in results:
        sys.stdout.write(res.stdout)
        sys.stderr.write(res.stderr)
    sys.stdout.flush()
    return max(r.status for r in results) if results else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
