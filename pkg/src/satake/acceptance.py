"""The bundled verification sweeps, one function per acceptance criterion.

Each criterion returns a :class:`CriterionResult`. The sweep configuration is a
plain dict (see :data:`DEFAULT_CONFIG`); unknown keys are rejected so a typo
never silently shrinks a sweep.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterator, Mapping

from .coulomb import QuiverGaugeDatum, TruncationRefused, monopole_hilbert_series, sym_power_orbifold_series
from .kacmoody import AffineCartanDatum, dominant_affine_weights_of_level, eq5_weight_table
from .lie import CartanDatum, dominant_weights_below, positive_roots
from .poly import QPolynomial, QSeries
from .qchar import (
    freudenthal_multiplicity,
    graded_section_multiplicity,
    grothendieck_section_multiplicity,
    lusztig_q_analog,
    q_kostant_partition,
    verify_diagram7_corners,
    verify_eq1,
)

DEFAULT_CONFIG: dict = {
    "types": ["A1", "A2", "B2", "G2"],
    "lambda_bound": 4,
    "max_height": 8,
    "order": 10,
    "kostant_types": ["A2", "B2", "G2"],
    "kostant_height": 8,
    "affine_types": ["A1", "A2"],
    "affine_levels": [1, 2],
    "affine_depth": 6,
    "coulomb_t_order": 10,
    "criteria": [1, 2, 3, 4, 5, 6, 7],
}

TIME_LIMITS = {1: 300.0, 2: 300.0, 3: 300.0, 4: 60.0, 5: 300.0, 6: 1.0, 7: None}

NAMES = {
    1: "graded section multiplicity equals the q-analog",
    2: "q-analog at q = 1 equals the weight multiplicity",
    3: "Grothendieck ranks and square corners agree",
    4: "q-Kostant partition function against brute force",
    5: "affine Freudenthal against Weyl-Kac",
    6: "monopole series of the A1 quiver against the Z/2 Molien series",
    7: "byte-identical reruns and certified refusal",
}

MAX_REPORTED_FAILURES = 5


class ConfigError(ValueError):
    pass


def load_config(doc: Mapping | None) -> dict:
    """Merge ``doc`` over the defaults, checking keys and value shapes."""
    cfg = dict(DEFAULT_CONFIG)
    if doc is None:
        return cfg
    if not isinstance(doc, Mapping):
        raise ConfigError("sweep config must be a JSON object")
    for key, value in doc.items():
        if key not in DEFAULT_CONFIG:
            raise ConfigError(f"unknown sweep config key {key!r}")
        default = DEFAULT_CONFIG[key]
        if isinstance(default, list):
            if not isinstance(value, list):
                raise ConfigError(f"sweep config key {key!r} must be a list")
            kind = type(default[0])
            if not all(isinstance(x, kind) and not isinstance(x, bool) for x in value):
                raise ConfigError(f"sweep config key {key!r} must list {kind.__name__} values")
        elif not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ConfigError(f"sweep config key {key!r} must be a nonnegative integer")
        cfg[key] = value
    bad = [c for c in cfg["criteria"] if c not in NAMES]
    if bad:
        raise ConfigError(f"unknown criteria {bad}")
    try:
        for t in cfg["types"] + cfg["kostant_types"]:
            CartanDatum.parse(t)
        for t in cfg["affine_types"]:
            AffineCartanDatum.parse(t)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if any(lv < 1 for lv in cfg["affine_levels"]):
        raise ConfigError("affine levels must be positive")
    return cfg


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    checked: int
    failures: tuple[str, ...]
    seconds: float = field(compare=False)
    limit: float | None = None

    @property
    def within_limit(self) -> bool:
        return self.limit is None or self.seconds <= self.limit

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures and self.within_limit

    def line(self) -> str:
        limit = "no limit" if self.limit is None else f"limit {self.limit:g} s"
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion {self.number}: {self.name} ({self.checked} checks, {self.seconds:.2f} s, {limit})"

    def to_json(self) -> dict:
        # wall time stays out of the report so reruns are byte-identical
        return {
            "criterion": self.number,
            "name": self.name,
            "checked": self.checked,
            "failures": list(self.failures),
            "limit_seconds": self.limit,
            "within_limit": self.within_limit,
            "passed": self.passed,
        }


# ------------------------------------------------------------------ sweeps


def dominant_pairs(cfg: Mapping) -> Iterator[tuple[CartanDatum, tuple[int, ...], tuple[int, ...]]]:
    """Every dominant ``mu <= lam`` with ``height(lam - mu) <= max_height``, ``lam`` bounded by coordinate sum."""
    for label in cfg["types"]:
        datum = CartanDatum.parse(label)
        for lam in product(range(cfg["lambda_bound"] + 1), repeat=datum.rank):
            if sum(lam) > cfg["lambda_bound"]:
                continue
            for mu in dominant_weights_below(datum, lam, cfg["max_height"]):
                yield datum, lam, mu


def _tag(datum: CartanDatum, lam, mu) -> str:
    return f"{datum.label} lam={list(lam)} mu={list(mu)}"


def _pair_sweep(cfg: Mapping, check: Callable[[CartanDatum, tuple, tuple], str | None]) -> tuple[int, list[str]]:
    n, failures = 0, []
    for datum, lam, mu in dominant_pairs(cfg):
        n += 1
        problem = check(datum, lam, mu)
        if problem is not None:
            failures.append(f"{_tag(datum, lam, mu)}: {problem}")
    return n, failures


def criterion_graded_sections(cfg: Mapping) -> tuple[int, list[str]]:
    def check(datum, lam, mu):
        report = verify_eq1(datum, lam, mu, cfg["order"])
        if report.verdict != "match":
            return f"first mismatch at q^{report.first_mismatch}"
        return None

    return _pair_sweep(cfg, check)


def criterion_specialization(cfg: Mapping) -> tuple[int, list[str]]:
    def check(datum, lam, mu):
        at_one = lusztig_q_analog(datum, lam, mu)(1)
        mult = freudenthal_multiplicity(datum, lam, mu)
        return None if at_one == mult else f"K(1) = {at_one}, multiplicity {mult}"

    return _pair_sweep(cfg, check)


def criterion_grothendieck(cfg: Mapping) -> tuple[int, list[str]]:
    order = cfg["order"]

    def check(datum, lam, mu):
        free = QSeries.inverse_one_minus_q_power(datum.rank, order)
        groth = grothendieck_section_multiplicity(datum, lam, mu, order)
        graded = graded_section_multiplicity(datum, lam, mu, order)
        if not groth.agrees_with(graded * free):
            return "Grothendieck series differs from graded series times (1-q)^-rank"
        report = verify_diagram7_corners(datum, lam, mu, order)
        if not report.passed:
            return f"square corners disagree {report.to_json()['checks']}"
        return None

    return _pair_sweep(cfg, check)


def brute_force_partitions(datum: CartanDatum, c: tuple[int, ...]) -> QPolynomial:
    """Enumerate every multiset of positive roots summing to ``c``; weight each by ``q^size``."""
    roots = positive_roots(datum)
    counts: Counter[int] = Counter()

    def walk(start: int, rest: tuple[int, ...], used: int) -> None:
        if not any(rest):
            counts[used] += 1
            return
        for k in range(start, len(roots)):
            r = roots[k]
            nxt = tuple(a - b for a, b in zip(rest, r))
            if min(nxt) >= 0:
                walk(k, nxt, used + 1)

    walk(0, tuple(c), 0)
    top = max(counts, default=0)
    return QPolynomial(tuple(counts[d] for d in range(top + 1)))


def criterion_kostant(cfg: Mapping) -> tuple[int, list[str]]:
    n, failures = 0, []
    h = cfg["kostant_height"]
    for label in cfg["kostant_types"]:
        datum = CartanDatum.parse(label)
        # a few negative entries too: both sides must vanish off the positive cone
        for c in product(range(-2, h + 1), repeat=datum.rank):
            if sum(c) > h:
                continue
            n += 1
            dp, brute = q_kostant_partition(datum, c), brute_force_partitions(datum, c)
            if dp != brute:
                failures.append(f"{label} c={list(c)}: dp {dp}, brute force {brute}")
    return n, failures


def criterion_affine(cfg: Mapping) -> tuple[int, list[str]]:
    n, failures = 0, []
    depth = cfg["affine_depth"]
    for label in cfg["affine_types"]:
        datum = AffineCartanDatum.parse(label)
        for lvl in cfg["affine_levels"]:
            for lam in dominant_affine_weights_of_level(datum, lvl):
                fr = eq5_weight_table(datum, lam, depth, method="freudenthal").multiplicities()
                wk = eq5_weight_table(datum, lam, depth, method="weyl-kac").multiplicities()
                n += len(fr)
                if fr.keys() != wk.keys():
                    failures.append(f"{datum.label} lam={lam}: weight windows differ")
                    continue
                for beta in sorted(fr):
                    if fr[beta] != wk[beta]:
                        failures.append(f"{datum.label} lam={lam} beta={list(beta)}: {fr[beta]} vs {wk[beta]}")
    return n, failures


def z2_molien(order: int) -> list[int]:
    """Average of ``1/det(1 - q g)`` over ``g = +1, -1`` on ``C^2``: ``((n+1) + (-1)^n (n+1)) / 2``."""
    return [((n + 1) + (-1) ** n * (n + 1)) // 2 for n in range(order + 1)]


def criterion_coulomb(cfg: Mapping) -> tuple[int, list[str]]:
    order = 2 * cfg["coulomb_t_order"]
    oracle = z2_molien(order)
    quiver = QuiverGaugeDatum.build(["1"], [], [1], [2])
    failures = []
    mono = list(monopole_hilbert_series(quiver, order).series.coeffs)
    if mono != oracle:
        failures.append(f"monopole series {mono} differs from Molien {oracle}")
    orb = list(sym_power_orbifold_series(2, 1, order).coeffs)
    if orb != oracle:
        failures.append(f"symmetric-power series {orb} differs from Molien {oracle}")
    return 2, failures


def criterion_determinism(cfg: Mapping) -> tuple[int, list[str]]:
    from .cli import JobSpec, run, run_many

    jobs = [
        JobSpec("kostka", {"type": "A2", "lambda": [1, 1], "mu": [0, 0]}),
        JobSpec("verify-eq1", {"type": "B2", "lambda": [2, 1], "mu": [0, 1]}, limits={"order": 8}),
        JobSpec("verify-diagram7", {"type": "G2", "lambda": [1, 0], "mu": [0, 0]}),
        JobSpec("weight-table", {"type": "A1", "lambda": [1, 0]}, output="csv", limits={"depth": 3}),
        JobSpec("affine-mult", {"type": "A2", "lambda": [1, 0, 0], "mu": [1, 0, 0], "mu_delta": -1}, limits={"depth": 2}),
        JobSpec("monopole-hs", {"quiver": {"vertices": ["1"], "edges": [], "v": {"1": 1}, "w": {"1": 2}}}, limits={"order": 6}),
        JobSpec("sym-power", {"ell": 3, "k": 2}, limits={"order": 8}),
    ]
    failures = []
    first = [run(job) for job in jobs]
    second = [run(job) for job in jobs]
    fanned = run_many(jobs, workers=2)
    for job, a, b, c in zip(jobs, first, second, fanned):
        if a.status != 0:
            failures.append(f"{job.command}: exit {a.status}: {a.stderr.strip()}")
        if not (a.stdout == b.stdout == c.stdout):
            failures.append(f"{job.command}: output differs between runs")
    bad = JobSpec("monopole-hs", {"quiver": {"vertices": ["1"], "edges": [], "v": {"1": 1}, "w": {"1": 0}}})
    res = run(bad)
    if res.status != 3 or res.stdout:
        failures.append(f"bad theory gave exit {res.status} with output {res.stdout!r}")
    try:
        monopole_hilbert_series(QuiverGaugeDatum.build(["1"], [], [1], [0]), 4)
        failures.append("bad theory produced a series")
    except TruncationRefused:
        pass
    return len(jobs) + 2, failures


CRITERIA: dict[int, Callable[[Mapping], tuple[int, list[str]]]] = {
    1: criterion_graded_sections,
    2: criterion_specialization,
    3: criterion_grothendieck,
    4: criterion_kostant,
    5: criterion_affine,
    6: criterion_coulomb,
    7: criterion_determinism,
}


def run_criterion(number: int, cfg: Mapping | None = None) -> CriterionResult:
    cfg = load_config(cfg)
    start = time.perf_counter()
    checked, failures = CRITERIA[number](cfg)
    seconds = time.perf_counter() - start
    shown = failures[:MAX_REPORTED_FAILURES]
    if len(failures) > len(shown):
        shown.append(f"... and {len(failures) - len(shown)} more")
    return CriterionResult(number, NAMES[number], checked, tuple(shown), seconds, TIME_LIMITS[number])
