"""Untwisted affine Kac-Moody weights and multiplicities, windowed by depth.

Affine weights carry integer coordinates against the affine fundamental
weights ``Lambda_0 .. Lambda_n`` plus a delta coefficient (the eigenvalue of
the derivation ``d``, which is 1 on ``alpha_0`` and 0 on the other simple
roots). For ``mu = lam - sum beta_i alpha_i`` the *depth* is ``beta_0``, the
drop in delta coefficient. Everything is computed inside a depth window.

Two algorithms are provided for ``dim V(lam)_mu``: :func:`affine_freudenthal`
(recursion with imaginary-root multiplicities) and
:func:`weyl_kac_multiplicity` (windowed Weyl-Kac numerator divided by the
windowed denominator via a Kostant partition function).
"""

from __future__ import annotations

import csv
import io
import re
import threading
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Sequence

from .lie import CartanDatum, CartanError, highest_root, positive_roots, root_to_weight


class DepthError(ValueError):
    """The requested weight lies outside the depth window."""


@dataclass(frozen=True)
class AffineCartanDatum:
    finite: CartanDatum

    @classmethod
    def parse(cls, label: str) -> AffineCartanDatum:
        """``"A1"``, ``"A2^(1)"`` and ``"A2(1)"`` all name the untwisted affinization."""
        m = re.fullmatch(r"\s*([A-Ga-g]\s*\d+)\s*(?:\^?\(1\))?\s*", label)
        if not m:
            raise CartanError(f"cannot parse affine type {label!r} (only untwisted types)")
        return cls(CartanDatum.parse(m.group(1)))

    @property
    def label(self) -> str:
        return f"{self.finite.label}^(1)"

    @property
    def rank(self) -> int:
        """Finite rank; there are ``rank + 1`` simple roots."""
        return self.finite.rank

    @property
    def size(self) -> int:
        return self.finite.rank + 1

    @cached_property
    def theta(self) -> tuple[int, ...]:
        return highest_root(self.finite)

    @cached_property
    def theta_half_norm(self) -> int:
        """``(theta, theta) / 2`` in the short-roots-have-length-2 normalization."""
        f = self.finite
        t = self.theta
        sq = sum(t[i] * t[j] * f.symmetrizers[i] * f.cartan[i][j] for i in range(f.rank) for j in range(f.rank))
        return sq // 2

    @cached_property
    def marks(self) -> tuple[int, ...]:
        """``delta = sum marks_i alpha_i``."""
        return (1,) + self.theta

    @cached_property
    def comarks(self) -> tuple[int, ...]:
        d = self.finite.symmetrizers
        vals = [Fraction(c * d[i], self.theta_half_norm) for i, c in enumerate(self.theta)]
        assert all(v.denominator == 1 for v in vals)
        return (1,) + tuple(int(v) for v in vals)

    @cached_property
    def symmetrizers(self) -> tuple[int, ...]:
        return (self.theta_half_norm,) + self.finite.symmetrizers

    @cached_property
    def extended(self) -> tuple[tuple[int, ...], ...]:
        f = self.finite
        n = f.rank
        theta_w = root_to_weight(f, self.theta)
        av = self.comarks[1:]
        row0 = (2,) + tuple(-sum(av[i] * f.cartan[i][j] for i in range(n)) for j in range(n))
        rows = [row0] + [(-theta_w[i],) + f.cartan[i] for i in range(n)]
        mat = tuple(tuple(r) for r in rows)
        if any(sum(r[j] * self.marks[j] for j in range(n + 1)) for r in mat):
            raise CartanError(f"{self.label}: marks are not a null vector of the extended matrix")
        return mat

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.extended)

    def to_json(self) -> dict:
        return {"label": self.label, "extended": [list(r) for r in self.extended], "marks": list(self.marks), "comarks": list(self.comarks)}


@dataclass(frozen=True, order=True)
class AffineWeight:
    coords: tuple[int, ...]
    delta: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if isinstance(self.delta, Fraction) and self.delta.denominator == 1:
            object.__setattr__(self, "delta", int(self.delta))

    def __add__(self, other: AffineWeight) -> AffineWeight:
        return AffineWeight(tuple(a + b for a, b in zip(self.coords, other.coords)), self.delta + other.delta)

    def __sub__(self, other: AffineWeight) -> AffineWeight:
        return AffineWeight(tuple(a - b for a, b in zip(self.coords, other.coords)), self.delta - other.delta)

    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.coords)

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "delta": self.delta if isinstance(self.delta, int) else str(self.delta)}

    def __str__(self) -> str:
        terms = [(c, f"L{i}") for i, c in enumerate(self.coords) if c]
        if self.delta:
            terms.append((self.delta, "d"))
        if not terms:
            return "0"
        out = ""
        for k, (c, name) in enumerate(terms):
            mag = f"{abs(c)}{name}" if abs(c) != 1 else name
            out += ("-" if c < 0 else "") + mag if k == 0 else (" - " if c < 0 else " + ") + mag
        return out


def level(datum: AffineCartanDatum, mu: AffineWeight) -> int:
    return sum(a * c for a, c in zip(datum.comarks, mu.coords))


def root_weight(datum: AffineCartanDatum, beta: Sequence[int]) -> AffineWeight:
    """``sum beta_j alpha_j`` as an affine weight."""
    ext = datum.extended
    coords = tuple(sum(ext[i][j] * beta[j] for j in range(datum.size)) for i in range(datum.size))
    return AffineWeight(coords, beta[0])


def lower(datum: AffineCartanDatum, lam: AffineWeight, beta: Sequence[int]) -> AffineWeight:
    return lam - root_weight(datum, beta)


def root_coords_between(datum: AffineCartanDatum, lam: AffineWeight, mu: AffineWeight) -> tuple[int, ...] | None:
    """``beta`` with ``lam - mu = sum beta_i alpha_i``, or None if ``lam - mu`` is not in the root lattice."""
    d0 = lam.delta - mu.delta
    if Fraction(d0).denominator != 1:
        return None
    b0 = int(d0)
    diff = [a - b for a, b in zip(lam.coords, mu.coords)]
    f = datum.finite
    ext = datum.extended
    rhs = [diff[i + 1] - ext[i + 1][0] * b0 for i in range(f.rank)]
    inv = f.inverse
    bar = [sum((inv[i][j] * rhs[j] for j in range(f.rank)), Fraction(0)) for i in range(f.rank)]
    if any(x.denominator != 1 for x in bar):
        return None
    beta = (b0,) + tuple(int(x) for x in bar)
    if root_weight(datum, beta).coords != tuple(diff):
        return None
    return beta


def inner(datum: AffineCartanDatum, mu: AffineWeight, nu: AffineWeight) -> Fraction:
    """Invariant form: finite part as in :mod:`satake.lie`, ``(delta, delta) = 0``,
    ``(Lambda_0, delta) = (theta, theta)/2`` (which is 1 for simply-laced types)."""
    g = datum.finite.gram
    n = datum.rank
    a, b = mu.coords[1:], nu.coords[1:]
    fin = sum((a[i] * g[i][k] * b[k] for i in range(n) for k in range(n)), Fraction(0))
    return fin + datum.theta_half_norm * (level(datum, mu) * nu.delta + level(datum, nu) * mu.delta)


def rho(datum: AffineCartanDatum) -> AffineWeight:
    return AffineWeight((1,) * datum.size, 0)


# --------------------------------------------------------------------- roots


@lru_cache(maxsize=None)
def affine_positive_roots(datum: AffineCartanDatum, depth: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Positive roots of depth at most ``depth`` with multiplicities, in simple-root coordinates.

    Real roots ``a + k delta`` have multiplicity 1; ``k delta`` has multiplicity equal to the
    finite rank. Sorted by depth, height, then lexicographically.
    """
    if depth < 0:
        raise DepthError("depth must be nonnegative")
    fin = positive_roots(datum.finite)
    marks = datum.marks
    out: list[tuple[tuple[int, ...], int]] = [((0,) + r, 1) for r in fin]
    for k in range(1, depth + 1):
        base = tuple(k * m for m in marks)
        for r in fin:
            for sgn in (1, -1):
                out.append(((base[0],) + tuple(b + sgn * x for b, x in zip(base[1:], r)), 1))
        out.append((base, datum.rank))
    out.sort(key=lambda t: (t[0][0], sum(t[0]), t[0]))
    return tuple(out)


# ----------------------------------------------------------- weight windows


def _check_highest(datum: AffineCartanDatum, lam: AffineWeight) -> None:
    if len(lam.coords) != datum.size:
        raise ValueError(f"affine weight {lam.coords} needs {datum.size} coordinates")
    if not lam.is_dominant():
        raise ValueError(f"highest weight {lam} is not dominant")
    if level(datum, lam) <= 0:
        raise ValueError(f"highest weight {lam} must have positive level")


def _dominant_beta(datum: AffineCartanDatum, lam: AffineWeight, beta: Sequence[int]) -> tuple[int, ...] | None:
    """Move ``lam - beta`` to its dominant conjugate; None as soon as it leaves ``lam - Q_+``."""
    ext = datum.extended
    size = datum.size
    b = list(beta)
    if min(b) < 0:
        return None
    coords = [lam.coords[i] - sum(ext[i][j] * b[j] for j in range(size)) for i in range(size)]
    while True:
        for i in range(size):
            p = coords[i]
            if p < 0:
                b[i] += p
                if b[i] < 0:
                    return None
                for k in range(size):
                    coords[k] -= p * ext[k][i]
                break
        else:
            return tuple(b)


def is_weight(datum: AffineCartanDatum, lam: AffineWeight, beta: Sequence[int]) -> bool:
    """Whether ``lam - beta`` is a weight of the integrable module ``V(lam)``."""
    return _dominant_beta(datum, lam, beta) is not None


@lru_cache(maxsize=128)
def _window(datum: AffineCartanDatum, lam: AffineWeight, depth: int) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    """All weights of ``V(lam)`` within the window, and the non-weights one simple root below them."""
    size = datum.size
    zero = (0,) * size
    weights = {zero}
    frontier: set[tuple[int, ...]] = set()
    queue = deque([zero])
    while queue:
        b = queue.popleft()
        for i in range(size):
            nb = tuple(x + int(i == j) for j, x in enumerate(b))
            if nb[0] > depth or nb in weights or nb in frontier:
                continue
            if is_weight(datum, lam, nb):
                weights.add(nb)
                queue.append(nb)
            else:
                frontier.add(nb)
    key = lambda b: (b[0], sum(b), b)  # noqa: E731
    return tuple(sorted(weights, key=key)), tuple(sorted(frontier, key=key))


class _FreudenthalTable:
    """Multiplicities of dominant weights of one ``V(lam)``; grows with the requested depth."""

    def __init__(self, datum: AffineCartanDatum, lam: AffineWeight):
        self.datum = datum
        self.lam = lam
        self.depth = -1
        self.mults: dict[tuple[int, ...], int] = {}
        self.lock = threading.Lock()
        lr = lam + rho(datum)
        self._top = inner(datum, lr, lr)

    def _form(self, x: AffineWeight, y: AffineWeight) -> Fraction:
        return inner(self.datum, x, y)

    def extend(self, depth: int) -> None:
        with self.lock:
            if depth <= self.depth:
                return
            datum, lam = self.datum, self.lam
            weights, _ = _window(datum, lam, depth)
            roots = [(b, m, root_weight(datum, b)) for b, m in affine_positive_roots(datum, depth)]
            doms = [b for b in weights if lower(datum, lam, b).is_dominant() and b not in self.mults]
            doms.sort(key=lambda b: (sum(b), b))
            rl = rho(datum)
            for beta in doms:
                if sum(beta) == 0:
                    self.mults[beta] = 1
                    continue
                mu = lower(datum, lam, beta)
                acc = Fraction(0)
                for rb, rmult, rw in roots:
                    if rb[0] > beta[0]:
                        break
                    k = 1
                    while True:
                        nb = tuple(x - k * y for x, y in zip(beta, rb))
                        if min(nb) < 0:
                            break
                        dom = _dominant_beta(datum, lam, nb)
                        if dom is not None:
                            m = self.mults[dom]
                            if m:
                                nu = lower(datum, lam, nb)
                                acc += rmult * m * self._form(nu, rw)
                        k += 1
                mr = mu + rl
                den = self._top - self._form(mr, mr)
                val = 2 * acc / den
                if val.denominator != 1 or val < 0:
                    raise ArithmeticError(f"affine Freudenthal produced {val} at {mu}")
                self.mults[beta] = int(val)
            self.depth = depth

    def multiplicity(self, beta: Sequence[int], depth: int) -> int:
        dom = _dominant_beta(self.datum, self.lam, beta)
        if dom is None:
            return 0
        self.extend(depth)
        return self.mults[dom]


@lru_cache(maxsize=64)
def _freudenthal_table(datum: AffineCartanDatum, lam: AffineWeight) -> _FreudenthalTable:
    return _FreudenthalTable(datum, lam)


def _beta_in_window(datum, lam, mu, depth) -> tuple[int, ...] | None:
    if depth < 0:
        raise DepthError("depth must be nonnegative")
    _check_highest(datum, lam)
    if len(mu.coords) != datum.size:
        raise ValueError(f"affine weight {mu.coords} needs {datum.size} coordinates")
    beta = root_coords_between(datum, lam, mu)
    if beta is None or min(beta) < 0:
        return None
    if beta[0] > depth:
        raise DepthError(f"{mu} lies at depth {beta[0]} below {lam}, outside window {depth}")
    return beta


def affine_freudenthal(datum: AffineCartanDatum, lam: AffineWeight, mu: AffineWeight, depth: int) -> int:
    """``dim V(lam)_mu`` by the Freudenthal recursion, imaginary roots included."""
    beta = _beta_in_window(datum, lam, mu, depth)
    if beta is None:
        return 0
    return _freudenthal_table(datum, lam).multiplicity(beta, depth)


# ------------------------------------------------------------------ Weyl-Kac


@lru_cache(maxsize=128)
def weyl_kac_numerator(datum: AffineCartanDatum, lam: AffineWeight, depth: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Terms ``(lam + rho - w(lam + rho), (-1)^l(w))`` whose depth is within the window.

    Breadth-first over the orbit of ``lam + rho``, only along length-increasing
    reflections; depth never decreases along such a step (checked), so pruning
    at the window edge loses nothing.
    """
    _check_highest(datum, lam)
    size = datum.size
    ext = datum.extended
    start_coords = tuple(x + 1 for x in lam.coords)
    zero = (0,) * size
    seen = {zero: 1}
    level_states = [(zero, start_coords)]
    sign = 1
    while level_states:
        sign = -sign
        nxt = []
        for b, coords in level_states:
            for i in range(size):
                p = coords[i]
                if p <= 0:
                    continue
                nb = tuple(x + p * int(i == j) for j, x in enumerate(b))
                if nb[0] < b[0]:
                    raise ArithmeticError("depth decreased along a length-increasing step")
                if nb[0] > depth or nb in seen:
                    continue
                seen[nb] = sign
                nxt.append((nb, tuple(coords[k] - p * ext[k][i] for k in range(size))))
        level_states = nxt
    return tuple(sorted(seen.items(), key=lambda t: (t[0][0], sum(t[0]), t[0])))


@lru_cache(maxsize=32)
def affine_partition_table(datum: AffineCartanDatum, box: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Kostant partition function with root multiplicities on ``0 <= gamma <= box``."""
    roots = [(b, m) for b, m in affine_positive_roots(datum, box[0]) if all(x <= y for x, y in zip(b, box))]
    cells = list(product(*(range(x + 1) for x in box)))
    table = dict.fromkeys(cells, 0)
    table[(0,) * len(box)] = 1
    for r, mult in roots:
        for _ in range(mult):
            for g in cells:
                prev = tuple(x - y for x, y in zip(g, r))
                if min(prev) >= 0:
                    v = table[prev]
                    if v:
                        table[g] += v
    return table


def _weyl_kac_from(datum, lam, beta, depth, table) -> int:
    total = 0
    for bw, sign in weyl_kac_numerator(datum, lam, depth):
        diff = tuple(x - y for x, y in zip(beta, bw))
        if min(diff) >= 0:
            total += sign * table[diff]
    return total


def weyl_kac_multiplicity(datum: AffineCartanDatum, lam: AffineWeight, mu: AffineWeight, depth: int) -> int:
    """``dim V(lam)_mu`` from the windowed Weyl-Kac character formula."""
    beta = _beta_in_window(datum, lam, mu, depth)
    if beta is None:
        return 0
    return _weyl_kac_from(datum, lam, beta, depth, affine_partition_table(datum, beta))


# -------------------------------------------------------------- weight table


@dataclass(frozen=True)
class WeightRow:
    mu: AffineWeight
    beta: tuple[int, ...]
    multiplicity: int

    @property
    def delta_drop(self) -> int:
        return self.beta[0]

    @property
    def nonzero(self) -> bool:
        return self.multiplicity != 0


@dataclass(frozen=True)
class WeightTable:
    """``(mu, dim V(lam)_mu)`` for every weight within the window.

    Rows with zero multiplicity are the elements of ``lam - Q_+`` one simple
    root below the weight set: witnesses of the predicted empty fixed-point set.
    """

    datum: AffineCartanDatum
    lam: AffineWeight
    depth: int
    rows: tuple[WeightRow, ...]

    def multiplicities(self) -> dict[tuple[int, ...], int]:
        return {r.beta: r.multiplicity for r in self.rows}

    def agrees_with(self, other: WeightTable) -> bool:
        if self.depth != other.depth:
            raise DepthError(f"cannot compare tables at depths {self.depth} and {other.depth}")
        return self.datum == other.datum and self.lam == other.lam and self.multiplicities() == other.multiplicities()

    def to_json(self) -> dict:
        return {
            "type": self.datum.label,
            "lambda": self.lam.to_json(),
            "depth": self.depth,
            "rows": [
                {"mu_coords": list(r.mu.coords), "delta_drop": r.delta_drop, "multiplicity": r.multiplicity, "nonzero": r.nonzero}
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["mu_coords", "delta_drop", "multiplicity"])
        for r in self.rows:
            w.writerow([" ".join(map(str, r.mu.coords)), r.delta_drop, r.multiplicity])
        return buf.getvalue()


def eq5_weight_table(datum: AffineCartanDatum, lam: AffineWeight, depth: int, *, method: str = "freudenthal") -> WeightTable:
    """Weight table of ``V(lam)`` down to the given depth, non-dominant weights included."""
    if depth < 0:
        raise DepthError("depth must be nonnegative")
    _check_highest(datum, lam)
    weights, frontier = _window(datum, lam, depth)
    if method == "freudenthal":
        tab = _freudenthal_table(datum, lam)
        mult = lambda b: tab.multiplicity(b, depth)  # noqa: E731
    elif method == "weyl-kac":
        box = tuple(max(b[i] for b in weights) for i in range(datum.size))
        pt = affine_partition_table(datum, box)
        mult = lambda b: _weyl_kac_from(datum, lam, b, depth, pt)  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}")
    rows = [WeightRow(lower(datum, lam, b), b, mult(b)) for b in weights]
    rows += [WeightRow(lower(datum, lam, b), b, 0) for b in frontier]
    rows.sort(key=lambda r: (r.beta[0], sum(r.beta), r.beta))
    return WeightTable(datum, lam, depth, tuple(rows))


def dominant_affine_weights_of_level(datum: AffineCartanDatum, lvl: int) -> list[AffineWeight]:
    """All dominant ``sum c_i Lambda_i`` (delta coefficient 0) of the given level."""
    out = []
    for c in product(*(range(lvl // a + 1) for a in datum.comarks)):
        if sum(a * x for a, x in zip(datum.comarks, c)) == lvl:
            out.append(AffineWeight(c, 0))
    return sorted(out, key=lambda w: w.coords, reverse=True)
