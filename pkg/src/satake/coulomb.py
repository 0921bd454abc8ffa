"""Quiver gauge theories: weights from dimension vectors, monopole-formula Hilbert series,
and Hilbert series of symmetric powers of ``C^2/(Z/l)``.

Gradings: the monopole series is reported in ``q`` with ``t = q^2``, where
``t`` carries the (half-integral) monopole dimension. For the orbifold series
``q`` is polynomial degree on ``C^2``; the two agree for ``C^2/(Z/2)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterator, Mapping, Sequence

from .kacmoody import AffineCartanDatum, AffineWeight, root_coords_between
from .lie import CartanDatum, CartanError, weight_to_root_coords
from .poly import QSeries

MAX_CERTIFIED_RANK = 16


class TruncationRefused(RuntimeError):
    """The monopole sum cannot be certified complete to the requested order."""

    def __init__(self, message: str, direction: dict[str, list[int]]):
        super().__init__(message)
        self.direction = direction


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class QuiverGaugeDatum:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    v: tuple[int, ...]
    w: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex names")
        if len(self.v) != len(self.vertices) or len(self.w) != len(self.vertices):
            raise QuiverError("v and w must give one entry per vertex")
        if any(x < 0 for x in self.v + self.w):
            raise QuiverError("dimension vectors must be nonnegative")
        names = set(self.vertices)
        for e in self.edges:
            if len(e) != 2 or e[0] not in names or e[1] not in names:
                raise QuiverError(f"edge {e!r} refers to unknown vertices")

    @classmethod
    def build(cls, vertices: Sequence[str], edges: Sequence[Sequence[str]], v: Mapping[str, int] | Sequence[int],
              w: Mapping[str, int] | Sequence[int]) -> QuiverGaugeDatum:
        vertices = tuple(str(x) for x in vertices)

        def vec(x) -> tuple[int, ...]:
            if isinstance(x, Mapping):
                unknown = set(map(str, x)) - set(vertices)
                if unknown:
                    raise QuiverError(f"dimension given for unknown vertices {sorted(unknown)}")
                return tuple(int(x.get(k, 0)) for k in vertices)
            return tuple(int(y) for y in x)

        return cls(vertices, tuple((str(a), str(b)) for a, b in edges), vec(v), vec(w))

    @classmethod
    def from_json(cls, doc: Mapping | str) -> QuiverGaugeDatum:
        """``{"vertices": ["0","1"], "edges": [["0","1"]], "v": {"0":1,"1":1}, "w": {"0":1,"1":0}}``"""
        if isinstance(doc, str):
            doc = json.loads(doc)
        if not isinstance(doc, Mapping):
            raise QuiverError("quiver JSON must be an object")
        missing = [k for k in ("vertices", "v", "w") if k not in doc]
        if missing:
            raise QuiverError(f"quiver JSON missing keys {missing}")
        try:
            return cls.build(doc["vertices"], doc.get("edges", []), doc["v"], doc["w"])
        except (TypeError, ValueError) as exc:
            raise QuiverError(f"malformed quiver JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "v": dict(zip(self.vertices, self.v)),
            "w": dict(zip(self.vertices, self.w)),
        }

    @property
    def index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.vertices)}

    @property
    def gauge_rank(self) -> int:
        return sum(self.v)

    @property
    def matter_dimension(self) -> int:
        idx = self.index
        return sum(self.v[idx[a]] * self.v[idx[b]] for a, b in self.edges) + sum(w * v for w, v in zip(self.w, self.v))

    def cartan_matrix(self) -> tuple[tuple[int, ...], ...] | None:
        """``2 - (adjacency + transpose)``, or None if a vertex carries a loop."""
        idx = self.index
        n = len(self.vertices)
        c = [[2 * int(i == j) for j in range(n)] for i in range(n)]
        for a, b in self.edges:
            i, j = idx[a], idx[b]
            if i == j:
                return None
            c[i][j] -= 1
            c[j][i] -= 1
        return tuple(map(tuple, c))


# --------------------------------------------------------------- dimensions


@dataclass(frozen=True)
class QuiverWeights:
    """``lam = sum w_i Lambda_i`` and ``mu = lam - sum v_i alpha_i``.

    ``kind`` is ``"finite"``, ``"affine"`` or ``"formal"`` (no Cartan datum attached;
    coordinates are then pairings with the quiver's generalized Cartan matrix).
    For affine quivers ``order`` lists the vertex used for each affine node, affine node first.
    """

    kind: str
    lam: tuple[int, ...] | AffineWeight
    mu: tuple[int, ...] | AffineWeight
    datum: CartanDatum | AffineCartanDatum | None
    order: tuple[int, ...]

    @property
    def attached(self) -> bool:
        return self.datum is not None


def _null_vector(c: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Positive integer kernel vector with a 1 somewhere, when corank is exactly 1."""
    n = len(c)
    for drop in range(n):
        keep = [i for i in range(n) if i != drop]
        sub = [[c[i][j] for j in keep] for i in keep]
        try:
            fin = CartanDatum("quiver", tuple(map(tuple, sub)))
        except CartanError:
            continue
        rhs = [-c[i][drop] for i in keep]
        sol = weight_to_root_coords(fin, rhs).values
        vec = [Fraction(0)] * n
        vec[drop] = Fraction(1)
        for k, i in enumerate(keep):
            vec[i] = sol[k]
        if all(sum(c[i][j] * vec[j] for j in range(n)) == 0 for i in range(n)) and all(x > 0 for x in vec):
            if all(x.denominator == 1 for x in vec):
                return tuple(int(x) for x in vec)
    return None


def classify_quiver(datum: QuiverGaugeDatum) -> tuple[str, CartanDatum | AffineCartanDatum | None, tuple[int, ...]]:
    c = datum.cartan_matrix()
    n = len(datum.vertices)
    if c is None or n == 0:
        return "formal", None, tuple(range(n))
    try:
        return "finite", CartanDatum("quiver", c), tuple(range(n))
    except CartanError:
        pass
    null = _null_vector(c)
    if null is None:
        return "formal", None, tuple(range(n))
    for node in range(n):
        if null[node] != 1:
            continue
        order = (node,) + tuple(i for i in range(n) if i != node)
        fin_rows = tuple(tuple(c[i][j] for j in order[1:]) for i in order[1:])
        try:
            aff = AffineCartanDatum(CartanDatum("quiver", fin_rows))
            permuted = tuple(tuple(c[i][j] for j in order) for i in order)
            if aff.extended == permuted:
                return "affine", aff, order
        except CartanError:
            continue
    return "formal", None, tuple(range(n))


def weights_from_dims(datum: QuiverGaugeDatum) -> QuiverWeights:
    kind, cd, order = classify_quiver(datum)
    if kind == "affine":
        w = tuple(datum.w[i] for i in order)
        v = tuple(datum.v[i] for i in order)
        lam = AffineWeight(w, 0)
        ext = cd.extended
        drop = tuple(sum(ext[i][j] * v[j] for j in range(len(v))) for i in range(len(v)))
        mu = AffineWeight(tuple(a - b for a, b in zip(w, drop)), -v[0])
        return QuiverWeights(kind, lam, mu, cd, order)
    c = datum.cartan_matrix()
    n = len(datum.vertices)
    lam = tuple(datum.w)
    if c is None:
        c = [[2 * int(i == j) for j in range(n)] for i in range(n)]
        idx = datum.index
        for a, b in datum.edges:
            i, j = idx[a], idx[b]
            c[i][j] -= 1
            c[j][i] -= 1
    mu = tuple(lam[i] - sum(c[i][j] * datum.v[j] for j in range(n)) for i in range(n))
    return QuiverWeights(kind, lam, mu, cd, order)


def dims_from_weights(weights: QuiverWeights) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Recover ``(v, w)`` in vertex order from ``(lam, mu)``."""
    if weights.kind == "affine":
        beta = root_coords_between(weights.datum, weights.lam, weights.mu)
        if beta is None:
            raise ValueError("lam - mu is not in the affine root lattice")
        v = [0] * len(beta)
        w = [0] * len(beta)
        for k, i in enumerate(weights.order):
            v[i] = beta[k]
            w[i] = weights.lam.coords[k]
        return tuple(v), tuple(w)
    if weights.kind == "finite":
        rc = weight_to_root_coords(weights.datum, [a - b for a, b in zip(weights.lam, weights.mu)])
        return rc.as_ints(), tuple(weights.lam)
    raise ValueError("no Cartan datum attached; dimension vectors cannot be recovered uniquely")


# ------------------------------------------------------------ monopole sum

Charge = tuple[tuple[int, ...], ...]


def monopole_delta(datum: QuiverGaugeDatum, m: Sequence[Sequence[int]]) -> Fraction:
    """Monopole dimension: hypermultiplet half-sum minus the vector multiplet term."""
    if len(m) != len(datum.vertices) or any(len(mi) != vi for mi, vi in zip(m, datum.v)):
        raise ValueError(f"charge shape {[len(x) for x in m]} does not match v = {list(datum.v)}")
    idx = datum.index
    hyper = 0
    for a, b in datum.edges:
        hyper += sum(abs(x - y) for x in m[idx[a]] for y in m[idx[b]])
    for wi, mi in zip(datum.w, m):
        hyper += wi * sum(abs(x) for x in mi)
    vector = sum(abs(mi[a] - mi[b]) for mi in m for a in range(len(mi)) for b in range(a + 1, len(mi)))
    return Fraction(hyper, 2) - vector


def _dressing(charge: Charge, order: int) -> QSeries:
    """``prod_blocks prod_{d=1}^{size} (1 - t^d)^-1`` in ``q`` with ``t = q^2``."""
    out = QSeries.one(order)
    for mi in charge:
        k = 0
        while k < len(mi):
            j = k
            while j < len(mi) and mi[j] == mi[k]:
                j += 1
            for d in range(1, j - k + 1):
                out = out * QSeries([1 if e % (2 * d) == 0 else 0 for e in range(order + 1)], order)
            k = j
    return out


def _flatten(datum: QuiverGaugeDatum, flat: Sequence[int]) -> Charge:
    out = []
    pos = 0
    for vi in datum.v:
        out.append(tuple(flat[pos : pos + vi]))
        pos += vi
    return tuple(out)


def certify_growth(datum: QuiverGaugeDatum) -> Fraction:
    """Largest ``eps`` with ``Delta(m) >= eps * |m|_1`` for all charges.

    Delta and the l1 norm are both linear on each cone cut out by the hyperplanes
    ``m_a = m_b`` and ``m_a = 0``; those cones are spanned by 0/1 and 0/-1 vectors,
    so the minimum of ``Delta / |m|_1`` is attained on one of them.
    Raises :class:`TruncationRefused` when the minimum is not positive.
    """
    r = datum.gauge_rank
    if r == 0:
        return Fraction(0)
    if r > MAX_CERTIFIED_RANK:
        raise TruncationRefused(f"gauge rank {r} exceeds certification limit {MAX_CERTIFIED_RANK}", {})
    best: tuple[Fraction, tuple[int, ...]] | None = None
    for bits in product((0, 1), repeat=r):
        if not any(bits):
            continue
        for sign in (1, -1):
            ray = tuple(sign * b for b in bits)
            ratio = monopole_delta(datum, _flatten(datum, ray)) / sum(bits)
            if best is None or ratio < best[0]:
                best = (ratio, ray)
    eps, ray = best
    if eps <= 0:
        direction = dict(zip(datum.vertices, map(list, _flatten(datum, ray))))
        raise TruncationRefused(
            f"monopole dimension does not grow along {direction} (Delta/|m| = {eps}); the series cannot be truncated",
            direction,
        )
    return eps


def _sorted_tuples(k: int, norm: int) -> Iterator[tuple[int, ...]]:
    """Non-increasing integer k-tuples with l1 norm exactly ``norm``."""
    if k == 0:
        if norm == 0:
            yield ()
        return

    def rec(prefix: list[int], left: int, cap: int | None) -> Iterator[tuple[int, ...]]:
        slots = k - len(prefix)
        if slots == 0:
            if left == 0:
                yield tuple(prefix)
            return
        hi = left if cap is None else min(cap, left)
        for x in range(hi, -left - 1, -1):
            rest = left - abs(x)
            # remaining entries are <= x, so negative x forces |.| >= |x| each
            if x < 0 and rest < (slots - 1) * (-x):
                continue
            yield from rec(prefix + [x], rest, x)

    yield from rec([], norm, None)


def charge_shell(datum: QuiverGaugeDatum, norm: int) -> Iterator[Charge]:
    """All magnetic charges with total l1 norm ``norm``, in a fixed order."""
    ks = datum.v

    def rec(i: int, left: int) -> Iterator[list[tuple[int, ...]]]:
        if i == len(ks):
            if left == 0:
                yield []
            return
        for part in range(left + 1) if i < len(ks) - 1 else (left,):
            for t in _sorted_tuples(ks[i], part):
                for rest in rec(i + 1, left - part):
                    yield [t] + rest

    for c in rec(0, norm):
        yield tuple(c)


@dataclass(frozen=True)
class MonopoleSeries:
    series: QSeries
    shells: int
    growth: Fraction

    def in_t(self) -> list[int] | None:
        """Coefficients in ``t = q^2`` when no odd powers of ``q`` occur."""
        c = self.series.coeffs
        if any(c[1::2]):
            return None
        return list(c[0::2])


def monopole_hilbert_series(datum: QuiverGaugeDatum, order: int) -> MonopoleSeries:
    """Graded dimension of the Coulomb branch coordinate ring through ``q^order`` (``t = q^2``)."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    eps = certify_growth(datum)
    if datum.gauge_rank == 0:
        return MonopoleSeries(QSeries.one(order), 1, eps)
    total = QSeries.zero(order)
    s = 0
    while 2 * eps * s <= order:
        for charge in charge_shell(datum, s):
            e = 2 * monopole_delta(datum, charge)
            assert e.denominator == 1
            e = int(e)
            if e < 0:
                raise ArithmeticError(f"negative monopole dimension at {charge} despite certification")
            if e <= order:
                total = total + _dressing(charge, order - e).shift(e)
        s += 1
    return MonopoleSeries(total, s, eps)


# ----------------------------------------------------------------- orbifolds


def cyclic_orbifold_series(ell: int, order: int) -> QSeries:
    """Molien series of ``Z/ell`` acting on ``C^2`` by ``(z, z^-1)``: count ``x^i y^j`` with ``i = j mod ell``."""
    if ell < 1:
        raise ValueError("ell must be positive")
    return QSeries([sum(1 for i in range(d + 1) if (i - (d - i)) % ell == 0) for d in range(order + 1)], order)


def sym_power_orbifold_series(ell: int, k: int, order: int) -> QSeries:
    """Hilbert series of ``Sym^k(C^2/(Z/ell))`` from ``sum_k z^k HS_k = prod_d (1 - z q^d)^(-a_d)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = cyclic_orbifold_series(ell, order).coeffs
    # grid[j][e]: coefficient of z^j q^e
    grid = [[0] * (order + 1) for _ in range(k + 1)]
    grid[0][0] = 1
    for d, ad in enumerate(a):
        if not ad:
            continue
        factor = [(j, comb(ad + j - 1, j)) for j in range(k + 1) if d * j <= order]
        new = [[0] * (order + 1) for _ in range(k + 1)]
        for j0 in range(k + 1):
            row = grid[j0]
            for e0, c0 in enumerate(row):
                if not c0:
                    continue
                for j, cf in factor:
                    if j0 + j > k or e0 + d * j > order:
                        continue
                    new[j0 + j][e0 + d * j] += c0 * cf
        grid = new
    return QSeries(grid[k], order)
