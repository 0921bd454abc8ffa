"""Finite-type root data: Cartan matrices, roots, Weyl groups, weight bookkeeping.

Weights are integer tuples in the fundamental-weight basis, so ``mu[i]`` is the
pairing of ``mu`` with the i-th simple coroot. Root-lattice vectors are integer
tuples in the simple-root basis. Both are plain tuples; the functions here
take the :class:`CartanDatum` explicitly.

Conventions (Bourbaki labelling): ``A[i][j] = <alpha_i^vee, alpha_j>``, so the
weight coordinates of ``alpha_j`` form column ``j`` of ``A``. Symmetrizers
``d_i = (alpha_i, alpha_i) / 2`` are normalized so short roots have squared
length 2.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm, prod
from typing import Iterator, Mapping, Sequence

Weight = tuple[int, ...]
RootVector = tuple[int, ...]

DEFAULT_RANK_CAP = 6


class CartanError(ValueError):
    """Cartan data that is malformed or not of finite type."""


def _matrix_A(n: int) -> list[list[int]]:
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a


def _matrix_for(series: str, n: int) -> list[list[int]]:
    if series == "A":
        if n < 1:
            raise CartanError("A_n needs n >= 1")
        return _matrix_A(n)
    if series in ("B", "C"):
        if n < 2:
            raise CartanError(f"{series}_n needs n >= 2")
        a = _matrix_A(n)
        if series == "B":
            a[n - 1][n - 2] = -2
        else:
            a[n - 2][n - 1] = -2
        return a
    if series == "D":
        if n < 3:
            raise CartanError("D_n needs n >= 3")
        a = _matrix_A(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if series == "E":
        if n not in (6, 7, 8):
            raise CartanError("E_n needs n in 6, 7, 8")
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    if series == "F":
        if n != 4:
            raise CartanError("F_n needs n = 4")
        return [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]]
    if series == "G":
        if n != 2:
            raise CartanError("G_n needs n = 2")
        return [[2, -3], [-1, 2]]
    raise CartanError(f"unknown series {series!r}")


def symmetrizers_of(cartan: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Positive integers ``d`` with ``d_i A_ij = d_j A_ji``; smallest is 1 per component."""
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or cartan[i][j] == 0:
                    continue
                dj = d[i] * cartan[i][j] / cartan[j][i]
                if d[j] is None:
                    d[j] = dj
                    comp.append(j)
                    queue.append(j)
                elif d[j] != dj:
                    raise CartanError("Cartan matrix is not symmetrizable")
        low = min(d[i] for i in comp)
        scale = lcm(*((d[i] / low).denominator for i in comp))
        for i in comp:
            d[i] = d[i] / low * scale
    return tuple(int(x) for x in d)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _inverse(a: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def leading_minors(matrix: Sequence[Sequence[int]]) -> list[Fraction]:
    sq = [[Fraction(x) for x in row] for row in matrix]
    return [_det([row[:k] for row in sq[:k]]) for k in range(1, len(sq) + 1)]


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix with its symmetrizers."""

    label: str
    cartan: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        a = tuple(tuple(int(x) for x in row) for row in self.cartan)
        object.__setattr__(self, "cartan", a)
        n = len(a)
        if n == 0 or any(len(row) != n for row in a):
            raise CartanError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError(f"diagonal entry A[{i}][{i}] must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise CartanError(f"off-diagonal pattern violated at ({i}, {j})")
        d = self.symmetrizers or symmetrizers_of(a)
        if len(d) != n or any(x <= 0 for x in d):
            raise CartanError("symmetrizers must be positive, one per node")
        if any(d[i] * a[i][j] != d[j] * a[j][i] for i in range(n) for j in range(n)):
            raise CartanError("symmetrizers do not symmetrize the Cartan matrix")
        object.__setattr__(self, "symmetrizers", tuple(d))
        sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
        if any(m <= 0 for m in leading_minors(sym)):
            raise CartanError(f"{self.label}: symmetrized matrix is not positive definite (not finite type)")

    @classmethod
    def of_type(cls, series: str, rank: int, *, rank_cap: int = DEFAULT_RANK_CAP) -> CartanDatum:
        series = series.upper()
        if rank > rank_cap:
            raise CartanError(f"rank {rank} exceeds rank cap {rank_cap}")
        return cls(f"{series}{rank}", tuple(map(tuple, _matrix_for(series, rank))))

    @classmethod
    def parse(cls, label: str, *, rank_cap: int = DEFAULT_RANK_CAP) -> CartanDatum:
        """``"A2"``, ``"g2"``, ``"B3"`` ..."""
        m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", label)
        if not m:
            raise CartanError(f"cannot parse type label {label!r}")
        return cls.of_type(m.group(1), int(m.group(2)), rank_cap=rank_cap)

    @classmethod
    def from_json(cls, doc: Mapping | str, *, rank_cap: int = DEFAULT_RANK_CAP) -> CartanDatum:
        """Accepts ``{"type": "A", "rank": 2}`` or ``{"cartan": [[2, -1], [-1, 2]]}``."""
        if isinstance(doc, str):
            doc = json.loads(doc)
        if not isinstance(doc, Mapping):
            raise CartanError("Cartan JSON must be an object")
        if "cartan" in doc:
            mat = doc["cartan"]
            if not isinstance(mat, list) or not all(isinstance(r, list) for r in mat):
                raise CartanError("'cartan' must be a list of integer rows")
            if len(mat) > rank_cap:
                raise CartanError(f"rank {len(mat)} exceeds rank cap {rank_cap}")
            return cls(str(doc.get("label", "custom")), tuple(map(tuple, mat)), tuple(doc.get("symmetrizers", ())))
        if "type" in doc and "rank" in doc:
            return cls.of_type(str(doc["type"]), int(doc["rank"]), rank_cap=rank_cap)
        raise CartanError("Cartan JSON needs either 'cartan' or both 'type' and 'rank'")

    def to_json(self) -> dict:
        return {"label": self.label, "cartan": [list(r) for r in self.cartan], "symmetrizers": list(self.symmetrizers)}

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _inverse(self.cartan)

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Inner products ``(Lambda_i, Lambda_k) = d_i (A^-1)_ik`` of fundamental weights."""
        d, inv = self.symmetrizers, self.inverse
        return tuple(tuple(d[i] * inv[i][k] for k in range(self.rank)) for i in range(self.rank))

    @cached_property
    def int_gram(self) -> tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]:
        """``(L, L * gram)`` with ``L`` clearing all denominators."""
        scale = lcm(*(x.denominator for row in self.gram for x in row))
        return scale, tuple(tuple(int(x * scale) for x in row) for row in self.gram)

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    def column(self, j: int) -> Weight:
        """Weight coordinates of the simple root ``alpha_j``."""
        return tuple(row[j] for row in self.cartan)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class WeylWord:
    """``letters = (i1, ..., ik)`` stands for ``s_i1 s_i2 ... s_ik`` (rightmost acts first)."""

    letters: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def sign(self) -> int:
        """``(-1)**length``; words produced by :func:`weyl_group_elements` are reduced."""
        return -1 if len(self.letters) % 2 else 1

    def __mul__(self, other: WeylWord) -> WeylWord:
        return WeylWord(self.letters + other.letters)

    def inverse(self) -> WeylWord:
        return WeylWord(self.letters[::-1])


# ---------------------------------------------------------------- conversions


def add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def root_to_weight(datum: CartanDatum, c: Sequence[int]) -> Weight:
    """``nu_i = sum_j A_ij c_j``."""
    return tuple(sum(row[j] * c[j] for j in range(datum.rank)) for row in datum.cartan)


@dataclass(frozen=True)
class RootCoords:
    values: tuple[Fraction, ...]

    @property
    def integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values)

    @property
    def in_positive_cone(self) -> bool:
        """Nonnegative integer vector, i.e. an element of the positive root monoid."""
        return self.integral and all(v >= 0 for v in self.values)

    def as_ints(self) -> RootVector:
        if not self.integral:
            raise ValueError(f"root coordinates {self.values} are not integral")
        return tuple(int(v) for v in self.values)


def weight_to_root_coords(datum: CartanDatum, mu: Sequence[int]) -> RootCoords:
    inv = datum.inverse
    return RootCoords(tuple(sum((inv[i][j] * mu[j] for j in range(datum.rank)), Fraction(0)) for i in range(datum.rank)))


def height(c: Sequence[int]) -> int:
    return sum(c)


def pairing_two_rho_check(datum: CartanDatum, mu: Sequence[int]) -> int:
    """``<mu, 2 rho^vee>``, i.e. twice the height of ``mu`` written in simple roots.

    Only root-lattice input is accepted.
    """
    rc = weight_to_root_coords(datum, mu)
    if not rc.integral:
        raise ValueError(f"{tuple(mu)} is not in the root lattice of {datum.label}; root coords {[str(v) for v in rc.values]}")
    return 2 * height(rc.as_ints())


def inner(datum: CartanDatum, mu: Sequence[int], nu: Sequence[int]) -> Fraction:
    g = datum.gram
    n = datum.rank
    return sum((mu[i] * g[i][k] * nu[k] for i in range(n) for k in range(n) if mu[i] and nu[k]), Fraction(0))


def coroot_pairing(datum: CartanDatum, mu: Sequence[int], root: Sequence[int]) -> Fraction:
    """``<mu, beta^vee>`` for a root ``beta`` in simple-root coordinates."""
    d = datum.symmetrizers
    num = sum(mu[j] * root[j] * d[j] for j in range(datum.rank))
    norm = sum(root[i] * root[j] * d[i] * datum.cartan[i][j] for i in range(datum.rank) for j in range(datum.rank))
    return Fraction(2 * num, norm)


def is_dominant(mu: Sequence[int]) -> bool:
    return all(x >= 0 for x in mu)


# ------------------------------------------------------------------- roots


@lru_cache(maxsize=None)
def positive_roots(datum: CartanDatum) -> tuple[RootVector, ...]:
    """All positive roots in simple-root coordinates, sorted by height then lexicographically."""
    n = datum.rank
    a = datum.cartan
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        beta = queue.popleft()
        for i in range(n):
            p = sum(a[i][j] * beta[j] for j in range(n))
            if p == 0:
                continue
            image = tuple(b - p * int(i == j) for j, b in enumerate(beta))
            if image not in seen:
                seen.add(image)
                queue.append(image)
    pos = [r for r in seen if all(x >= 0 for x in r)]
    return tuple(sorted(pos, key=lambda r: (sum(r), r)))


def highest_root(datum: CartanDatum) -> RootVector:
    return positive_roots(datum)[-1]


# ------------------------------------------------------------- Weyl action


def simple_reflection(datum: CartanDatum, i: int, mu: Sequence[int]) -> Weight:
    if not 0 <= i < datum.rank:
        raise IndexError(f"simple reflection index {i} out of range for rank {datum.rank}")
    p = mu[i]
    if p == 0:
        return tuple(mu)
    return tuple(m - p * row[i] for m, row in zip(mu, datum.cartan))


def act(datum: CartanDatum, w: WeylWord, mu: Sequence[int]) -> Weight:
    out = tuple(mu)
    for i in reversed(w.letters):
        out = simple_reflection(datum, i, out)
    return out


def dot_action(datum: CartanDatum, w: WeylWord, lam: Sequence[int]) -> Weight:
    """``w(lam + rho) - rho``."""
    return tuple(x - 1 for x in act(datum, w, [x + 1 for x in lam]))


def to_dominant(datum: CartanDatum, mu: Sequence[int]) -> tuple[Weight, int]:
    """Dominant W-conjugate of ``mu`` and the number of reflections used."""
    cur = list(mu)
    steps = 0
    a = datum.cartan
    n = datum.rank
    while True:
        for i in range(n):
            if cur[i] < 0:
                p = cur[i]
                for k in range(n):
                    cur[k] -= p * a[k][i]
                steps += 1
                break
        else:
            return tuple(cur), steps


def to_dominant_signed(datum: CartanDatum, mu: Sequence[int]) -> tuple[Weight, int]:
    """Bott-style dot-action push: ``(w.mu, (-1)**l(w))`` with ``w.mu`` dominant.

    Sign 0 when ``mu + rho`` lies on a wall; the weight returned then is the
    dominant conjugate of ``mu + rho`` minus ``rho`` (not dominant itself).
    """
    shifted, steps = to_dominant(datum, [x + 1 for x in mu])
    out = tuple(x - 1 for x in shifted)
    if any(x == 0 for x in shifted):
        return out, 0
    return out, (-1) ** steps


@lru_cache(maxsize=None)
def _weyl_group(datum: CartanDatum) -> tuple[WeylWord, ...]:
    rho = datum.rho
    seen = {rho: WeylWord()}
    frontier = [(WeylWord(), rho)]
    while frontier:
        nxt = []
        for w, image in frontier:
            for i in range(datum.rank):
                new = simple_reflection(datum, i, image)
                if new not in seen:
                    word = WeylWord((i,) + w.letters)
                    seen[new] = word
                    nxt.append((word, new))
        frontier = nxt
    return tuple(seen.values())


def weyl_group_elements(datum: CartanDatum) -> Iterator[WeylWord]:
    """Every element once as a reduced word, by breadth-first search on the orbit of rho."""
    yield from _weyl_group(datum)


def weyl_group_order(datum: CartanDatum) -> int:
    return len(_weyl_group(datum))


def weyl_dimension(datum: CartanDatum, lam: Sequence[int]) -> int:
    rho = datum.rho
    lr = [x + 1 for x in lam]
    num = prod(coroot_pairing(datum, lr, r) for r in positive_roots(datum))
    den = prod(coroot_pairing(datum, rho, r) for r in positive_roots(datum))
    val = num / den
    assert val.denominator == 1
    return int(val)


def dominant_weights_below(datum: CartanDatum, lam: Sequence[int], max_height: int | None = None) -> list[Weight]:
    """Dominant ``mu`` with ``lam - mu`` in the positive root cone (optionally of bounded height).

    Sorted by height of ``lam - mu`` then by coordinates.
    """
    lam = tuple(lam)
    out = {lam: 0}
    queue = deque([lam])
    while queue:
        mu = queue.popleft()
        h = out[mu]
        for beta in positive_roots(datum):
            hb = h + height(beta)
            if max_height is not None and hb > max_height:
                continue
            nu = sub(mu, root_to_weight(datum, beta))
            if is_dominant(nu) and nu not in out:
                out[nu] = hb
                queue.append(nu)
    res = []
    for mu in out:
        c = weight_to_root_coords(datum, sub(lam, mu)).as_ints()
        res.append((height(c), mu))
    res.sort(key=lambda t: (t[0], t[1]))
    return [mu for _, mu in res]


def dominant_weights_up_to(datum: CartanDatum, coord_sum: int) -> list[Weight]:
    """All dominant weights with coordinate sum at most ``coord_sum``."""
    out: list[Weight] = []

    def rec(prefix: list[int], left: int) -> None:
        if len(prefix) == datum.rank:
            out.append(tuple(prefix))
            return
        for x in range(left + 1):
            rec(prefix + [x], left - x)

    rec([], coord_sum)
    return sorted(out, key=lambda w: (sum(w), w))

