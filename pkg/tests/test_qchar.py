from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from satake.lie import (
    CartanDatum,
    act,
    dominant_weights_below,
    dominant_weights_up_to,
    height,
    highest_root,
    positive_roots,
    weight_to_root_coords,
    weyl_dimension,
    weyl_group_elements,
)
from satake.poly import QPolynomial, QSeries
from satake.qchar import (
    DEGREE_OFFSET,
    CapExceeded,
    calibrate_degree_offset,
    freudenthal_multiplicity,
    graded_section_multiplicity,
    grothendieck_section_multiplicity,
    kostant_multiplicity,
    lusztig_q_analog,
    q_kostant_partition,
    tensor_decomposition,
    tensor_multiplicity,
    verify_diagram7_corners,
    verify_eq1,
    weyl_character,
)

A1, A2, B2, G2 = (CartanDatum.parse(x) for x in ("A1", "A2", "B2", "G2"))
SMALL = [A1, A2, B2, G2]


def geometric(order):
    return QSeries.inverse_one_minus_q_power(1, order)


# ----------------------------------------------------------------- examples


def test_freudenthal_examples():
    assert freudenthal_multiplicity(A2, (1, 1), (1, 1)) == 1
    assert freudenthal_multiplicity(A2, (1, 1), (0, 0)) == 2
    assert freudenthal_multiplicity(A1, (4,), (2,)) == 1


def test_weyl_character_examples():
    assert dict(weyl_character(A1, (2,)).entries) == {(2,): 1, (0,): 1, (-2,): 1}
    fund = weyl_character(A2, (1, 0))
    assert len(fund) == 3 and set(dict(fund.entries).values()) == {1}
    assert weyl_character(B2, (0, 1)).dimension == 4  # Bourbaki: node 2 is the short root (spin rep)
    with pytest.raises(CapExceeded):
        weyl_character(A2, (20, 20), dim_cap=1000)


def test_tensor_examples():
    assert tensor_multiplicity(A1, (1,), (1,), (0,)) == 1
    assert tensor_multiplicity(A2, (1, 1), (1, 1), (1, 1)) == 2
    assert tensor_decomposition(A2, (2, 1), (0, 0)) == {(2, 1): 1}


def test_q_kostant_examples():
    assert q_kostant_partition(A2, (0, 0)) == QPolynomial((1,))
    assert q_kostant_partition(A2, (1, 1)) == QPolynomial((0, 1, 1))
    assert q_kostant_partition(A1, (5,)) == QPolynomial.monomial(5)
    assert q_kostant_partition(A2, (-1, 0)).is_zero


def test_lusztig_examples():
    assert lusztig_q_analog(A2, (2, 1), (2, 1)) == QPolynomial((1,))
    assert lusztig_q_analog(A1, (2,), (0,)) == QPolynomial((0, 1))
    assert str(lusztig_q_analog(A2, (1, 1), (0, 0))) == "q + q^2"


def test_graded_section_examples():
    assert graded_section_multiplicity(A2, (0, 0), (0, 0), 4).coeffs[0] == 1
    # sl2: functions on the nilpotent cone carry V(2k) once, in degree k
    assert graded_section_multiplicity(A1, (2,), (0,), 5).coeffs == (0, 1, 0, 0, 0, 0)
    assert graded_section_multiplicity(A2, (1, 0), (0, 0), 6).coeffs == (0,) * 7
    assert grothendieck_section_multiplicity(A1, (0,), (0,), 5).agrees_with(geometric(5))
    assert grothendieck_section_multiplicity(A1, (2,), (0,), 5).coeffs == (0, 1, 1, 1, 1, 1)
    assert grothendieck_section_multiplicity(A2, (0, 0), (1, 1), 5).coeffs == (0,) * 6


def test_verify_eq1_examples():
    assert verify_eq1(A2, (1, 1), (1, 1)).verdict == "match"
    report = verify_eq1(A1, (2,), (0,), 8)
    assert report.verdict == "match" and report.shift == 0 and report.order == 8
    for mu in dominant_weights_below(A2, (1, 1)):
        assert verify_eq1(A2, (1, 1), mu, 10).verdict == "match"


def test_report_json_keys():
    doc = verify_eq1(A1, (2,), (0,), 8).to_json()
    assert set(doc) == {"type", "lambda", "mu", "order", "shift", "degree_offset", "lhs", "rhs", "verdict", "first_mismatch"}
    assert verify_eq1(A2, (3, 0), (1, 1), 4).to_json()["shift"] == 4
    assert verify_eq1(A2, (1, 0), (1, 0), 4).to_json()["shift"] is None  # mu off the root lattice


def test_square_corner_examples():
    zero = verify_diagram7_corners(A1, (0,), (0,), 6)
    assert zero.passed and all(getattr(zero, c).agrees_with(geometric(6)) for c in ("top_left", "top_right", "bottom_left", "bottom_right"))
    r = verify_diagram7_corners(A1, (2,), (0,), 6)
    assert r.passed and r.top_rank == r.bottom_rank == 1
    assert r.top_left.coeffs == (0, 1, 1, 1, 1, 1, 1)
    assert r.bottom_left.agrees_with(geometric(6))
    adj = verify_diagram7_corners(A2, (1, 1), (0, 0), 6)
    assert adj.passed and adj.top_rank == adj.bottom_rank == 2


def test_degree_offset_calibration():
    assert calibrate_degree_offset() == DEGREE_OFFSET == 0


# ------------------------------------------------------------------ oracles


def brute_force_partition(datum, c):
    counts = Counter()
    roots = positive_roots(datum)

    def walk(k, rest, used):
        if not any(rest):
            counts[used] += 1
            return
        for j in range(k, len(roots)):
            nxt = tuple(a - b for a, b in zip(rest, roots[j]))
            if min(nxt) >= 0:
                walk(j, nxt, used + 1)

    walk(0, tuple(c), 0)
    return QPolynomial(tuple(counts[d] for d in range(max(counts, default=0) + 1)))


@pytest.mark.parametrize("datum", [A2, B2, G2], ids=lambda d: d.label)
def test_q_kostant_against_enumeration(datum):
    for c in product(range(6), repeat=2):
        assert q_kostant_partition(datum, c) == brute_force_partition(datum, c)


def q_int(n):
    return QPolynomial((1,) * n)


def fake_degree(partition):
    """``q^{n(lam')} [n]_q! / prod_hooks [h]_q``: the q-analog of the zero weight in ``V(lam)`` of ``gl_n``."""
    n = len(partition) and sum(partition)
    conj = [sum(1 for p in partition if p > j) for j in range(partition[0])] if partition else []
    shift = sum(i * c for i, c in enumerate(conj))
    num = QPolynomial((1,))
    for k in range(1, n + 1):
        num = num * q_int(k)
    hooks = [partition[i] - j + conj[j] - i - 1 for i in range(len(partition)) for j in range(partition[i])]
    # exact polynomial division by each [h]_q = (1 - q^h)/(1 - q)
    coeffs = list(num.coeffs)
    for h in hooks:
        out = [0] * (len(coeffs) - h + 1)
        rest = coeffs[:]
        for d in range(len(out) - 1, -1, -1):
            out[d] = rest[d + h - 1]
            for k in range(h):
                rest[d + k] -= out[d]
        assert not any(rest)
        coeffs = out
    return QPolynomial((0,) * shift + tuple(coeffs))


def partitions(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_lusztig_zero_weight_equals_fake_degree(n):
    datum = CartanDatum.parse(f"A{n - 1}")
    for lam in partitions(n):
        if len(lam) > n:
            continue
        padded = list(lam) + [0] * (n - len(lam))
        coords = tuple(padded[i] - padded[i + 1] for i in range(n - 1))
        assert lusztig_q_analog(datum, coords, (0,) * (n - 1)) == fake_degree(lam), lam


def test_kostka_foulkes_table_n4():
    # standard table of K_{lam,mu}(q) for partitions of 4 (type A3, weights as differences)
    a3 = CartanDatum.parse("A3")
    to_w = lambda p: tuple((list(p) + [0] * 4)[i] - (list(p) + [0] * 4)[i + 1] for i in range(3))  # noqa: E731
    table = {
        ((4,), (3, 1)): (0, 1),
        ((4,), (2, 2)): (0, 0, 1),
        ((4,), (2, 1, 1)): (0, 0, 0, 1),
        ((3, 1), (2, 2)): (0, 1),
        ((3, 1), (2, 1, 1)): (0, 1, 1),
        ((2, 2), (2, 1, 1)): (0, 1),
        ((2, 1, 1), (1, 1, 1, 1)): (0, 1, 1, 1),
        ((2, 2), (1, 1, 1, 1)): (0, 0, 1, 0, 1),
        ((3, 1), (1, 1, 1, 1)): (0, 0, 0, 1, 1, 1),
    }
    for (lam, mu), coeffs in table.items():
        assert lusztig_q_analog(a3, to_w(lam), to_w(mu)).coeffs == coeffs, (lam, mu)


@pytest.mark.parametrize(
    "datum, degrees, order",
    [(A1, (2,), 6), (A2, (2, 3), 5), (B2, (2, 4), 4), (G2, (2, 6), 3)],
    ids=lambda x: getattr(x, "label", None),
)
def test_nilcone_hilbert_series(datum, degrees, order):
    """Summing dim V(lam) against the graded multiplicities at mu = 0 gives prod(1 - q^d) / (1 - q)^dim g."""
    r = datum.rank
    bound = order * height(highest_root(datum))
    total = QSeries.zero(order)
    for lam in dominant_weights_up_to(datum, 3 * bound):
        rc = weight_to_root_coords(datum, lam)
        if rc.integral and rc.in_positive_cone and height(rc.as_ints()) <= bound:
            total = total + graded_section_multiplicity(datum, lam, (0,) * r, order) * weyl_dimension(datum, lam)
    num = QPolynomial((1,))
    for d in degrees:
        num = num * QPolynomial((1,) + (0,) * (d - 1) + (-1,))
    dim_g = 2 * len(positive_roots(datum)) + r
    assert total.agrees_with(QSeries.inverse_one_minus_q_power(dim_g, order) * num)


# --------------------------------------------------------------- properties


def dominant_pair():
    def pick(datum):
        lam = st.tuples(*[st.integers(0, 3)] * datum.rank)
        return lam.flatmap(lambda l: st.tuples(st.just(datum), st.just(l), st.sampled_from(dominant_weights_below(datum, l, 8))))

    return st.sampled_from(SMALL).flatmap(pick)


@settings(max_examples=60, deadline=None)
@given(dominant_pair())
def test_q_analog_specializes_to_multiplicity(pair):
    datum, lam, mu = pair
    k = lusztig_q_analog(datum, lam, mu)
    assert all(c >= 0 for c in k.coeffs)
    assert k(1) == freudenthal_multiplicity(datum, lam, mu) == kostant_multiplicity(datum, lam, mu)


@settings(max_examples=40, deadline=None)
@given(dominant_pair())
def test_graded_sections_are_nonnegative_and_match(pair):
    datum, lam, mu = pair
    series = graded_section_multiplicity(datum, lam, mu, 8)
    assert all(c >= 0 for c in series.coeffs)
    assert verify_eq1(datum, lam, mu, 8).verdict == "match"
    groth = grothendieck_section_multiplicity(datum, lam, mu, 8)
    assert groth.agrees_with(series * QSeries.inverse_one_minus_q_power(datum.rank, 8))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL).flatmap(lambda d: st.tuples(st.just(d), st.tuples(*[st.integers(0, 3)] * d.rank))))
def test_character_dimension_and_weyl_invariance(case):
    datum, lam = case
    ch = weyl_character(datum, lam)
    assert ch.dimension == weyl_dimension(datum, lam)
    entries = dict(ch.entries)
    for w in weyl_group_elements(datum):
        for mu, m in entries.items():
            assert entries.get(act(datum, w, mu), 0) == m


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(SMALL).flatmap(
        lambda d: st.tuples(st.just(d), st.tuples(*[st.integers(0, 2)] * d.rank), st.tuples(*[st.integers(0, 2)] * d.rank))
    )
)
def test_klimyk_dimensions_add_up(case):
    datum, l1, l2 = case
    dec = tensor_decomposition(datum, l1, l2)
    assert all(m > 0 for m in dec.values())
    assert sum(m * weyl_dimension(datum, nu) for nu, m in dec.items()) == weyl_dimension(datum, l1) * weyl_dimension(datum, l2)
    assert dec == tensor_decomposition(datum, l2, l1)
