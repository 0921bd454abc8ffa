import pytest
from hypothesis import given, settings, strategies as st

from satake.kacmoody import (
    AffineCartanDatum,
    AffineWeight,
    DepthError,
    affine_freudenthal,
    affine_positive_roots,
    dominant_affine_weights_of_level,
    eq5_weight_table,
    level,
    lower,
    weyl_kac_multiplicity,
)
from satake.qchar import freudenthal_multiplicity

A1, A2 = AffineCartanDatum.parse("A1"), AffineCartanDatum.parse("A2^(1)")
L0_A1, L0_A2 = AffineWeight((1, 0), 0), AffineWeight((1, 0, 0), 0)


def colored_partitions(colors, n_max):
    """Coefficients of prod_k (1 - x^k)^(-colors), by repeated multiplication with geometric series."""
    out = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        for _ in range(colors):
            for n in range(k, n_max + 1):
                out[n] += out[n - k]
    return out


# ----------------------------------------------------------------- root data


@pytest.mark.parametrize(
    "label, marks, comarks",
    [
        ("A1", (1, 1), (1, 1)),
        ("A3", (1, 1, 1, 1), (1, 1, 1, 1)),
        ("B2", (1, 1, 2), (1, 1, 1)),
        ("C3", (1, 2, 2, 1), (1, 1, 1, 1)),
        ("G2", (1, 3, 2), (1, 1, 2)),
        ("D4", (1, 1, 2, 1, 1), (1, 1, 2, 1, 1)),
        ("F4", (1, 2, 3, 4, 2), (1, 2, 3, 2, 1)),
        ("E6", (1, 1, 2, 2, 3, 2, 1), (1, 1, 2, 2, 3, 2, 1)),
    ],
)
def test_marks_and_comarks(label, marks, comarks):
    d = AffineCartanDatum.parse(label)
    assert d.marks == marks and d.comarks == comarks
    ext = d.extended
    assert all(sum(ext[i][j] * marks[j] for j in range(d.size)) == 0 for i in range(d.size))
    assert all(sum(comarks[i] * ext[i][j] for i in range(d.size)) == 0 for j in range(d.size))


def test_extended_matrix_a1():
    assert A1.extended == ((2, -2), (-2, 2))
    assert A1.label == "A1^(1)"


def test_positive_root_examples():
    assert affine_positive_roots(A1, 0) == (((0, 1), 1),)
    assert set(affine_positive_roots(A1, 1)) == {((0, 1), 1), ((1, 0), 1), ((1, 1), 1), ((1, 2), 1)}
    roots = affine_positive_roots(A2, 1)
    assert len(roots) == 3 + 6 + 1
    assert ((1, 1, 1), 2) in roots
    with pytest.raises(DepthError):
        affine_positive_roots(A2, -1)


def test_multiplicity_examples():
    for f in (affine_freudenthal, weyl_kac_multiplicity):
        assert f(A1, L0_A1, L0_A1, 3) == 1
        assert f(A1, L0_A1, AffineWeight((1, 0), -1), 2) == 1
        assert f(A1, L0_A1, AffineWeight((1, 0), -2), 2) == 2
        assert f(A2, L0_A2, AffineWeight((1, 0, 0), -1), 2) == 2


def test_depth_too_small_is_rejected():
    for f in (affine_freudenthal, weyl_kac_multiplicity):
        with pytest.raises(DepthError):
            f(A1, L0_A1, AffineWeight((1, 0), -3), 2)


def test_weight_off_the_cone_has_multiplicity_zero():
    assert affine_freudenthal(A1, L0_A1, AffineWeight((3, 0), 0), 2) == 0
    assert weyl_kac_multiplicity(A1, L0_A1, AffineWeight((0, 1), 0), 2) == 0


@pytest.mark.parametrize("label, colors, depth", [("A1", 1, 8), ("A2", 2, 6), ("A3", 3, 4), ("D4", 4, 3)])
def test_basic_representation_is_colored_partitions(label, colors, depth):
    d = AffineCartanDatum.parse(label)
    lam = AffineWeight((1,) + (0,) * d.rank, 0)
    expected = colored_partitions(colors, depth)
    for n in range(depth + 1):
        mu = AffineWeight(lam.coords, -n)
        assert affine_freudenthal(d, lam, mu, depth) == expected[n]
        assert weyl_kac_multiplicity(d, lam, mu, depth) == expected[n]


def test_table_a1_depth_two():
    table = eq5_weight_table(A1, L0_A1, 2)
    nonzero = {(r.mu.coords, r.delta_drop): r.multiplicity for r in table.rows if r.nonzero}
    assert nonzero == {
        ((1, 0), 0): 1,
        ((-1, 2), 1): 1,
        ((1, 0), 1): 1,
        ((3, -2), 1): 1,
        ((-1, 2), 2): 1,
        ((1, 0), 2): 2,
        ((3, -2), 2): 1,
    }
    assert table.agrees_with(eq5_weight_table(A1, L0_A1, 2, method="weyl-kac"))
    with pytest.raises(DepthError):
        table.agrees_with(eq5_weight_table(A1, L0_A1, 3))
    assert table.to_csv().splitlines()[0] == "mu_coords,delta_drop,multiplicity"


@pytest.mark.parametrize("label", ["B2", "G2"])
def test_dual_algorithms_agree_beyond_simply_laced(label):
    d = AffineCartanDatum.parse(label)
    for lam in dominant_affine_weights_of_level(d, 1):
        a = eq5_weight_table(d, lam, 3)
        b = eq5_weight_table(d, lam, 3, method="weyl-kac")
        assert a.agrees_with(b)


# ---------------------------------------------------------------- properties

affine_case = st.sampled_from(["A1", "A2", "B2", "C2", "G2"]).map(AffineCartanDatum.parse).flatmap(
    lambda d: st.tuples(st.just(d), st.sampled_from(dominant_affine_weights_of_level(d, 1) + dominant_affine_weights_of_level(d, 2)))
)


@settings(max_examples=25, deadline=None)
@given(affine_case, st.integers(0, 2))
def test_level_preserved_and_depth_stable(case, depth):
    d, lam = case
    table = eq5_weight_table(d, lam, depth)
    deeper = eq5_weight_table(d, lam, depth + 2).multiplicities()
    for row in table.rows:
        assert level(d, row.mu) == level(d, lam)
        assert row.mu == lower(d, lam, row.beta)
        assert deeper.get(row.beta, 0) == row.multiplicity


@settings(max_examples=25, deadline=None)
@given(affine_case)
def test_depth_zero_is_the_finite_representation(case):
    d, lam = case
    table = eq5_weight_table(d, lam, 0)
    top = lam.coords[1:]
    for row in table.rows:
        assert row.beta[0] == 0
        assert row.multiplicity == freudenthal_multiplicity(d.finite, top, row.mu.coords[1:])


def test_level_one_weights():
    assert dominant_affine_weights_of_level(A2, 1) == [AffineWeight((1, 0, 0)), AffineWeight((0, 1, 0)), AffineWeight((0, 0, 1))]
    assert len(dominant_affine_weights_of_level(A1, 2)) == 3
