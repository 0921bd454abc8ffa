"""Exact computations around the geometric Satake correspondence.

Submodules:

* :mod:`satake.lie` finite root data, Weyl groups and weight bookkeeping,
* :mod:`satake.qchar` weight multiplicities, q-analogs and graded section series,
* :mod:`satake.kacmoody` untwisted affine weights and multiplicities,
* :mod:`satake.coulomb` quiver gauge data and monopole-formula Hilbert series,
* :mod:`satake.acceptance` the bundled verification sweeps,
* :mod:`satake.cli` the ``satake`` command.
"""

from .coulomb import (
    QuiverGaugeDatum,
    TruncationRefused,
    monopole_delta,
    monopole_hilbert_series,
    sym_power_orbifold_series,
    weights_from_dims,
)
from .kacmoody import (
    AffineCartanDatum,
    AffineWeight,
    DepthError,
    affine_freudenthal,
    affine_positive_roots,
    eq5_weight_table,
    weyl_kac_multiplicity,
)
from .lie import CartanDatum, CartanError, positive_roots, weyl_group_order
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

__version__ = "0.1.0"

__all__ = [
    "AffineCartanDatum",
    "AffineWeight",
    "CartanDatum",
    "CartanError",
    "DepthError",
    "QPolynomial",
    "QSeries",
    "QuiverGaugeDatum",
    "TruncationRefused",
    "affine_freudenthal",
    "affine_positive_roots",
    "eq5_weight_table",
    "freudenthal_multiplicity",
    "graded_section_multiplicity",
    "grothendieck_section_multiplicity",
    "lusztig_q_analog",
    "monopole_delta",
    "monopole_hilbert_series",
    "positive_roots",
    "q_kostant_partition",
    "sym_power_orbifold_series",
    "verify_diagram7_corners",
    "verify_eq1",
    "weights_from_dims",
    "weyl_group_order",
    "weyl_kac_multiplicity",
]
