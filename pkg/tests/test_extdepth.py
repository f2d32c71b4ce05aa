"""Acyclic closures, the module-map cochain complexes, Ext classes, depth.

The closure is validated structurally (square-zero, corrections in positive
parts, acyclicity in low degrees) rather than against particular correction
choices, except for the two models where the correction is forced by
dimension count and can be frozen exactly.  Class levels and depths are
frozen from hand derivations: forced-representative arguments pin the raw
levels, and evaluation at the unit pins the effective levels.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from model_zoo import ZOO, build_model
from sullivan.differential import zero_derivation
from sullivan.extdepth import (
    AcyclicClosure,
    HomComplex,
    depth,
    ext_summary,
    gorenstein_report,
)
from sullivan.linalg import add_scaled, image_subspace, rank

F = Fraction


def closure_for(name):
    return AcyclicClosure(ZOO[name]())


def closure_cohomology_dim(clo, n):
    basis_n = clo.closure_basis(n)
    above = {pair: i for i, pair in enumerate(clo.closure_basis(n + 1))}
    cols = []
    for pair in basis_n:
        image = clo.differential({pair: F(1)})
        cols.append({above[key]: c for key, c in image.items()})
    kernel_dim = len(basis_n) - rank(cols)
    if n == 0:
        return kernel_dim
    here = {pair: i for i, pair in enumerate(basis_n)}
    prev_cols = []
    for pair in clo.closure_basis(n - 1):
        image = clo.differential({pair: F(1)})
        prev_cols.append({here[key]: c for key, c in image.items()})
    return kernel_dim - rank(prev_cols)


@pytest.mark.parametrize("name", ["s2", "cp2", "odd35", "eight", "s3s3", "kz2"])
def test_corrections_live_in_positive_parts(name):
    clo = closure_for(name)
    for i, value in enumerate(clo.d_susp):
        gen_term = (((i, 1),), ())
        assert value.get(gen_term) == F(1)
        for (m, w), c in value.items():
            if (m, w) == gen_term:
                continue
            assert m and w, "correction term must have positive parts on both sides"


def test_sphere2_correction_is_forced():
    clo = closure_for("s2")
    alg = clo.alg
    x, y = alg.index["x"], alg.index["y"]
    assert clo.d_susp[x] == {(((x, 1),), ()): F(1)}
    assert clo.d_susp[y] == {(((y, 1),), ()): F(1), (((x, 1),), ((x, 1),)): F(-1)}


def test_projective2_correction_is_forced():
    clo = closure_for("cp2")
    alg = clo.alg
    x, y = alg.index["x"], alg.index["y"]
    assert clo.d_susp[y] == {(((y, 1),), ()): F(1), (((x, 2),), ((x, 1),)): F(-1)}


def test_divided_power_products():
    clo = closure_for("odd35")  # all suspensions even, all carry powers
    sx = 0
    assert clo.gw_mul(((sx, 2),), ((sx, 3),)) == (((sx, 5),), F(10))
    assert clo.gw_mul((), ((sx, 1),)) == (((sx, 1),), F(1))
    eight = closure_for("eight")  # sx and su have odd degree there
    assert eight.gw_mul(((0, 1),), ((0, 1),)) is None
    assert eight.gw_mul(((1, 1),), ((0, 1),)) == (((0, 1), (1, 1)), F(-1))


@pytest.mark.parametrize("name", ["s2", "cp2", "odd35", "eight", "s3s3"])
def test_closure_differential_squares_to_zero(name):
    rng = random.Random(8080)
    clo = closure_for(name)
    for degree in range(2, 9):
        basis = clo.closure_basis(degree)
        if not basis:
            continue
        for _ in range(6):
            elt = {rng.choice(basis): F(rng.randint(1, 4))}
            assert clo.differential(clo.differential(elt)) == {}


@pytest.mark.parametrize("name", ["s2", "cp2", "odd35", "eight", "s3s3", "kz2"])
def test_closure_is_acyclic_in_low_degrees(name):
    clo = closure_for(name)
    assert closure_cohomology_dim(clo, 0) == 1
    for n in range(1, 7):
        assert closure_cohomology_dim(clo, n) == 0, f"degree {n}"


@pytest.mark.parametrize("name", ["cp2", "eight"])
def test_hom_differential_squares_to_zero(name):
    clo = closure_for(name)
    hom = HomComplex(clo, max(clo.alg.degrees) + 2)
    for n in range(-2, 9):
        cols = hom.matrix(n)
        nxt = hom.matrix(n + 1)
        for col in cols:
            out = {}
            for j, c in col.items():
                out = add_scaled(out, c, nxt[j])
            assert out == {}


# name -> (class degree, raw level, effective level, evaluation nonzero)
CALIBRATION = {
    "s3": (3, 1, 1, True),
    "kz2": (-1, 0, 0, False),
    "s2": (2, 1, 1, True),
    "s3s3": (6, 2, 2, True),
    "cp2": (4, 1, 2, True),
    "cp3": (6, 1, 3, True),
    "cp4": (8, 1, 4, True),
    "odd35": (11, 3, 3, True),
    "eight": (8, 2, 4, True),
    "s2s3": (5, None, 2, True),
}


@pytest.mark.parametrize("name", sorted(CALIBRATION))
def test_ext_classes_match_calibration(name):
    summary = ext_summary(ZOO[name]())
    degree, raw, eff, ev = CALIBRATION[name]
    assert summary.stable
    assert summary.dimensions == {degree: 1}
    (cls,) = summary.classes
    assert cls.degree == degree
    assert cls.effective_level == eff
    assert cls.ev_nonzero == ev
    if raw is not None:
        assert cls.raw_level == raw


@pytest.mark.parametrize("name,expected", [
    ("s2", 1), ("s3", 1), ("s3s3", 2), ("cp2", 2), ("cp3", 3), ("cp4", 4),
    ("odd35", 3), ("eight", 4), ("kz2", 0), ("s2s3", 2),
])
def test_depth_calibration(name, expected):
    assert depth(ZOO[name]()) == expected


def test_depth_of_zero_differential_on_odd_generators():
    # forgetting the differential of the all-odd model keeps depth 3
    model = ZOO["odd35"]()
    flat = model.with_differential(zero_derivation(model.algebra), "flat")
    assert depth(flat) == 3


def test_summary_is_cached_per_differential():
    model = ZOO["s2"]()
    first = ext_summary(model)
    again = ext_summary(ZOO["s2"]())
    assert first is again


def test_quadratic_piece_of_eight_needs_the_persistence_filter():
    # with unbounded cohomology every cutoff breeds boundary classes whose
    # levels drift with the cutoff; only the genuine class survives
    from sullivan.differential import wordlength_part

    model = ZOO["eight"]()
    d2 = wordlength_part(model.differential, 2)
    sub = model.with_differential(d2, "quadratic")
    summary = ext_summary(sub)
    assert summary.stable and summary.filtered
    assert summary.dimensions == {8: 1}
    (cls,) = summary.classes
    assert cls.signature() == (8, 2, 2, False)
    assert depth(sub) == 2


def test_quartic_piece_of_eight_reports_honest_failure():
    # dv = x^4 alone leaves two generators without differential; the cutoff
    # artifacts never settle and the computation must say so
    from sullivan.differential import wordlength_part
    from sullivan.errors import TruncationError

    model = ZOO["eight"]()
    d4 = wordlength_part(model.differential, 4)
    sub = model.with_differential(d4, "quartic")
    summary = ext_summary(sub)
    assert not summary.stable
    with pytest.raises(TruncationError):
        depth(sub)


def test_gorenstein_report_for_an_elliptic_model():
    report = gorenstein_report(ZOO["cp2"]())
    assert report["ext_dimension"] == 1
    assert report["elliptic"] and report["window_argument_applies"]
    assert report["stable"] and not report["filtered"]
    assert report["degree"] == 4
    assert report["raw_level"] == 1
    assert report["effective_level"] == 2
    assert report["ev_nonzero"]


def test_gorenstein_report_flags_the_non_elliptic_case():
    report = gorenstein_report(ZOO["kz2"]())
    assert report["ext_dimension"] == 1
    assert not report["elliptic"]
    assert not report["window_argument_applies"]
    assert not report["ev_nonzero"]
