import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setopt import (ConeSpec, DimensionMismatchError, PointCloudSet, ProblemValidationError,
                    equivalent_l, evaluate, gerstewitz_many, lower_less, strictly_lower_less)

ORTHANT2 = ConeSpec.orthant(2, [1.0, 1.0])


def cloud(*pts):
    return PointCloudSet(np.asarray(pts, dtype=float))


def test_cloud_validation():
    with pytest.raises(ProblemValidationError):
        PointCloudSet(np.empty((0, 2)))
    with pytest.raises(ProblemValidationError):
        PointCloudSet(np.array([[np.nan, 1.0]]))


def test_lower_less_examples():
    a = cloud([0.0, 0.0])
    b = cloud([1.0, 1.0])
    assert lower_less(a, a, ORTHANT2)  # reflexive
    assert lower_less(a, b, ORTHANT2)
    assert not lower_less(b, a, ORTHANT2)  # (-1, -1) is outside the orthant


def test_strictly_lower_less_examples():
    assert strictly_lower_less(cloud([0.0, 0.0]), cloud([1.0, 1.0]), ORTHANT2)
    assert not strictly_lower_less(cloud([0.0, 0.0]), cloud([1.0, 0.0]), ORTHANT2)


def test_strict_needs_witness_below_disc(shifted72):
    # disc sample around (-3, 2) cannot strictly dominate a point whose
    # second coordinate sits below the disc's floor at 1
    disc = evaluate(shifted72, [1.0, 0.0])
    probe = cloud([-2.9, -2.9])
    assert not strictly_lower_less(disc, probe, shifted72.cone)
    # enumeration over the sample: no point has both coordinates under (-4, 2)
    target = cloud([-4.0, 2.0])
    diffs = np.array([-4.0, 2.0]) - disc.points
    witnesses = np.all(diffs > 0, axis=1)
    assert not witnesses.any()
    assert not strictly_lower_less(disc, target, shifted72.cone)


def test_equivalent_examples():
    a = cloud([0.0, 0.0])
    assert equivalent_l(a, a, ORTHANT2)
    # adding a dominated point does not change A + P
    assert equivalent_l(a, cloud([0.0, 0.0], [1.0, 1.0]), ORTHANT2)
    assert not equivalent_l(a, cloud([1.0, 1.0]), ORTHANT2)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        lower_less(cloud([0.0, 0.0]), cloud([0.0, 0.0, 0.0]), ORTHANT2)


small_cloud = st.lists(
    st.lists(st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
             min_size=2, max_size=2),
    min_size=1, max_size=5,
)


@given(small_cloud, small_cloud, small_cloud)
@settings(max_examples=150, deadline=None)
def test_preorder_properties(pa, pb, pc):
    a, b, c = cloud(*pa), cloud(*pb), cloud(*pc)
    assert lower_less(a, a, ORTHANT2)
    if lower_less(a, b, ORTHANT2) and lower_less(b, c, ORTHANT2):
        assert lower_less(a, c, ORTHANT2)


@given(small_cloud, small_cloud)
@settings(max_examples=150, deadline=None)
def test_strict_implies_nonstrict(pa, pb):
    a, b = cloud(*pa), cloud(*pb)
    if strictly_lower_less(a, b, ORTHANT2):
        assert lower_less(a, b, ORTHANT2)


@given(small_cloud, small_cloud)
@settings(max_examples=150, deadline=None)
def test_scalarization_compatible(pa, pb):
    # A <=l B forces the scalar minimum over A below the one over B
    a, b = cloud(*pa), cloud(*pb)
    if lower_less(a, b, ORTHANT2):
        min_a = gerstewitz_many(ORTHANT2, a.points).min()
        min_b = gerstewitz_many(ORTHANT2, b.points).min()
        assert min_a <= min_b + 1e-9
