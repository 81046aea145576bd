import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lpcompact.banach import scalar
from lpcompact.measure_space import dyadic_space
from lpcompact.operators import ess_osc
from lpcompact.rademacher import (
    RademacherSpec,
    dyadic_probe_sets,
    example_report,
    rademacher,
    rademacher_l1,
    rademacher_l1_family,
)
from lpcompact.stepfn import StepFunction


def signs(f):
    return [v.components[0] for v in f.values]


def test_values():
    assert signs(rademacher(RademacherSpec(1, 1))) == [1, -1]
    assert signs(rademacher(RademacherSpec(2, 3))) == [1, -1, 1, -1]
    r = rademacher(RademacherSpec(3, 5))
    assert r.integral().components[0] == 0
    assert r.space == dyadic_space(5)


def test_spec_validation():
    with pytest.raises(ValueError):
        RademacherSpec(0, 3)
    with pytest.raises(ValueError):
        RademacherSpec(4, 3)


def test_square_is_one():
    one = StepFunction.constant(dyadic_space(4), scalar(1))
    for n in range(1, 5):
        r = rademacher(RademacherSpec(n, 4))
        assert r.multiply(r) == one


def test_l1_family_shape():
    H = rademacher_l1_family(3, 4)
    assert len(H) == 3
    for n, f in enumerate(H, start=1):
        assert all(v.norm() == 1 for v in f.values)
        assert f == rademacher_l1(n, 4)
        assert f.lp_norm_power(1) == 1
    assert (H.members[0] - H.members[1]).lp_norm_power(1) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.data())
def test_oscillation_two_and_norm_identity(L, data):
    n = data.draw(st.integers(1, L))
    f = rademacher_l1(n, L)
    r = rademacher(RademacherSpec(n, L))
    assert ess_osc(f, f.space.omega) == 2
    rng = random.Random(data.draw(st.integers(0, 2**16)))
    E = f.space.set({i for i in f.space.atoms if rng.random() < 0.5})
    assert f.integral(E).norm() == abs(r.integral(E).components[0])


def test_probe_sets():
    sets, exhaustive = dyadic_probe_sets(5, 3)
    assert exhaustive and len(sets) == 2**8
    sets, exhaustive = dyadic_probe_sets(8, 6, seed=3)
    assert not exhaustive
    assert sets == dyadic_probe_sets(8, 6, seed=3)[0]


def test_example_report():
    rep = example_report(8, 8, 3, Fraction(9, 10))
    assert rep.integral_tight_indicators
    assert all(rep.max_integral_norm[n] == Fraction(1, 2) for n in (1, 2, 3))
    assert all(rep.max_integral_norm[n] == 0 for n in range(4, 9))
    assert rep.family_covering.exact == 8
    assert rep.value_covering.exact == 16
    assert all(rep.ui.tail[M] == 0 for M in rep.ui.tail if M >= 1)
    assert rep.norm_identity_holds and rep.passed


def test_example_report_large_radius():
    rep = example_report(3, 3, 1, 2)
    assert rep.predicted_family_covering == rep.predicted_value_covering == 1
    assert rep.passed
