import numpy as np
import pytest

from setopt import (ConeSpec, DomainGrid, MapModel,
                    ProblemValidationError, SetValuedProblem, check_asymptotic_gap,
                    check_attainment, check_coercivity, check_colevel_compact_at,
                    check_regular_global_inf, check_transfer_closed, existence_report)
from setopt import fixtures as fixture_catalog

from conftest import constant_problem


def test_attainment_verdicts(shifted72):
    assert check_attainment(shifted72).status == "holds"
    assert check_attainment(shifted72).caveats == []
    hyper = fixture_catalog.build("hyperbola_escape", sample_size=50)
    verdict = check_attainment(hyper)
    assert verdict.status == "holds"
    assert any("log grid" in c for c in verdict.caveats)
    table = _table_with_gap()
    assert check_attainment(table).status == "holds"


def test_rgi_holds_on_kinked(kinked):
    assert check_regular_global_inf(kinked).status == "holds"


def test_rgi_fails_on_ramp_unit_ball(ramp):
    verdict = check_regular_global_inf(ramp, restrict_norm=1.0)
    assert verdict.status == "fails"
    assert verdict.witness == pytest.approx([-0.5], abs=1e-9)
    # globally the same map is fine: the infimum is attained at 1.5
    assert check_regular_global_inf(ramp).status == "holds"


def test_rgi_constant_map():
    assert check_regular_global_inf(constant_problem([[1.0, 1.0]])).status == "holds"


def test_rgi_fails_decay_at_origin(decay):
    verdict = check_regular_global_inf(decay)
    assert verdict.status == "fails"
    assert verdict.witness == pytest.approx([0.0], abs=1e-9)


def _table_with_gap():
    # scalar values (0, 5, 5) on three points: the middle point sits one
    # step from the minimizer, and a table map cannot be refined
    pts = [[0.0], [1.0], [2.0]]
    clouds = [[[0.0]], [[5.0]], [[5.0]]]
    return SetValuedProblem(
        grid=DomainGrid(np.asarray(pts)),
        map_model=MapModel(kind="table", params={"points": pts, "clouds": clouds}),
        cone=ConeSpec.orthant(1, [1.0]),
    )


def test_rgi_inconclusive_for_coarse_table():
    verdict = check_regular_global_inf(_table_with_gap())
    assert verdict.status == "inconclusive"
    assert "resolution" in verdict.evidence["limiting_resource"]


def test_transfer_closed_verdicts(kinked, parabola):
    ladder = np.concatenate([[1.5], 1.5 * np.power(0.5, np.arange(1, 20))])
    assert check_transfer_closed(kinked, ladder).status == "holds"
    assert check_transfer_closed(parabola).status == "holds"
    assert check_transfer_closed(constant_problem([[0.5, 0.5]])).status == "holds"


def test_transfer_closed_rejects_bad_samples(kinked):
    with pytest.raises(ProblemValidationError):
        check_transfer_closed(kinked, [-1.0])


def test_coercivity_verdicts(shifted72, decay):
    verdict = check_coercivity(shifted72, lam_probe=-3.0)
    assert verdict.status == "holds"
    np.testing.assert_allclose(verdict.evidence["colevel_points"], [[1.0, 0.0]])
    assert check_coercivity(decay).status == "fails"
    assert check_coercivity(constant_problem([[1.0, 1.0]])).status == "fails"
    with pytest.raises(ProblemValidationError):
        check_coercivity(decay, lam_probe=-5.0)


def test_coercivity_inconclusive_without_box():
    prob = constant_problem([[1.0, 1.0]], points=[[0.0], [1.0]])
    verdict = check_coercivity(prob)
    assert verdict.status == "inconclusive"
    assert "box" in verdict.evidence["limiting_resource"]


def test_colevel_compact_at_disc(shifted72):
    verdict = check_colevel_compact_at(shifted72, [1.0, 0.0])
    assert verdict.status == "fails"  # whole grid, touches the box
    assert verdict.evidence["compactness_implication_active"] is False


def test_colevel_compact_at_tradeoff(tradeoff):
    verdict = check_colevel_compact_at(tradeoff, [0.0])
    assert verdict.status == "holds"
    assert verdict.evidence["x0_strictly_efficient"] is True


def test_colevel_compact_at_constant():
    prob = constant_problem([[1.0, 1.0]])
    verdict = check_colevel_compact_at(prob, [0.0])
    assert verdict.status == "fails"
    # the disjunction still holds: every point of a constant map is efficient
    assert verdict.evidence["x0_strictly_efficient"] is True


def test_existence_report_disc(shifted72):
    report = existence_report(shifted72)
    assert report.coercive.applicable
    assert report.strict_solutions_nonempty
    assert [1.0, 0.0] in report.strict_solution_sample


def test_existence_report_wedge(wedge):
    report = existence_report(wedge)
    assert report.coercive.applicable
    assert report.strict_solution_sample == [[0.0]]


def test_existence_report_ramp(ramp):
    report = existence_report(ramp)
    assert report.coercive.applicable
    assert not report.noncoercive.applicable
    assert any("norm ball 1" in reason for reason in report.noncoercive.blocked_by)
    assert report.restricted_rgi[1].status == "fails"


def test_existence_report_decay(decay):
    report = existence_report(decay)
    assert not report.coercive.applicable
    assert not report.noncoercive.applicable
    assert "asymptotic_gap" in report.noncoercive.blocked_by
    assert report.strict_solutions_nonempty  # conclusion check must not fire


def test_coercive_problems_pass_gap_check(shifted72, wedge, ramp, kinked, tradeoff):
    for prob in (shifted72, wedge, ramp, kinked, tradeoff):
        if check_coercivity(prob).holds:
            assert check_asymptotic_gap(prob).holds


def test_applicable_report_means_solutions_exist(shifted72, wedge, ramp, kinked, tradeoff,
                                                 parabola):
    for prob in (shifted72, wedge, ramp, kinked, tradeoff, parabola):
        report = existence_report(prob)
        if report.coercive.applicable or report.noncoercive.applicable:
            assert report.strict_solutions_nonempty
