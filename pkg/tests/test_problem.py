import copy

import numpy as np
import pytest

from setopt import (DomainGrid, ProblemValidationError, build_problem, evaluate,
                    evaluate_at, to_document)
from setopt import fixtures as fixture_catalog

from conftest import constant_problem


def test_evaluate_tradeoff_segment(tradeoff):
    got = evaluate(tradeoff, [0.25])
    assert got.points.shape == (1, 2)
    np.testing.assert_allclose(got.points[0], [0.25, 0.75], atol=1e-12)
    far = evaluate(tradeoff, [2.0])
    assert len(far) == 9  # the sampled square
    assert far.sampling_note is not None


def test_evaluate_constant_kind():
    prob = constant_problem([[1.0, 2.0]])
    for x in prob.grid.points[:3]:
        np.testing.assert_array_equal(evaluate(prob, x).points, [[1.0, 2.0]])


def test_evaluate_disc_four_samples():
    prob = fixture_catalog.build("shifted_disc", samples=4)
    got = evaluate(prob, [1.0, 0.0])
    expected = [[-2.0, 2.0], [-3.0, 3.0], [-4.0, 2.0], [-3.0, 1.0]]
    np.testing.assert_allclose(got.points, expected, atol=1e-12)


def test_evaluate_deterministic(shifted72):
    first = evaluate(shifted72, [1.0, 1.0]).points
    second = evaluate(shifted72, [1.0, 1.0]).points
    np.testing.assert_array_equal(first, second)


def test_evaluate_total_on_grid(wedge):
    for x in wedge.grid.points:
        assert len(evaluate(wedge, x)) >= 1


def test_evaluate_rejects_off_grid(tradeoff):
    with pytest.raises(ProblemValidationError, match="not in grid"):
        evaluate(tradeoff, [0.255])


def test_evaluate_at_rejects_table():
    prob = fixture_catalog.build("tradeoff_segment")
    doc = to_document(prob)
    table = {
        "schema_version": "1",
        "cone": doc["cone"],
        "domain": {"points": [[0.0], [1.0]]},
        "map": {"kind": "table",
                "parameters": {"points": [[0.0], [1.0]],
                               "clouds": [[[0.0, 1.0]], [[1.0, 0.0]]]}},
    }
    built = build_problem(table)
    assert not built.map_model.is_analytic
    with pytest.raises(ProblemValidationError, match="off the grid"):
        evaluate_at(built, [0.5])


def test_build_problem_validations():
    base = fixture_catalog.document("kinked_interval")

    doc = copy.deepcopy(base)
    doc["cone"]["q"] = [0.0]
    with pytest.raises(ProblemValidationError, match="not interior"):
        build_problem(doc)

    doc = copy.deepcopy(base)
    doc["domain"] = {"points": []}
    with pytest.raises(ProblemValidationError, match="empty grid"):
        build_problem(doc)

    doc = copy.deepcopy(base)
    doc["domain"] = {"points": [[0.0]], "box": [[-1.0, 1.0]]}
    with pytest.raises(ProblemValidationError, match="exactly one"):
        build_problem(doc)

    doc = copy.deepcopy(base)
    doc["schema_version"] = "99"
    with pytest.raises(ProblemValidationError, match="schema_version"):
        build_problem(doc)

    doc = copy.deepcopy(base)
    doc["map"]["kind"] = "mystery"
    with pytest.raises(ProblemValidationError, match="unknown map kind"):
        build_problem(doc)

    # lower bound above the upper bound must be rejected eagerly
    doc = copy.deepcopy(base)
    doc["map"]["parameters"]["upper"] = [{"fn": {"type": "const", "c": -5.0}}]
    with pytest.raises(ProblemValidationError, match="interval violation"):
        build_problem(doc)

    doc = copy.deepcopy(base)
    doc["tolerances"]["tie_tol"] = 0.0
    with pytest.raises(ProblemValidationError, match="positive"):
        build_problem(doc)


def test_order_unit_interior_error_matches_orthant_case():
    doc = {
        "schema_version": "1",
        "cone": {"dual_generators": [[1.0, 0.0], [0.0, 1.0]], "q": [0.0, 1.0]},
        "domain": {"points": [[0.0]]},
        "map": {"kind": "constant", "parameters": {"cloud": [[0.0, 0.0]]}},
    }
    with pytest.raises(ProblemValidationError, match="order unit not interior"):
        build_problem(doc)


def test_image_dimension_checked():
    doc = {
        "schema_version": "1",
        "cone": {"dual_generators": [[1.0]], "q": [1.0]},
        "domain": {"points": [[0.0]]},
        "map": {"kind": "constant", "parameters": {"cloud": [[0.0, 0.0]]}},
    }
    with pytest.raises(ProblemValidationError, match="dimension"):
        build_problem(doc)


def test_grid_invariants():
    with pytest.raises(ProblemValidationError, match="distinct"):
        DomainGrid(np.array([[0.0], [0.0]]))
    with pytest.raises(ProblemValidationError, match="outside box"):
        DomainGrid(np.array([[3.0]]), box=np.array([[-1.0, 1.0]]))
    grid = DomainGrid.from_box([[-1.0, 1.0], [0.0, 2.0]], [3, 5])
    assert len(grid) == 15
    np.testing.assert_allclose(grid.step_estimate(), [1.0, 0.5])


def test_fixture_documents_round_trip():
    for name in fixture_catalog.FIXTURES:
        doc = fixture_catalog.document(name)
        rebuilt = to_document(build_problem(doc))
        assert rebuilt == doc, f"round trip changed {name}"
