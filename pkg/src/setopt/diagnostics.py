"""Numerical checkers for the existence-theorem hypotheses.

All verdicts are evidence at a stated resolution, never proofs.  Each
checker returns holds, fails or inconclusive; a fails verdict always
carries a concrete witness, an inconclusive verdict always names the
limiting resource.

The regular-global-inf and transfer-closedness checkers have to
distinguish genuine failures (a minimizing sequence piling up against a
point whose own value stays high) from one-grid-step artifacts around an
attained minimizer.  On a fixed grid the two look identical, so for
analytic map kinds the checkers refine locally below the grid step:
artifacts dissolve under refinement, genuine witnesses persist with
values at the infimum arbitrarily close to the witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .asymptotics import GapReport, check_asymptotic_gap
from .errors import InternalConsistencyError, ProblemValidationError
from .problem import SetValuedProblem, evaluate
from .scalarizer import colevel, colevel_at_set, scalar_field, scalar_value_at
from .solver import strict_weak_efficient_brute

MARGIN_FACTOR = 10.0
_REFINE_LEVELS = (0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625)


@dataclass(frozen=True)
class Verdict:
    status: str  # "holds", "fails" or "inconclusive"
    witness: list | None = None
    evidence: dict = field(default_factory=dict)
    caveats: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": self.witness,
            "evidence": _jsonable(self.evidence),
            "caveats": list(self.caveats),
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _margin(problem: SetValuedProblem) -> float:
    return MARGIN_FACTOR * problem.tolerances.tie_tol


def check_attainment(problem: SetValuedProblem) -> Verdict:
    """Whether scalar infima over the map values are attained.

    Finite clouds are compact, so attainment always holds for the built
    problem; sampling notes are surfaced as caveats because the analytic
    set a cloud samples may behave differently.
    """
    notes = problem.map_model.sampling_notes()
    return Verdict(
        status="holds",
        evidence={"reason": "finite point clouds are compact"},
        caveats=[f"sampled analytic set: {n}" for n in notes],
    )


# ---------------------------------------------------------------------------
# regular-global-inf
# ---------------------------------------------------------------------------

def _restrict_indices(problem: SetValuedProblem, restrict_norm: float | None) -> np.ndarray:
    if restrict_norm is None:
        return np.arange(len(problem.grid))
    return np.flatnonzero(problem.grid.norms() <= restrict_norm + 1e-12)


def _inside_domain(problem: SetValuedProblem, pts: np.ndarray,
                   restrict_norm: float | None) -> np.ndarray:
    keep = np.ones(len(pts), dtype=bool)
    if problem.grid.box is not None:
        lo, hi = problem.grid.box[:, 0], problem.grid.box[:, 1]
        keep &= np.all(pts >= lo - 1e-12, axis=1) & np.all(pts <= hi + 1e-12, axis=1)
    if restrict_norm is not None:
        keep &= np.linalg.norm(pts, axis=1) <= restrict_norm + 1e-12
    return keep


def _probe_ring(x0: np.ndarray, r: float) -> np.ndarray:
    n = x0.shape[0]
    if n == 1:
        offsets = np.concatenate([np.linspace(r / 8.0, r, 8), -np.linspace(r / 8.0, r, 8)])
        return x0[None, :] + offsets[:, None]
    if n == 2:
        angles = np.arange(16) * (2.0 * np.pi / 16)
        ring = np.stack([np.cos(angles), np.sin(angles)], axis=1)
        return np.vstack([x0 + r * ring, x0 + 0.5 * r * ring])
    rng_dirs = []
    for axis in range(n):
        for sign in (1.0, -1.0):
            d = np.zeros(n)
            d[axis] = sign
            rng_dirs.append(d)
    ring = np.asarray(rng_dirs)
    return np.vstack([x0 + r * ring, x0 + 0.5 * r * ring])


def _refined_local_minima(problem: SetValuedProblem, x0: np.ndarray, step: float,
                          radii: np.ndarray, restrict_norm: float | None) -> list[float]:
    """Minimum scalar value near x0 at each sub-step radius, smallest last."""
    minima = []
    for r in radii:
        probes = _probe_ring(x0, float(r))
        probes = probes[_inside_domain(problem, probes, restrict_norm)]
        if len(probes) == 0:
            continue
        minima.append(min(scalar_value_at(problem, p) for p in probes))
    return minima


def check_regular_global_inf(problem: SetValuedProblem, radii=None,
                             restrict_norm: float | None = None) -> Verdict:
    """Whether points above the infimum admit neighborhoods bounded away from it.

    A witness is a point whose own value sits above the infimum while
    arbitrarily small punctured neighborhoods keep reaching it: the grid
    signature is a punctured one-step minimum at the infimum that does
    not dissolve under sub-step refinement.
    """
    idx = _restrict_indices(problem, restrict_norm)
    if len(idx) < 2:
        return Verdict(status="holds",
                       evidence={"reason": "restriction holds fewer than two grid points"})
    pts = problem.grid.points[idx]
    values = scalar_field(problem).values[idx]
    m = float(values.min())
    margin = _margin(problem)
    step = float(problem.grid.step_estimate().max())

    if radii is not None:
        radii = np.asarray(radii, dtype=float)
        grid_radius = float(radii.max())
        refine_radii = radii[radii < step]
    else:
        grid_radius = 1.01 * step
        refine_radii = step * np.asarray(_REFINE_LEVELS)

    candidates = np.flatnonzero(values > m + margin)
    witnesses = []
    unresolved = []
    for c in candidates:
        dists = np.linalg.norm(pts - pts[c], axis=1)
        near = (dists > 0.0) & (dists <= grid_radius)
        if not near.any():
            continue
        if float(values[near].min()) > m + margin:
            continue  # coarse neighborhood already bounded away from the infimum
        if not problem.map_model.is_analytic or len(refine_radii) == 0:
            unresolved.append(pts[c])
            continue
        minima = _refined_local_minima(problem, pts[c], step, refine_radii, restrict_norm)
        if not minima:
            unresolved.append(pts[c])
            continue
        tie = problem.tolerances.tie_tol
        if minima[-1] <= m + margin:
            witnesses.append((pts[c], minima))
        elif len(minima) >= 3 and minima[-1] < minima[-2] - tie and minima[-2] < minima[-3] - tie:
            # still descending toward the infimum at the refinement floor
            unresolved.append(pts[c])

    evidence = {
        "inf_value": m,
        "margin": margin,
        "grid_step": step,
        "restricted_to_norm": restrict_norm,
        "refinement_radii": refine_radii,
    }
    if witnesses:
        w, trace = witnesses[0]
        evidence["local_minima_trace"] = trace
        evidence["all_witnesses"] = [wi.tolist() for wi, _ in witnesses]
        return Verdict(status="fails", witness=w.tolist(), evidence=evidence)
    if unresolved:
        evidence["limiting_resource"] = "grid resolution (map not refinable off the grid)" \
            if not problem.map_model.is_analytic else "refinement floor"
        evidence["suspicious_points"] = [u.tolist() for u in unresolved]
        return Verdict(status="inconclusive", evidence=evidence)
    return Verdict(status="holds", evidence=evidence)


# ---------------------------------------------------------------------------
# transfer closedness
# ---------------------------------------------------------------------------

def check_transfer_closed(problem: SetValuedProblem, lam_samples=None) -> Verdict:
    """Whether intersecting colevel closures adds nothing over the plain sets.

    Grid closure dilates by one grid step, so at any finite resolution the
    dilated intersection may pick up a one-step collar; collar points are
    classified by local refinement exactly as in the regular-global-inf
    check.
    """
    field = scalar_field(problem)
    m = field.inf_value
    margin = _margin(problem)
    span = float(field.values.max() - m)
    if span <= margin:
        return Verdict(status="holds", evidence={"reason": "scalar field is flat"})
    if lam_samples is None:
        lam_samples = m + (span / 2.0) * np.power(0.5, np.arange(20))
    lam_samples = np.asarray(lam_samples, dtype=float)
    if np.any(lam_samples <= m):
        raise ProblemValidationError("lambda samples must be strictly above the infimum")

    steps = problem.grid.step_estimate()
    pts = problem.grid.points
    plain = np.ones(len(pts), dtype=bool)
    dilated = np.ones(len(pts), dtype=bool)
    for lam in lam_samples:
        members = colevel(problem, float(lam))
        in_set = np.zeros(len(pts), dtype=bool)
        in_set[members] = True
        plain &= in_set
        # one-step Chebyshev dilation as the grid closure surrogate
        close = np.zeros(len(pts), dtype=bool)
        member_pts = pts[members]
        for i in range(len(pts)):
            if in_set[i]:
                close[i] = True
                continue
            gaps = np.abs(member_pts - pts[i]) / steps
            close[i] = bool(np.any(np.max(gaps, axis=1) <= 1.01))
        dilated &= close

    collar = np.flatnonzero(dilated & ~plain)
    evidence = {
        "lambda_samples": lam_samples,
        "inf_value": m,
        "plain_intersection": pts[np.flatnonzero(plain)],
        "collar_points": pts[collar],
    }
    if len(collar) == 0:
        return Verdict(status="holds", evidence=evidence)

    lam_min = float(lam_samples.min())
    step = float(steps.max())
    refine_radii = step * np.asarray(_REFINE_LEVELS)
    unresolved = []
    for i in collar:
        if field.values[i] <= lam_min + margin:
            continue  # value at the collar point itself is already low; not a closure gap
        if not problem.map_model.is_analytic:
            unresolved.append(pts[i])
            continue
        minima = _refined_local_minima(problem, pts[i], step, refine_radii, None)
        if minima and minima[-1] <= lam_min + margin:
            evidence["local_minima_trace"] = minima
            evidence["witness_lambda"] = float(
                lam_samples[np.argmax(field.values[i] > lam_samples)]
            )
            return Verdict(status="fails", witness=pts[i].tolist(), evidence=evidence)
    if unresolved:
        evidence["limiting_resource"] = "grid resolution (map not refinable off the grid)"
        evidence["suspicious_points"] = [u.tolist() for u in unresolved]
        return Verdict(status="inconclusive", evidence=evidence)
    return Verdict(status="holds", evidence=evidence)


# ---------------------------------------------------------------------------
# coercivity
# ---------------------------------------------------------------------------

def _strictly_inside(problem: SetValuedProblem, indices: np.ndarray) -> bool:
    box = problem.grid.box
    steps = problem.grid.step_estimate()
    pts = problem.grid.points[indices]
    lo, hi = box[:, 0], box[:, 1]
    eps = 1e-9 * np.maximum(1.0, np.abs(steps))
    return bool(np.all(pts - lo >= steps - eps) and np.all(hi - pts >= steps - eps))


def check_coercivity(problem: SetValuedProblem, lam_probe: float | None = None,
                     ladder_depth: int = 16) -> Verdict:
    """Whether some colevel set above the infimum stays inside the box.

    Relative compactness is implemented as boundedness, and boundedness on
    a sampled box as lying at least one grid step inside every face.  A
    grid cannot certify unboundedness, hence inconclusive without box
    metadata.
    """
    field = scalar_field(problem)
    m = field.inf_value
    if lam_probe is None:
        span = float(field.values.max() - m)
        lam_probe = m + (span / 2.0 if span > 0.0 else 1.0)
    if lam_probe <= m:
        raise ProblemValidationError("lam_probe must be above the global infimum")
    if problem.grid.box is None:
        return Verdict(status="inconclusive",
                       evidence={"limiting_resource": "no box metadata on the grid"})

    touched = []
    for j in range(ladder_depth):
        lam = m + (lam_probe - m) * (0.5 ** j)
        members = colevel(problem, float(lam))
        if _strictly_inside(problem, members):
            return Verdict(
                status="holds",
                evidence={
                    "lambda": lam,
                    "colevel_size": int(len(members)),
                    "colevel_points": problem.grid.points[members]
                    if len(members) <= 16 else problem.grid.points[members[:16]],
                },
            )
        touched.append(lam)
    pts = problem.grid.points[colevel(problem, touched[-1])]
    witness = pts[int(np.argmax(np.linalg.norm(pts, axis=1)))]
    return Verdict(
        status="fails",
        witness=witness.tolist(),
        evidence={"probed_lambdas": touched,
                  "reason": "every probed colevel set touches the domain box"},
    )


def check_colevel_compact_at(problem: SetValuedProblem, x0) -> Verdict:
    """Boundedness of the colevel set at height F(x0), with the cross-check
    that a bounded outcome forces x0 efficient or the problem coercive."""
    idx0 = problem.grid.locate(x0)
    cloud = evaluate(problem, problem.grid.points[idx0])
    members = colevel_at_set(problem, cloud)
    if problem.grid.box is None:
        return Verdict(status="inconclusive",
                       evidence={"limiting_resource": "no box metadata on the grid"})
    bounded = _strictly_inside(problem, members)
    in_strict = idx0 in set(strict_weak_efficient_brute(problem).tolist())
    coercive = check_coercivity(problem).holds
    evidence = {
        "colevel_size": int(len(members)),
        "x0": problem.grid.points[idx0],
        "compactness_implication_active": bool(bounded),
        "x0_strictly_efficient": in_strict,
        "coercivity_holds": coercive,
        "disjunction_holds": bool(in_strict or coercive),
    }
    if not bounded:
        evidence["reason"] = "colevel set at F(x0) touches the domain box"
        return Verdict(status="fails", witness=problem.grid.points[idx0].tolist(),
                       evidence=evidence)
    if not (in_strict or coercive):
        raise InternalConsistencyError(
            "bounded colevel at F(x0) but x0 is not strictly efficient and "
            "no coercive colevel set was found"
        )
    return Verdict(status="holds", evidence=evidence)


# ---------------------------------------------------------------------------
# combined report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremVerdict:
    applicable: bool
    blocked_by: list

    def to_dict(self) -> dict:
        return {"applicable": self.applicable, "blocked_by": list(self.blocked_by)}


@dataclass(frozen=True)
class HypothesisReport:
    attainment: Verdict
    regular_global_inf: Verdict
    coercivity: Verdict
    asymptotic_gap: GapReport
    restricted_rgi: dict
    k_q_set_asserted: bool
    coercive: TheoremVerdict
    noncoercive: TheoremVerdict
    strict_solutions_nonempty: bool
    strict_solution_sample: list
    notes: list

    def to_dict(self) -> dict:
        return {
            "attainment": self.attainment.to_dict(),
            "regular_global_inf": self.regular_global_inf.to_dict(),
            "coercivity": self.coercivity.to_dict(),
            "asymptotic_gap": self.asymptotic_gap.to_dict(),
            "restricted_rgi": {str(n): v.to_dict() for n, v in self.restricted_rgi.items()},
            "k_q_set_asserted": self.k_q_set_asserted,
            "coercive_theorem": self.coercive.to_dict(),
            "noncoercive_theorem": self.noncoercive.to_dict(),
            "strict_solutions_nonempty": self.strict_solutions_nonempty,
            "strict_solution_sample": _jsonable(self.strict_solution_sample),
            "notes": list(self.notes),
        }


def existence_report(problem: SetValuedProblem, max_restrictions: int = 6) -> HypothesisReport:
    """Run all hypothesis checkers and declare which existence route applies.

    Whenever a route is declared applicable the brute-force strict
    solution set must be nonempty; a contradiction raises, since it would
    mean the checkers accepted hypotheses the grid itself refutes.
    """
    attainment = check_attainment(problem)
    rgi = check_regular_global_inf(problem)
    coercivity = check_coercivity(problem)
    gap = check_asymptotic_gap(problem)

    max_norm = float(problem.grid.norms().max())
    ns = [n for n in range(1, int(math.ceil(max_norm)) + 1)][:max_restrictions]
    restricted = {}
    for n in ns:
        if len(_restrict_indices(problem, float(n))) >= 2:
            restricted[n] = check_regular_global_inf(problem, restrict_norm=float(n))

    coercive_blockers = []
    if not attainment.holds:
        coercive_blockers.append("attainment")
    if not rgi.holds:
        coercive_blockers.append(f"regular_global_inf ({rgi.status})")
    if not coercivity.holds:
        coercive_blockers.append(f"coercivity ({coercivity.status})")
    coercive = TheoremVerdict(applicable=not coercive_blockers, blocked_by=coercive_blockers)

    noncoercive_blockers = []
    if not attainment.holds:
        noncoercive_blockers.append("attainment")
    for n, verdict in restricted.items():
        if not verdict.holds:
            noncoercive_blockers.append(
                f"regular_global_inf on norm ball {n} ({verdict.status})"
            )
    if not gap.holds:
        noncoercive_blockers.append("asymptotic_gap")
    if not problem.flags.k_q_set:
        noncoercive_blockers.append("K_q_set flag not asserted")
    noncoercive = TheoremVerdict(applicable=not noncoercive_blockers,
                                 blocked_by=noncoercive_blockers)

    strict = strict_weak_efficient_brute(problem)
    nonempty = len(strict) > 0
    if (coercive.applicable or noncoercive.applicable) and not nonempty:
        raise InternalConsistencyError(
            "an existence route was declared applicable but the brute-force "
            "strict solution set is empty"
        )
    sample = problem.grid.points[strict[: min(8, len(strict))]].tolist()
    notes = [
        "image of the grid is a finite union of finite clouds, hence order-bounded",
        "finite-dimensional domain with the norm topology: unit ball compactness "
        "is automatic and the asserted minimizing-sequence condition holds by default",
    ]
    return HypothesisReport(
        attainment=attainment,
        regular_global_inf=rgi,
        coercivity=coercivity,
        asymptotic_gap=gap,
        restricted_rgi=restricted,
        k_q_set_asserted=problem.flags.k_q_set,
        coercive=coercive,
        noncoercive=noncoercive,
        strict_solutions_nonempty=nonempty,
        strict_solution_sample=sample,
        notes=notes,
    )
