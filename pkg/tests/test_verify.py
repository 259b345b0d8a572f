import dataclasses

from gsforms.action import invariant_basis, upstairs_ring
from gsforms.construct import ConstructionResult, PipelineParams
from gsforms.groups import FiniteGroup
from gsforms.poly import MultiPoly, PolyRing, parse_poly
from gsforms.rep import sum_copies
from gsforms.verify import (
    MANDATORY,
    certify_bundle,
    certify_descent,
    certify_dimension,
    certify_freeness,
    certify_invariance,
    certify_smoothness,
    orbit_spotcheck,
)

from catalogue import F5, instance_b_rep, regular

P_FIXED = (1, 1, 0, 0, 0, 0)


def _bump(f: MultiPoly) -> MultiPoly:
    F = f.ring.field
    m, c = f.sorted_terms()[0]
    terms = dict(f.terms)
    terms[m] = F.add(c, F.one)
    return MultiPoly(f.ring, {k: v for k, v in terms.items() if v != F.zero})


def _through_fixed_point(result):
    """Replace each g_j by g_j - g_j(p) * T0*T1 so Y passes through p = [1:1:0:0:0:0]."""
    ring = upstairs_ring(result.rep)
    t01 = ring.monomial((1, 1, 0, 0, 0, 0))
    F = ring.field
    gs = [g - t01.scale(g.evaluate(P_FIXED)) for g in result.gs]
    assert all(g.evaluate(P_FIXED) == F.zero for g in gs)
    return dataclasses.replace(result, gs=gs)


def test_instance_a_mandatory_certificates(instance_a_result):
    res = instance_a_result
    assert res.green
    assert len(res.gs) == 3 and res.rep.n == 5
    for name in MANDATORY:
        assert res.certificates.certs[name].passed
    assert res.certificates.certs["dimension"].details["dimension"] == 2
    assert res.certificates.certs["freeness"].details["tested"] == ["1"]


def test_invariance_detects_a_bumped_coefficient(instance_a_result):
    bad = dataclasses.replace(instance_a_result, gs=[_bump(instance_a_result.gs[0])] + instance_a_result.gs[1:])
    cert = certify_invariance(bad)
    assert not cert.passed and "g_1" in cert.witness
    bundle = certify_bundle(bad, orbit=False)
    assert not bundle.green
    assert bundle.first_failure()[0] == "invariance"


def test_freeness_sabotage(instance_a_result):
    bad = _through_fixed_point(instance_a_result)
    cert = certify_freeness(bad)
    assert not cert.passed and "fixed locus" in cert.witness


def test_dimension_and_smoothness_failures(instance_a_result):
    res = instance_a_result
    fewer = dataclasses.replace(res, gs=res.gs[:2], hs=res.hs[:2])
    assert not certify_dimension(fewer).passed
    doubled = dataclasses.replace(res, gs=[res.gs[0] * res.gs[0]] + res.gs[1:])
    assert not certify_smoothness(doubled).passed


def test_orbit_spotcheck_instance_a(instance_a_result):
    cert = orbit_spotcheck(instance_a_result)
    assert cert.passed
    assert cert.details["field_order"] == 25
    assert cert.details["points_on_Y"] > 0
    # g and g^-1 both checked at every point
    assert cert.details["checks"] == 2 * cert.details["points_on_Y"]


def test_orbit_spotcheck_point_budget(instance_a_result):
    cert = orbit_spotcheck(instance_a_result, max_points=10)
    assert not cert.passed and "budget" in cert.witness


def test_trivial_group_passes_vacuously():
    rep = sum_copies(regular(F5, FiniteGroup.trivial()), 3)
    qmd = invariant_basis(rep, 1)
    U = PolyRing(3, F5, "U")
    R = upstairs_ring(rep)
    h = parse_poly("U0^2 + U1^2 + U2^2", U)
    g = parse_poly("T0^2 + T1^2 + T2^2", R)
    res = ConstructionResult(rep, 1, PipelineParams(r=2, d_start=1), qmd, [h], [g], [2], 0)
    assert certify_invariance(res).passed
    assert certify_freeness(res).passed and certify_freeness(res).details["tested"] == []
    assert certify_descent(res, 3).passed
    assert orbit_spotcheck(res).passed


def test_instance_b_descent():
    from gsforms.construct import run_pipeline

    res = run_pipeline(instance_b_rep(), PipelineParams(r=2))
    cert = certify_descent(res, 4)
    assert cert.passed
    assert cert.details["geometric_over_kprime"] == [4, 10, 20, 35]
    bundle = certify_bundle(res)
    assert bundle.green and bundle.certs["orbit_spotcheck"].passed
