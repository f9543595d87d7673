import random

import pytest

from app.services.balanced_service import BalancedService
from app.services.certify_service import (
    TARGETS,
    CertifyService,
    all_plan,
    manifest_name,
    random_sparse_matrix,
)
from app.utils.exceptions import ConstructionInvariantException, ValidationException


@pytest.fixture
def service(out_dir):
    return CertifyService(out_dir=str(out_dir), fmt="json", jobs=1)


def test_manifest_name():
    """Test that manifest names are stable and skip flags"""
    assert manifest_name("b-complex", {"i": 2, "d": 5}) == "b-complex_d5_i2"
    assert manifest_name("balanced-product", {"d": 4, "emit_intermediates": True}) == "balanced-product_d4"


def test_all_plan_covers_targets():
    """Test that the full plan touches every target; b-suite stands in for b-complex"""
    plan = all_plan(6)
    assert {target for target, _ in plan} == set(TARGETS) - {"b-complex"}
    assert ("balanced-product", {"d": 3}) in plan
    with pytest.raises(ValidationException):
        all_plan(4)


def test_random_sparse_matrix_is_reproducible():
    """Test that the seed fixes the sample"""
    first = random_sparse_matrix(random.Random(7), 10)
    second = random_sparse_matrix(random.Random(7), 10)
    assert first == second
    assert max(first.shape) <= 10


def test_unknown_target(service):
    """Test that only known targets run"""
    with pytest.raises(ValidationException):
        service.certify("torus", {})


def test_missing_parameter(service):
    """Test that a pipeline parameter cannot be left out"""
    with pytest.raises(ValidationException):
        service.certify("b-complex", {"d": 4})


def test_b_complex_run(service, out_dir):
    """Test every check of B(2,5) and the written artifacts"""
    manifest = service.certify("b-complex", {"i": 2, "d": 5})
    assert manifest.passed, manifest.first_failure()
    checks = {r.check for r in manifest.reports}
    assert {"homology", "boundary_homology", "symmetry_order", "complement_isomorphism"} <= checks
    assert (out_dir / "b_complex_2_5.json").exists()
    assert (out_dir / "manifests" / "b-complex_d5_i2.json").exists()


def test_cs_product_even_dimension(service):
    """Test that for even d the shift symmetries are recorded, not required"""
    manifest = service.certify("cs-product", {"d": 6})
    assert manifest.passed, manifest.first_failure()
    even = next(r for r in manifest.reports if r.check == "even_d_symmetry")
    assert set(even.metrics) == {"automorphism[R]", "automorphism[S]"}


def test_cs_product_odd_symmetry_group(service):
    """Test the group of order 4d on the odd product"""
    manifest = service.certify("cs-product", {"d": 5})
    assert manifest.passed, manifest.first_failure()
    order = next(r for r in manifest.reports if r.check == "symmetry_order")
    assert order.metrics["value"] == 20


def test_balanced_product_three(service):
    """Test the two-octahedron case"""
    manifest = service.certify("balanced-product", {"d": 3})
    assert manifest.passed, manifest.first_failure()
    assert any(r.check == "component_2_octahedron" for r in manifest.reports)


def test_balanced_product_intermediates(service, out_dir):
    """Test that intermediates are saved on request"""
    manifest = service.certify("balanced-product", {"d": 4, "emit_intermediates": True})
    assert manifest.passed, manifest.first_failure()
    assert "balanced_product_4_f_delta2.json" in manifest.outputs


def test_inductive_run(service):
    """Test the inductive checks for d = 4"""
    manifest = service.certify("inductive", {"d": 4})
    assert manifest.passed, manifest.first_failure()
    assert any(r.check == "circle.boundary_homology" for r in manifest.reports)


def test_failures_are_recorded_not_raised(service, monkeypatch):
    """Test that a construction error becomes a failing report"""
    def broken(d):
        raise ConstructionInvariantException("forced", details={"d": d})

    monkeypatch.setattr(BalancedService, "build_Sigma", staticmethod(broken))
    manifest = service.certify("balanced-product", {"d": 4})
    assert not manifest.passed
    assert manifest.first_failure().check == "construction"
    assert manifest.first_failure().witness["details"] == {"d": 4}


@pytest.mark.asyncio
async def test_certify_many(service):
    """Test running several targets through the worker pool"""
    plan = [("cross-polytope", {"d": 3}), ("cycle", {"d": 5}), ("homology-engine", {"samples": 5})]
    manifests = await service.certify_many(plan)
    assert [m.target for m in manifests] == ["cross-polytope", "cycle", "homology-engine"]
    assert all(m.passed for m in manifests)
