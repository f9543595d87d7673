import pytest

from app.models.complex import SimplicialComplex
from app.models.polytope import InductiveSeed
from app.services.complex_service import ComplexService
from app.services.crosspoly_service import CrossPolytopeService, antipode_map
from app.services.homology_service import HomologyService
from app.services.inductive_service import InductiveService, boundary_profile
from app.services.verify_service import VerifyService
from app.utils.exceptions import ValidationException


@pytest.mark.parametrize("i,d", [(1, 4), (2, 4), (1, 5), (2, 5)])
def test_step_rebuilds_b_complex(i, d):
    """Test that one inductive step on B(i-1,d), B(i,d) links gives B(i,d+1)"""
    result = InductiveService.inductive_step(InductiveService.b_family_seed(i, d))
    assert result.d_next == CrossPolytopeService.b_complex(i, d + 1)
    assert result.d_cur == CrossPolytopeService.b_complex(i, d)
    assert VerifyService.check_cs(result.d_next, antipode_map(d + 1)).passed


def test_b_family_seed_range():
    """Test that i must lie in 1..d-2"""
    with pytest.raises(ValidationException):
        InductiveService.b_family_seed(3, 4)


def test_circle_seed_side_conditions():
    """Test the homology side conditions of the circle seed"""
    seed = InductiveService.circle_seed(5)
    reports = InductiveService.side_conditions(seed, 1)
    assert [r.check for r in reports] == [
        "a1_acyclic", "a2_acyclic", "b1_acyclic", "b2_acyclic",
        "b_intersection_homology", "b_intersection_boundary_homology",
    ]
    assert all(r.passed for r in reports)


def test_circle_step_boundary():
    """Test that the circle seed yields a ball bounded by S^1 x S^(d-2)"""
    result = InductiveService.inductive_step(InductiveService.circle_seed(5))
    rim = ComplexService.boundary_complex(result.d_next)
    profile = HomologyService.reduced_homology(rim)
    assert profile.same_groups(HomologyService.sphere_product_profile(1, 3))


def test_apexes_must_be_fresh():
    """Test that reusing a vertex as apex is refused"""
    ball = SimplicialComplex([("a", "b")])
    seed = InductiveSeed(a1=ball, a2=ball, b1=ball, b2=ball, u="a", v="v", u_next="p", v_next="q")
    with pytest.raises(ValidationException):
        InductiveService.inductive_step(seed)


def test_seed_intersection_mismatch():
    """Test that B1 ∩ B2 must equal A1 ∪ A2"""
    seed = InductiveSeed(
        a1=SimplicialComplex([("a",)]),
        a2=SimplicialComplex([("c",)]),
        b1=SimplicialComplex([("a", "b")]),
        b2=SimplicialComplex([("b", "c")]),
        u="u", v="v", u_next="p", v_next="q",
    )
    with pytest.raises(ValidationException):
        InductiveService.inductive_step(seed)


def test_boundary_profile():
    """Test the boundary homology of a homology S^1 of dimension 4"""
    assert boundary_profile(4, 1).betti == [0, 1, 1, 1]
