import pytest

from app.models.complex import SimplicialComplex
from app.services.crosspoly_service import CrossPolytopeService
from app.services.shelling_service import ShellingService
from app.utils.exceptions import NotAShellingException, ValidationException


@pytest.mark.parametrize("i,d", [
    (2, 5), (3, 5), (3, 6),
    pytest.param(4, 7, marks=pytest.mark.slow),
])
def test_belt_order_is_shelling(i, d):
    """Test the belt order up to the shellable level"""
    order = ShellingService.lemma_shelling_order(i, d)
    ball = CrossPolytopeService.gamma_range(0, i, d)
    certificate = ShellingService.verify_shelling(ball, order)
    assert certificate.restrictions[0] == []
    for level in range(1, i + 1):
        for k in range(1, d + 1):
            step = 1 + (level - 1) * d + (k - 1)
            assert certificate.restrictions[step] == list(ShellingService.expected_restriction(level, k, d))


def test_order_length():
    """Test that the belt order lists one facet plus d per level"""
    assert len(ShellingService.lemma_shelling_order(3, 6)) == 1 + 3 * 6


def test_belt_order_fails_above_bound():
    """Test that the level-4 belt order in d = 6 is rejected at its fourth facet"""
    order = ShellingService.lemma_shelling_order(4, 6)
    ball = CrossPolytopeService.gamma_range(0, 4, 6)
    with pytest.raises(NotAShellingException) as error:
        ShellingService.verify_shelling(ball, order)
    assert error.value.facet == CrossPolytopeService.tau(4, 4, 6)


def test_expected_restriction():
    """Test the restriction faces of the first levels and the cyclic wrap"""
    assert ShellingService.expected_restriction(0, 1, 5) == ()
    assert ShellingService.expected_restriction(1, 3, 5) == ("y3",)
    assert ShellingService.expected_restriction(3, 5, 6) == ("y1", "y5")


def test_vertex_contact_is_not_a_shelling():
    """Test that two triangles meeting in a vertex fail at the second step"""
    complex_ = SimplicialComplex([("a", "b", "c"), ("c", "d", "e")])
    with pytest.raises(NotAShellingException) as error:
        ShellingService.verify_shelling(complex_, [("a", "b", "c"), ("c", "d", "e")])
    assert error.value.step == 2
    assert error.value.intersection == [["c"]]


def test_order_must_cover_facets(octahedron):
    """Test that a partial order is refused"""
    with pytest.raises(ValidationException):
        ShellingService.verify_shelling(octahedron.complex, octahedron.complex.facets[:3])


def test_octahedron_shelling(octahedron):
    """Test a shelling of the octahedron and its final restriction face"""
    order = [CrossPolytopeService.facet_from_signs(signs) for signs in (
        "XXX", "YXX", "XYX", "YYX", "XXY", "YXY", "XYY", "YYY",
    )]
    certificate = ShellingService.verify_shelling(octahedron.complex, order)
    assert certificate.restrictions[-1] == ["y1", "y2", "y3"]
