import pytest

from app.models.complex import SimplicialComplex, make_face
from app.services.complex_service import ComplexService
from app.services.crosspoly_service import CrossPolytopeService
from app.utils.exceptions import (
    FaceNotFoundException,
    MalformedInputException,
    NotAPseudomanifoldException,
    ValidationException,
    VertexCollisionException,
)


def test_make_face_sorts_naturally():
    """Test that labels sort by prefix and then numerically"""
    assert make_face(["x10", "y1", "x2"]) == ("x2", "x10", "y1")
    assert make_face(["y'1", "x'2", "x3"]) == ("x3", "x'2", "y'1")


def test_make_face_rejects_duplicates():
    """Test that a repeated vertex is malformed"""
    with pytest.raises(MalformedInputException):
        make_face(["a", "b", "a"])


def test_facets_are_maximal():
    """Test that generating faces collapse to their maximal elements"""
    complex_ = SimplicialComplex([("a", "b"), ("a",), ("a", "b", "c"), ("d",)])
    assert complex_.facets == (("a", "b", "c"), ("d",))
    assert not complex_.is_pure


def test_void_and_empty_face_complexes():
    """Test the void complex and the complex holding only the empty face"""
    void = SimplicialComplex()
    assert void.is_void
    assert void.f_vector().counts == []
    empty = SimplicialComplex([()])
    assert empty.dimension == -1
    assert empty.f_vector().counts == [1]


def test_from_facets_rejects_empty_input():
    """Test that a complex needs at least one facet"""
    with pytest.raises(MalformedInputException):
        ComplexService.from_facets([])


def test_octahedron_f_vector(octahedron):
    """Test the f-vector of the octahedron"""
    assert ComplexService.f_vector(octahedron.complex).counts == [1, 6, 12, 8]


def test_star_and_link_of_vertex(octahedron):
    """Test that a vertex link of the octahedron is a 4-cycle"""
    star = ComplexService.star(octahedron.complex, ["x1"])
    link = ComplexService.link(octahedron.complex, ["x1"])
    assert len(star) == 4
    assert link.vertices == ("x2", "x3", "y2", "y3")
    assert link.f_vector().proper == [4, 4]


def test_link_of_missing_face(octahedron):
    """Test that an antipodal pair is not a face"""
    with pytest.raises(FaceNotFoundException):
        ComplexService.link(octahedron.complex, ["x1", "y1"])


def test_cone_rejects_existing_apex(octahedron):
    """Test that the apex of a cone must be fresh"""
    with pytest.raises(VertexCollisionException):
        ComplexService.join_cone(octahedron.complex, "x1")
    cone = ComplexService.join_cone(octahedron.complex, "apex")
    assert len(cone.vertices) == 7
    assert cone.dimension == 3


def test_restriction(octahedron):
    """Test the induced subcomplex on the x vertices"""
    part = ComplexService.restriction(octahedron.complex, ["x1", "x2", "x3"])
    assert part.facets == (("x1", "x2", "x3"),)
    assert ComplexService.restriction(octahedron.complex, ["z"]).is_void


def test_complement(octahedron):
    """Test removing one facet and the stray-facet guard"""
    sub = SimplicialComplex([("x1", "x2", "x3")])
    rest = ComplexService.complement(octahedron.complex, sub)
    assert len(rest) == 7
    with pytest.raises(ValidationException):
        ComplexService.complement(octahedron.complex, SimplicialComplex([("a", "b", "c")]))


def test_boundary_complex(octahedron, branching_triangles):
    """Test the boundary of a triangle, a closed surface and a branching complex"""
    triangle = SimplicialComplex([("a", "b", "c")])
    assert ComplexService.boundary_complex(triangle).facets == (("a", "b"), ("a", "c"), ("b", "c"))
    assert ComplexService.boundary_complex(octahedron.complex).is_void
    with pytest.raises(NotAPseudomanifoldException) as error:
        ComplexService.boundary_complex(branching_triangles)
    assert error.value.ridge == ("a", "b")
    assert error.value.count == 3


def test_skeleton(octahedron):
    """Test the 1-skeleton and the dimension range"""
    assert len(ComplexService.skeleton(octahedron.complex, 1)) == 12
    with pytest.raises(ValidationException):
        ComplexService.skeleton(octahedron.complex, 5)


def test_union_and_intersection():
    """Test that two triangles sharing an edge meet in that edge"""
    first = SimplicialComplex([("a", "b", "c")])
    second = SimplicialComplex([("b", "c", "d")])
    assert ComplexService.intersection(first, second).facets == (("b", "c"),)
    assert len(ComplexService.union(first, second)) == 2
    assert ComplexService.intersection(first, SimplicialComplex([("e", "f")])).is_void
    assert ComplexService.is_subcomplex(SimplicialComplex([("b", "c")]), first)


def test_facet_ridge_graph(octahedron):
    """Test that every octahedron facet has three neighbours"""
    graph = ComplexService.facet_ridge_graph(octahedron.complex)
    assert graph.number_of_nodes() == 8
    assert all(degree == 3 for _, degree in graph.degree())


@pytest.mark.parametrize("dimension", [0, 1, 3, 4])
def test_star_is_join_of_face_and_link(dimension):
    """Test st(F) = F * lk(F) on every face of one dimension of B(2,5)"""
    complex_ = CrossPolytopeService.b_complex(2, 5)
    for face in complex_.faces(dimension):
        star = ComplexService.star(complex_, face)
        joined = ComplexService.join(SimplicialComplex([face]), ComplexService.link(complex_, face))
        assert star == joined


@pytest.mark.parametrize("i,d", [(1, 4), (2, 5), (0, 5)])
def test_complement_twice_gives_back_the_subcomplex(i, d):
    """Test that taking the complement in the cross-polytope twice is the identity"""
    sphere = CrossPolytopeService.cross_polytope_boundary(d).complex
    b = CrossPolytopeService.b_complex(i, d)
    rest = ComplexService.complement(sphere, b)
    assert len(rest) + len(b) == len(sphere)
    assert ComplexService.complement(sphere, rest) == b


@pytest.mark.parametrize("i,d", [(1, 4), (1, 5), (2, 5), (2, 6)])
def test_boundary_of_boundary_is_void(i, d):
    """Test that the boundary of B(i,d) has no boundary"""
    rim = CrossPolytopeService.b_complex_boundary(i, d)
    assert not rim.is_void
    assert ComplexService.boundary_complex(rim).is_void
