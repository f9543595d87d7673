import pytest

from app.models.permutation import VertexMap
from app.models.polytope import GluedComplex, PolytopePiece
from app.services.balanced_service import BalancedService, canonical, color_of, sigma_facet
from app.services.homology_service import HomologyService
from app.services.verify_service import VerifyService
from app.utils.exceptions import GluingException, HandleIllegalException, ValidationException


def octahedron_piece(octahedron) -> GluedComplex:
    return GluedComplex.from_piece(PolytopePiece(
        complex=octahedron.complex,
        sigma=("x1", "x2", "x3"),
        antipode=octahedron.antipode,
        coloring=octahedron.coloring,
    ))


def test_labels_and_colours():
    """Test colour lookup on primed and tagged labels"""
    assert color_of("x'3") == 3
    assert color_of("y12@4") == 12
    assert canonical("y'2@7") == "y'2"


def test_sigma_facets():
    """Test the distinguished facets on both sides of the swap"""
    assert sigma_facet(3, 1) == ("x1", "y2", "y3")
    assert sigma_facet(3, 3) == ("x1", "x2", "x3")
    assert sigma_facet(3, 4) == ("x2", "x3", "y1")
    with pytest.raises(ValidationException):
        sigma_facet(3, 7)


def test_map_f_shifts_colours():
    """Test that f raises every colour by one and commutes with the swap"""
    f = BalancedService.map_f(4)
    assert f("x4") == "y'1"
    assert f("y2") == "y'3"
    swap = BalancedService.swap_xy(4)
    for v in f.domain:
        assert f(swap(v)) == swap(f(v))
        assert color_of(f(v)) == color_of(v) % 4 + 1


def test_gamma_piece_is_cross_polytope():
    """Test that each piece is a cross-polytope with sigma opposite f(sigma)"""
    piece = BalancedService.gamma_piece(4, 2)
    assert len(piece.complex) == 16
    assert piece.opposite == BalancedService.map_f(4).apply_face(piece.sigma)
    assert VerifyService.check_balanced(piece.complex, piece.coloring).passed


@pytest.mark.parametrize("d", [3, 4, 5])
def test_deleted_edges_match_explicit_list(d):
    """Test the deleted edges against their closed-form list"""
    edges = BalancedService.deleted_edges(d)
    assert len(edges) == 2 * d
    assert set(edges) == BalancedService.explicit_deleted_edges(d)


def test_figure_connected_sum():
    """Test the two-octahedron connected sum"""
    glued = BalancedService.figure_connected_sum()
    assert glued.complex.f_vector().counts == [1, 8, 18, 12]
    assert glued.distinguished.facets == (("x1", "y2", "y3"), ("y1", "y2", "y3"))
    assert VerifyService.check_balanced(glued.complex, glued.coloring).passed
    profile = HomologyService.reduced_homology(glued.complex)
    assert profile.same_groups(HomologyService.sphere_profile(2))


def test_connected_sum_rejects_distinguished_edge(octahedron):
    """Test that an edge of the distinguished facet cannot be glued"""
    piece = octahedron_piece(octahedron)
    ident = VertexMap({v: v for v in octahedron.complex.vertices})
    with pytest.raises(ValidationException):
        BalancedService.diamond_connected_sum(piece, ("x1", "x2"), piece, ("x1", "x2"), ident)


def test_connected_sum_requires_full_identification(octahedron):
    """Test that the identification must cover the whole edge star"""
    piece = octahedron_piece(octahedron)
    ident = VertexMap({"x1": "x1", "y2": "y2", "x3": "x3"})
    with pytest.raises(GluingException):
        BalancedService.diamond_connected_sum(piece, ("x1", "y2"), piece, ("x1", "y2"), ident)


def test_handle_addition_rejects_shared_neighbour(octahedron):
    """Test that a handle on a single octahedron is illegal"""
    piece = octahedron_piece(octahedron)
    phi = VertexMap({"x1": "y1", "y2": "x2", "x3": "y3", "y3": "x3"}, name="phi")
    with pytest.raises(HandleIllegalException) as error:
        BalancedService.diamond_handle_addition(piece, ("x1", "y2"), ("x2", "y1"), phi)
    assert (error.value.vertex, error.value.neighbor) == ("x1", "x2")


@pytest.mark.parametrize("d", [3, 4])
def test_gamma_facets_and_vertices(d):
    """Test the size of the doubled cross-polytope complex"""
    result = BalancedService.build_Gamma(d)
    assert len(result.gamma) == d * 2 ** d
    assert len(result.gamma.vertices) == 4 * d


def test_gamma_chain_matches_gamma():
    """Test that gluing the pieces one by one gives the same complex"""
    chain, closed, collapsed = BalancedService.build_gamma_chain(4)
    assert len(chain.complex.vertices) == 6 * 4 - 2
    assert len(closed.complex.vertices) == 16
    assert collapsed == BalancedService.build_Gamma(4).gamma


def test_sigma_four(sigma_4):
    """Test face numbers, balance and homology of Sigma for d = 4"""
    sigma = sigma_4.sigma
    f = sigma.f_vector()
    assert (f.f(0), f.f(1), f.f(3)) == (16, 80, 64)
    assert BalancedService.expected_f_numbers(4) == {0: 16, 1: 80, 3: 64}
    assert VerifyService.check_balanced(sigma, sigma_4.coloring).passed
    assert VerifyService.check_closed_pseudomanifold(sigma).passed
    assert HomologyService.reduced_homology(sigma).betti == [0, 1, 1, 1]


def test_sigma_five(sigma_5):
    """Test face numbers and homology of Sigma for d = 5"""
    f = sigma_5.sigma.f_vector()
    assert (f.f(0), f.f(1), f.f(4)) == (20, 140, 184)
    assert HomologyService.reduced_homology(sigma_5.sigma).betti == [0, 0, 2, 0, 1]
    assert VerifyService.link_homology_survey(sigma_5.sigma, jobs=1).passed


@pytest.mark.slow
def test_sigma_six():
    """Test face numbers and homology of Sigma for d = 6"""
    sigma = BalancedService.build_Sigma(6).sigma
    f = sigma.f_vector()
    assert {k: f.f(k) for k in (0, 1, 5)} == BalancedService.expected_f_numbers(6) == {0: 24, 1: 216, 5: 464}
    profile = HomologyService.reduced_homology(sigma)
    assert profile.same_groups(HomologyService.sphere_product_profile(2, 3))


def test_sigma_three_is_two_octahedra():
    """Test that the smallest case falls apart into two octahedra"""
    sigma = BalancedService.build_Sigma(3).sigma
    assert sigma.f_vector().f(1) == BalancedService.expected_f_numbers(3)[1] == 24
    assert HomologyService.reduced_homology(sigma).betti == [1, 0, 2]


def test_intermediates(sigma_4):
    """Test that the tube and the two outer balls cover Sigma"""
    parts = sigma_4.intermediates()
    assert set(parts) == {"gamma", "delta1", "delta2", "f_delta1", "f_delta2", "tube"}
    total = len(parts["delta2"]) + len(parts["tube"]) + len(parts["f_delta2"])
    assert total == len(sigma_4.sigma)


def test_missing_edge_ledger(sigma_4):
    """Test the three sources of non-edges"""
    ledger = BalancedService.missing_edge_ledger(4, sigma_4.sigma)
    assert len(ledger.non_edges) == 40
    assert len(ledger.same_color) == 24
    assert len(ledger.deleted) == 8
    assert len(ledger.never_shared) == 8


def test_symmetries(sigma_4):
    """Test the dihedral symmetry group of Sigma"""
    swap, reflect, turn = BalancedService.symmetry_generators(4)
    for generator in (swap, reflect, turn):
        assert VerifyService.check_automorphism(sigma_4.sigma, generator).passed
        assert VerifyService.check_preserves_non_edges(sigma_4.sigma, generator).passed
    assert turn.power(4) == swap
    closure = VerifyService.group_closure([swap, reflect, turn])
    assert closure.order == 16
    assert closure.vertex_transitive


def test_symmetry_generators_need_d_four():
    """Test the lower bound on the symmetry generators"""
    with pytest.raises(ValidationException):
        BalancedService.symmetry_generators(3)

