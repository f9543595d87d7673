import random

import pytest

from app.models.complex import SimplicialComplex
from app.models.matrix import IntegerMatrix
from app.services.certify_service import random_sparse_matrix
from app.services.complex_service import ComplexService
from app.services.homology_service import HomologyService
from app.utils.exceptions import ValidationException
from tests.conftest import simplex_boundary


def test_simplex_boundaries_are_spheres():
    """Test that the boundary of the n-simplex is an (n-1)-sphere"""
    for n in range(1, 6):
        profile = HomologyService.reduced_homology(simplex_boundary(n))
        assert profile.same_groups(HomologyService.sphere_profile(n - 1))


def test_boundary_maps_compose_to_zero(octahedron):
    """Test that consecutive boundary maps compose to zero"""
    chain = HomologyService.boundary_matrices(octahedron.complex)
    assert chain.composition_vanishes()
    assert chain.boundary(0).shape == (1, 6)
    assert chain.boundary(2).shape == (12, 8)


def test_projective_plane_has_two_torsion(projective_plane):
    """Test the reduced homology of the six-vertex projective plane"""
    profile = HomologyService.reduced_homology(projective_plane)
    assert profile.betti == [0, 0, 0]
    assert profile.torsion == [[], [2], []]
    assert profile.lines()[1] == "H_1 = Z^0 + Z/2"


def test_rank_only_mode_drops_torsion(projective_plane):
    """Test that skipping torsion keeps the Betti numbers"""
    profile = HomologyService.reduced_homology(projective_plane, torsion=False)
    assert profile.betti == [0, 0, 0]
    assert profile.is_torsion_free


def test_unreduced_homology(octahedron):
    """Test the unreduced convention on the octahedron"""
    profile = HomologyService.reduced_homology(octahedron.complex, reduced=False)
    assert profile.betti == [1, 0, 1]
    assert profile.euler_characteristic == 2


def test_two_points():
    """Test the reduced homology of S^0"""
    points = SimplicialComplex([("a",), ("b",)])
    assert HomologyService.reduced_homology(points).betti == [1]


def test_void_complex_is_rejected():
    """Test that homology of the void complex is refused"""
    with pytest.raises(ValidationException):
        HomologyService.reduced_homology(SimplicialComplex())


def test_cone_is_acyclic(octahedron):
    """Test that a cone has no reduced homology"""
    cone = ComplexService.join_cone(octahedron.complex, "apex")
    profile = HomologyService.reduced_homology(cone)
    assert profile.same_groups(HomologyService.acyclic_profile(3))


def test_smith_normal_form_small():
    """Test invariant factors of a 2x2 matrix"""
    snf = HomologyService.smith_normal_form(IntegerMatrix.from_dense([[2, 4], [6, 8]]))
    assert snf.invariant_factors == (2, 4)
    assert snf.rank == 2


def test_smith_normal_form_transforms():
    """Test that the returned transforms diagonalize the matrix"""
    matrix = IntegerMatrix.from_dense([[2, 0, 0], [0, 4, 0], [0, 0, 6]])
    snf = HomologyService.smith_normal_form(matrix, transforms=True)
    product = snf.left.matmul(matrix).matmul(snf.right)
    assert all(r == c for r, c in product.entries())
    assert snf.invariant_factors == (2, 2, 24)


def test_smith_normal_form_random_matrices():
    """Test divisibility, diagonal form and unimodular transforms on seeded random matrices"""
    rng = random.Random(11)
    for _ in range(60):
        matrix = random_sparse_matrix(rng, 12)
        snf = HomologyService.smith_normal_form(matrix, transforms=True)
        factors = snf.invariant_factors
        assert all(b % a == 0 for a, b in zip(factors, factors[1:]))
        product = snf.left.matmul(matrix).matmul(snf.right)
        assert all(r == c for r, c in product.entries())
        assert abs(int(snf.left.to_domain_matrix().to_dense().det())) == 1
        assert abs(int(snf.right.to_domain_matrix().to_dense().det())) == 1
        assert factors == HomologyService.smith_normal_form(matrix).invariant_factors
        assert snf.rank == HomologyService.matrix_rank(matrix)


def test_transforms_refused_for_large_matrix():
    """Test the size guard on transform requests"""
    matrix = IntegerMatrix(61, 1, {(0, 0): 1})
    with pytest.raises(ValidationException):
        HomologyService.smith_normal_form(matrix, transforms=True)


def test_empty_sphere_profile():
    """Test the profile of the (-1)-sphere and the lower bound"""
    assert HomologyService.sphere_profile(-1).betti == []
    with pytest.raises(ValidationException):
        HomologyService.sphere_profile(-2)


def test_matrix_rank():
    """Test rank of a singular and a zero matrix"""
    assert HomologyService.matrix_rank(IntegerMatrix.from_dense([[1, 2], [2, 4]])) == 1
    assert HomologyService.matrix_rank(IntegerMatrix(3, 3)) == 0


def test_sphere_product_profile():
    """Test the expected groups of a product of spheres"""
    assert HomologyService.sphere_product_profile(2, 1).betti == [0, 1, 1, 1]
    assert HomologyService.sphere_product_profile(2, 2).betti == [0, 0, 2, 0, 1]
    assert HomologyService.sphere_product_profile(0, 2).betti == [1, 0, 2]
