import json

import pytest

from app.models.complex import SimplicialComplex
from app.services.balanced_service import BalancedService
from app.services.crosspoly_service import CrossPolytopeService


def simplex_boundary(n: int, prefix: str = "v") -> SimplicialComplex:
    """Boundary of the n-simplex on v0..vn"""
    vertices = [f"{prefix}{j}" for j in range(n + 1)]
    return SimplicialComplex(
        (tuple(v for v in vertices if v != skip) for skip in vertices), name=f"boundary_simplex_{n}"
    )


@pytest.fixture
def octahedron():
    """The 3-cross-polytope boundary with antipode and colouring"""
    return CrossPolytopeService.cross_polytope_boundary(3)


@pytest.fixture
def tetrahedron():
    return simplex_boundary(3)


@pytest.fixture
def projective_plane():
    """Six-vertex triangulation of the real projective plane"""
    faces = [
        (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
        (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
    ]
    return SimplicialComplex([tuple(f"v{i}" for i in face) for face in faces], name="rp2")


@pytest.fixture
def branching_triangles():
    """Three triangles sharing the edge ab"""
    return SimplicialComplex([("a", "b", "c"), ("a", "b", "d"), ("a", "b", "e")], name="book")


@pytest.fixture(scope="session")
def sigma_4():
    return BalancedService.build_Sigma(4)


@pytest.fixture(scope="session")
def sigma_5():
    return BalancedService.build_Sigma(5)


@pytest.fixture(scope="session")
def cs_product_5():
    return CrossPolytopeService.cs_sphere_product(5)


@pytest.fixture
def out_dir(tmp_path):
    """Fresh output directory for written artifacts"""
    return tmp_path / "artifacts"


@pytest.fixture
def octahedron_file(tmp_path, octahedron):
    """Octahedron written as a JSON document with colouring and antipode"""
    path = tmp_path / "octahedron.json"
    document = {
        "name": "octahedron",
        "vertices": list(octahedron.complex.vertices),
        "facets": [list(f) for f in octahedron.complex.facets],
        "coloring": octahedron.coloring,
        "involution": octahedron.antipode.mapping,
    }
    path.write_text(json.dumps(document))
    return path
