from collections import Counter
from itertools import combinations
from typing import Dict, Iterable, List, Sequence

import networkx as nx

from app.models.complex import Face, SimplicialComplex, make_face, maximal_faces
from app.schemas.complex import FVector
from app.utils.exceptions import (
    FaceNotFoundException,
    MalformedInputException,
    NotAPseudomanifoldException,
    ValidationException,
    VertexCollisionException,
)

import logging

logger = logging.getLogger(__name__)

VOID = SimplicialComplex()


class ComplexService:
    """Elementary operations on simplicial complexes"""

    @staticmethod
    def from_facets(faces: Iterable[Iterable[str]], name: str = "") -> SimplicialComplex:
        """
        Build the complex generated by the given faces

        Raises: MalformedInputException on an empty list or a duplicate-vertex face
        """
        faces = [list(f) for f in faces]
        if not faces:
            raise MalformedInputException("A complex needs at least one face")
        return SimplicialComplex(faces, name=name)

    @staticmethod
    def f_vector(complex_: SimplicialComplex) -> FVector:
        return complex_.f_vector()

    @staticmethod
    def _require_face(complex_: SimplicialComplex, face: Iterable[str]) -> Face:
        face = make_face(face)
        if not complex_.contains(face):
            raise FaceNotFoundException(face)
        return face

    @staticmethod
    def star(complex_: SimplicialComplex, face: Iterable[str]) -> SimplicialComplex:
        """
        Closed star: all faces whose union with `face` is a face

        Raises: FaceNotFoundException if `face` is not in the complex
        """
        face = ComplexService._require_face(complex_, face)
        target = frozenset(face)
        return SimplicialComplex._trusted(
            tuple(f for f, s in zip(complex_.facets, complex_.facet_sets) if target <= s),
            name=f"st({' '.join(face)})",
        )

    @staticmethod
    def link(complex_: SimplicialComplex, face: Iterable[str]) -> SimplicialComplex:
        """
        Link: faces of the star disjoint from `face`

        Raises: FaceNotFoundException if `face` is not in the complex
        """
        face = ComplexService._require_face(complex_, face)
        target = frozenset(face)
        return SimplicialComplex(
            (s - target for s in complex_.facet_sets if target <= s),
            name=f"lk({' '.join(face)})",
        )

    @staticmethod
    def join(first: SimplicialComplex, second: SimplicialComplex, name: str = "") -> SimplicialComplex:
        """
        Join of two complexes on disjoint vertex sets

        Raises: VertexCollisionException if the vertex sets meet
        """
        shared = set(first.vertices) & set(second.vertices)
        if shared:
            raise VertexCollisionException(sorted(shared)[0])
        return SimplicialComplex(
            (a + b for a in first.facets for b in second.facets),
            name=name or f"{first.name}*{second.name}",
        )

    @staticmethod
    def join_cone(complex_: SimplicialComplex, apex: str, name: str = "") -> SimplicialComplex:
        """
        Cone with the given apex

        Raises: VertexCollisionException if the apex is already a vertex
        """
        if apex in complex_.vertices:
            raise VertexCollisionException(apex)
        return SimplicialComplex(
            (f + (apex,) for f in complex_.facets),
            name=name or f"{complex_.name}*{apex}",
        )

    @staticmethod
    def restriction(complex_: SimplicialComplex, vertices: Iterable[str], name: str = "") -> SimplicialComplex:
        """Induced subcomplex on a vertex set; foreign vertices are ignored"""
        keep = frozenset(vertices)
        pieces = [s & keep for s in complex_.facet_sets]
        if not any(pieces):
            return VOID
        return SimplicialComplex((p for p in pieces if p), name=name or f"{complex_.name}[W]")

    @staticmethod
    def complement(
        complex_: SimplicialComplex, sub: SimplicialComplex, name: str = ""
    ) -> SimplicialComplex:
        """
        Complex generated by the facets of `complex_` that are not facets of `sub`

        Raises: ValidationException if the complexes are not pure of equal
        dimension or `sub` has a facet outside `complex_`
        """
        if sub.is_void:
            return complex_
        if not (complex_.is_pure and sub.is_pure) or complex_.dimension != sub.dimension:
            raise ValidationException(
                "Validation failed",
                details={"complement": "both complexes must be pure of the same dimension"},
            )
        own = set(complex_.facets)
        stray = [f for f in sub.facets if f not in own]
        if stray:
            raise ValidationException(
                "Validation failed",
                details={"complement": f"facet {list(stray[0])} is not a facet of the ambient complex"},
            )
        removed = set(sub.facets)
        return SimplicialComplex._trusted(
            tuple(f for f in complex_.facets if f not in removed),
            name=name or f"{complex_.name}\\{sub.name}",
        )

    @staticmethod
    def remove_facets(
        complex_: SimplicialComplex, drop: Iterable[Face], name: str = ""
    ) -> SimplicialComplex:
        """Delete a set of facets without the purity checks of complement"""
        removed = {make_face(f) for f in drop}
        return SimplicialComplex._trusted(
            tuple(f for f in complex_.facets if f not in removed), name=name or complex_.name
        )

    @staticmethod
    def skeleton(complex_: SimplicialComplex, i: int) -> SimplicialComplex:
        """
        All faces of dimension at most i

        Raises: ValidationException unless -1 <= i <= dim
        """
        if not -1 <= i <= complex_.dimension:
            raise ValidationException(
                "Validation failed",
                details={"i": f"must satisfy -1 <= i <= {complex_.dimension}, got {i}"},
            )
        faces = []
        for facet in complex_.facets:
            if len(facet) <= i + 1:
                faces.append(facet)
            else:
                faces.extend(combinations(facet, i + 1))
        return SimplicialComplex(faces, name=f"skel_{i}({complex_.name})")

    @staticmethod
    def ridge_counts(complex_: SimplicialComplex) -> Counter:
        """Number of facets containing each ridge of a pure complex"""
        counts: Counter = Counter()
        for facet in complex_.facets:
            counts.update(combinations(facet, len(facet) - 1))
        return counts

    @staticmethod
    def boundary_complex(complex_: SimplicialComplex, name: str = "") -> SimplicialComplex:
        """
        Complex generated by the ridges that lie in exactly one facet

        Raises:
            ValidationException if the complex is not pure
            NotAPseudomanifoldException if a ridge lies in three or more facets
        """
        if complex_.is_void:
            return VOID
        if not complex_.is_pure:
            raise ValidationException(
                "Validation failed", details={"boundary": "complex must be pure"}
            )
        counts = ComplexService.ridge_counts(complex_)
        for ridge, count in counts.items():
            if count > 2:
                raise NotAPseudomanifoldException(ridge, count)
        free = [ridge for ridge, count in counts.items() if count == 1]
        if not free:
            return VOID
        return SimplicialComplex(free, name=name or f"∂{complex_.name}")

    @staticmethod
    def union(first: SimplicialComplex, second: SimplicialComplex, name: str = "") -> SimplicialComplex:
        return SimplicialComplex(
            first.facets + second.facets, name=name or f"{first.name}∪{second.name}"
        )

    @staticmethod
    def union_all(complexes: Sequence[SimplicialComplex], name: str = "") -> SimplicialComplex:
        return SimplicialComplex(
            (f for c in complexes for f in c.facets), name=name
        )

    @staticmethod
    def intersection(first: SimplicialComplex, second: SimplicialComplex, name: str = "") -> SimplicialComplex:
        """
        Faces common to both complexes, returned by their maximal elements

        Complexes without a common vertex give the void complex.
        """
        if first.is_void or second.is_void:
            return VOID
        small, large = sorted((first, second), key=lambda c: len(c.face_set))
        common = [f for f in small.face_set if f and f in large.face_set]
        if not common:
            return VOID
        return SimplicialComplex._trusted(
            maximal_faces(common), name=name or f"{first.name}∩{second.name}"
        )

    @staticmethod
    def is_subcomplex(sub: SimplicialComplex, complex_: SimplicialComplex) -> bool:
        faces = complex_.face_set
        return all(f in faces for f in sub.facets)

    @staticmethod
    def facet_ridge_graph(complex_: SimplicialComplex) -> nx.Graph:
        """
        Graph on the facets with an edge for every shared ridge

        Raises: ValidationException if the complex is not pure
        """
        if not complex_.is_pure:
            raise ValidationException(
                "Validation failed", details={"facet_ridge_graph": "complex must be pure"}
            )
        by_ridge: Dict[Face, List[Face]] = {}
        for facet in complex_.facets:
            for ridge in combinations(facet, len(facet) - 1):
                by_ridge.setdefault(ridge, []).append(facet)

        graph = nx.Graph()
        graph.add_nodes_from(complex_.facets)
        for ridge, facets in by_ridge.items():
            for a, b in combinations(facets, 2):
                graph.add_edge(a, b, ridge=ridge)
        return graph

