from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from app.schemas.complex import FVector
from app.utils.exceptions import MalformedInputException
from app.utils.helpers import face_key, vertex_key

Face = Tuple[str, ...]


def make_face(vertices: Iterable[str]) -> Face:
    """
    Normalize a vertex collection into a sorted face tuple

    Raises: MalformedInputException if a vertex repeats
    """
    items = list(vertices)
    if len(set(items)) != len(items):
        raise MalformedInputException(f"Face {items} has duplicate vertices")
    return tuple(sorted(items, key=vertex_key))


def maximal_faces(faces: Iterable[Face]) -> Tuple[Face, ...]:
    """Drop every face contained in a strictly larger one; result in canonical order"""
    by_size: Dict[int, List[FrozenSet[str]]] = {}
    for face in set(faces):
        by_size.setdefault(len(face), []).append(frozenset(face))

    kept: List[FrozenSet[str]] = []
    for size in sorted(by_size, reverse=True):
        larger = list(kept)
        for face in by_size[size]:
            if any(face < other for other in larger):
                continue
            kept.append(face)

    return tuple(sorted((make_face(f) for f in kept), key=face_key))


class SimplicialComplex:
    """
    Finite abstract simplicial complex stored by its facets.

    Instances are immutable. The void complex has no faces at all; the
    complex {∅} has the single facet () and dimension -1.
    """

    def __init__(self, facets: Iterable[Iterable[str]] = (), name: str = ""):
        self.name = name
        self._facets = maximal_faces(make_face(f) for f in facets)

    @classmethod
    def _trusted(cls, facets: Tuple[Face, ...], name: str = "") -> "SimplicialComplex":
        """Build from facets already maximal, sorted and canonical"""
        obj = cls.__new__(cls)
        obj.name = name
        obj._facets = facets
        return obj

    @property
    def facets(self) -> Tuple[Face, ...]:
        return self._facets

    @cached_property
    def facet_sets(self) -> Tuple[FrozenSet[str], ...]:
        return tuple(frozenset(f) for f in self._facets)

    @cached_property
    def vertices(self) -> Tuple[str, ...]:
        found = {v for facet in self._facets for v in facet}
        return tuple(sorted(found, key=vertex_key))

    @property
    def is_void(self) -> bool:
        """True for the complex without any face (not even the empty one)"""
        return not self._facets

    @property
    def dimension(self) -> int:
        if self.is_void:
            return -1
        return max(len(f) for f in self._facets) - 1

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self._facets}) <= 1

    @cached_property
    def faces_by_dimension(self) -> Dict[int, Tuple[Face, ...]]:
        """All faces grouped by dimension, each group in canonical order"""
        grouped: Dict[int, set] = {}
        for facet in self._facets:
            for size in range(len(facet) + 1):
                grouped.setdefault(size - 1, set()).update(combinations(facet, size))
        return {
            dim: tuple(sorted(faces, key=face_key))
            for dim, faces in sorted(grouped.items())
        }

    def faces(self, dimension: int) -> Tuple[Face, ...]:
        return self.faces_by_dimension.get(dimension, ())

    @cached_property
    def face_set(self) -> FrozenSet[Face]:
        return frozenset(f for group in self.faces_by_dimension.values() for f in group)

    def contains(self, face: Iterable[str]) -> bool:
        """Face membership: F is a face iff it lies in some facet"""
        return make_face(face) in self.face_set

    def f_vector(self) -> FVector:
        if self.is_void:
            return FVector(counts=[])
        return FVector(counts=[len(self.faces(k)) for k in range(-1, self.dimension + 1)])

    @cached_property
    def graph(self) -> nx.Graph:
        """1-skeleton as a networkx graph"""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.faces(1))
        return g

    def relabel(self, mapping: Mapping[str, str], name: Optional[str] = None) -> "SimplicialComplex":
        """Apply a vertex map (vertices outside the map are kept)"""
        return SimplicialComplex(
            (tuple(mapping.get(v, v) for v in facet) for facet in self._facets),
            name=self.name if name is None else name,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._facets == other._facets

    def __hash__(self) -> int:
        return hash(self._facets)

    def __len__(self) -> int:
        return len(self._facets)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<SimplicialComplex{label} dim={self.dimension} facets={len(self._facets)} vertices={len(self.vertices)}>"
