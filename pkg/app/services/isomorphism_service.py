from collections import Counter, deque
from typing import Dict, List, Optional, Tuple

from app.core.config import settings
from app.models.complex import SimplicialComplex, make_face
from app.models.permutation import Coloring, VertexMap
from app.services.complex_service import ComplexService
from app.utils.exceptions import SearchBudgetExceeded
from app.utils.helpers import vertex_key

import logging

logger = logging.getLogger(__name__)


def _signatures(complex_: SimplicialComplex, coloring: Optional[Coloring]) -> Dict[str, tuple]:
    """(degree, link f-vector, colour-class size) per vertex"""
    class_size = Counter(coloring.values()) if coloring else Counter()
    graph = complex_.graph
    signatures = {}
    for v in complex_.vertices:
        link = ComplexService.link(complex_, [v])
        signatures[v] = (
            graph.degree(v),
            tuple(link.f_vector().counts),
            class_size[coloring[v]] if coloring else 0,
        )
    return signatures


class IsomorphismService:
    """Backtracking search for simplicial isomorphisms of small complexes"""

    def __init__(self, budget: Optional[int] = None):
        self.budget = settings.ISOMORPHISM_BUDGET if budget is None else budget
        self.nodes = 0

    def find_isomorphism(
        self,
        first: SimplicialComplex,
        second: SimplicialComplex,
        first_coloring: Optional[Coloring] = None,
        second_coloring: Optional[Coloring] = None,
    ) -> Optional[VertexMap]:
        """
        Find a vertex bijection mapping the facets of `first` onto those of `second`

        Args:
            first, second: complexes to compare
            first_coloring, second_coloring: when both are given the map must
            also send colour classes onto colour classes

        Returns: the bijection, or None when none exists
        Raises: SearchBudgetExceeded after `budget` search nodes
        """
        self.nodes = 0
        if first.f_vector() != second.f_vector() or first.is_pure != second.is_pure:
            return None
        use_colors = first_coloring is not None and second_coloring is not None
        sig1 = _signatures(first, first_coloring if use_colors else None)
        sig2 = _signatures(second, second_coloring if use_colors else None)
        if Counter(sig1.values()) != Counter(sig2.values()):
            return None

        by_signature: Dict[tuple, List[str]] = {}
        for w in second.vertices:
            by_signature.setdefault(sig2[w], []).append(w)

        order = self._search_order(first, sig1, by_signature)
        graph1, graph2 = first.graph, second.graph
        faces2 = second.face_set
        facets_of: Dict[str, List[frozenset]] = {v: [] for v in first.vertices}
        for facet in first.facet_sets:
            for v in facet:
                facets_of[v].append(facet)

        mapping: Dict[str, str] = {}
        used = set()
        color_map: Dict[int, int] = {}

        def consistent(v: str, w: str) -> bool:
            for u, image in mapping.items():
                if graph1.has_edge(u, v) != graph2.has_edge(image, w):
                    return False
            if use_colors:
                c1, c2 = first_coloring[v], second_coloring[w]
                if color_map.get(c1, c2) != c2:
                    return False
                if c1 not in color_map and c2 in color_map.values():
                    return False
            mapping[v] = w
            try:
                for facet in facets_of[v]:
                    part = [mapping[u] for u in facet if u in mapping]
                    if make_face(part) not in faces2:
                        return False
            finally:
                del mapping[v]
            return True

        def extend(position: int) -> bool:
            if position == len(order):
                return self._facets_match(first, second, mapping)
            v = order[position]
            for w in by_signature[sig1[v]]:
                if w in used:
                    continue
                self.nodes += 1
                if self.nodes > self.budget:
                    raise SearchBudgetExceeded(self.budget)
                if not consistent(v, w):
                    continue
                mapping[v] = w
                used.add(w)
                added_color = use_colors and first_coloring[v] not in color_map
                if added_color:
                    color_map[first_coloring[v]] = second_coloring[w]
                if extend(position + 1):
                    return True
                if added_color:
                    del color_map[first_coloring[v]]
                used.discard(w)
                del mapping[v]
            return False

        found = extend(0)
        logger.debug(f"Isomorphism search visited {self.nodes} nodes, found={found}")
        return VertexMap(mapping, name="iso") if found else None

    @staticmethod
    def _search_order(
        complex_: SimplicialComplex, signatures: Dict[str, tuple], candidates: Dict[tuple, List[str]]
    ) -> List[str]:
        """Breadth-first over facets, starting from the rarest signature"""
        rank = lambda v: (len(candidates[signatures[v]]), vertex_key(v))
        remaining = set(complex_.vertices)
        order: List[str] = []
        while remaining:
            start = min(remaining, key=rank)
            queue = deque([start])
            remaining.discard(start)
            while queue:
                v = queue.popleft()
                order.append(v)
                near = set()
                for facet in complex_.facet_sets:
                    if v in facet:
                        near.update(facet & remaining)
                for u in sorted(near, key=rank):
                    remaining.discard(u)
                    queue.append(u)
        return order

    @staticmethod
    def _facets_match(first: SimplicialComplex, second: SimplicialComplex, mapping: Dict[str, str]) -> bool:
        images = {make_face(mapping[v] for v in facet) for facet in first.facets}
        return images == set(second.facets)
