from collections import deque
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.core.config import settings
from app.models.complex import Face, SimplicialComplex, make_face
from app.models.permutation import Coloring, Permutation
from app.schemas.report import GroupClosureReport, VerificationReport
from app.services.complex_service import ComplexService
from app.services.homology_service import HomologyService
from app.utils.exceptions import ClosureCapExceeded, NotAPseudomanifoldException, ValidationException
from app.utils.helpers import face_key, vertex_key

import logging

logger = logging.getLogger(__name__)

MANIFOLD_NOTE = "necessary conditions passed"


def _trimmed(betti: List[int]) -> List[int]:
    """Betti numbers without trailing zero degrees"""
    end = len(betti)
    while end and betti[end - 1] == 0:
        end -= 1
    return betti[:end]


def _link_betti(facets: Tuple[Face, ...], vertex: str) -> Tuple[str, List[int], bool]:
    """Worker: reduced Betti numbers of one vertex link"""
    complex_ = SimplicialComplex._trusted(facets)
    profile = HomologyService.reduced_homology(ComplexService.link(complex_, [vertex]))
    return vertex, profile.betti, profile.is_torsion_free


class VerifyService:
    """Service for certificate checks; failures are reports, never exceptions"""

    @staticmethod
    def check_balanced(complex_: SimplicialComplex, coloring: Optional[Coloring] = None) -> VerificationReport:
        """
        Proper colouring with exactly dim+1 colours, numbered 1..dim+1

        Without a colouring an exact backtracking search runs; it is limited
        to COLORING_SEARCH_MAX_VERTICES vertices.

        Raises: ValidationException for an impure complex or an oversized search
        """
        if not complex_.is_pure:
            raise ValidationException("Validation failed", details={"complex": "must be pure"})
        colors = complex_.dimension + 1

        if coloring is not None:
            missing = [v for v in complex_.vertices if v not in coloring]
            if missing:
                return VerificationReport(check="balanced", passed=False, witness={"uncolored": missing[0]})
            foreign = [v for v in complex_.vertices if coloring[v] not in range(1, colors + 1)]
            if foreign:
                return VerificationReport(
                    check="balanced",
                    passed=False,
                    witness={"vertex": foreign[0], "color": coloring[foreign[0]], "allowed": [1, colors]},
                )
            for a, b in complex_.faces(1):
                if coloring[a] == coloring[b]:
                    return VerificationReport(
                        check="balanced", passed=False, witness={"edge": [a, b], "color": coloring[a]}
                    )
            used = sorted({coloring[v] for v in complex_.vertices})
            if len(used) != colors:
                return VerificationReport(
                    check="balanced", passed=False, witness={"colors_used": used, "expected": colors}
                )
            return VerificationReport(check="balanced", passed=True, metrics={"colors": colors})

        limit = settings.COLORING_SEARCH_MAX_VERTICES
        if len(complex_.vertices) > limit:
            raise ValidationException(
                "Validation failed",
                details={"coloring": f"search limited to {limit} vertices, complex has {len(complex_.vertices)}"},
            )
        found = VerifyService._search_coloring(complex_.graph, colors)
        if found is None:
            cliques = sorted(
                (sorted(c, key=vertex_key) for c in nx.find_cliques(complex_.graph)),
                key=lambda c: (-len(c), face_key(c)),
            )
            return VerificationReport(
                check="balanced", passed=False, witness={"largest_clique": cliques[0], "colors": colors}
            )
        return VerificationReport(
            check="balanced", passed=True, metrics={"colors": colors, "coloring": found}
        )

    @staticmethod
    def _search_coloring(graph: nx.Graph, colors: int) -> Optional[Coloring]:
        order = sorted(graph.nodes, key=lambda v: (-graph.degree(v), vertex_key(v)))
        assignment: Coloring = {}

        def extend(position: int) -> bool:
            if position == len(order):
                return True
            vertex = order[position]
            taken = {assignment[n] for n in graph.neighbors(vertex) if n in assignment}
            # a fresh colour is interchangeable with any other unused one
            ceiling = min(colors, max(assignment.values(), default=0) + 1)
            for color in range(1, ceiling + 1):
                if color in taken:
                    continue
                assignment[vertex] = color
                if extend(position + 1):
                    return True
                del assignment[vertex]
            return False

        return dict(assignment) if extend(0) else None

    @staticmethod
    def check_cs(complex_: SimplicialComplex, involution: Permutation) -> VerificationReport:
        """Free involution on the vertices inducing a free involution on all non-empty faces"""
        check = "centrally_symmetric"
        for v in complex_.vertices:
            if v not in involution.mapping:
                return VerificationReport(check=check, passed=False, witness={"unmapped": v})
        for v in complex_.vertices:
            image = involution(v)
            if image == v:
                return VerificationReport(check=check, passed=False, witness={"fixed_vertex": v})
            if involution.mapping.get(image) != v:
                return VerificationReport(check=check, passed=False, witness={"not_involutive": v})
        faces = complex_.face_set
        for facet in complex_.facets:
            image = involution.apply_face(facet)
            if image not in faces:
                return VerificationReport(
                    check=check, passed=False, witness={"facet": list(facet), "image": list(image)}
                )
        for v in complex_.vertices:
            edge = make_face([v, involution(v)])
            if edge in faces:
                return VerificationReport(check=check, passed=False, witness={"fixed_face": list(edge)})
        return VerificationReport(check=check, passed=True, metrics={"vertices": len(complex_.vertices)})

    @staticmethod
    def check_automorphism(complex_: SimplicialComplex, permutation: Permutation) -> VerificationReport:
        """The permutation maps the facet set onto itself"""
        check = f"automorphism[{permutation.name}]" if permutation.name else "automorphism"
        missing = [v for v in complex_.vertices if v not in permutation.mapping]
        if missing:
            return VerificationReport(check=check, passed=False, witness={"unmapped": missing[0]})
        facets = set(complex_.facets)
        for facet in complex_.facets:
            image = permutation.apply_face(facet)
            if image not in facets:
                return VerificationReport(
                    check=check, passed=False, witness={"facet": list(facet), "image": list(image)}
                )
        return VerificationReport(check=check, passed=True, metrics={"facets": len(facets)})

    @staticmethod
    def non_edges(complex_: SimplicialComplex) -> List[Face]:
        edges = set(complex_.faces(1))
        return [pair for pair in combinations(complex_.vertices, 2) if pair not in edges]

    @staticmethod
    def check_preserves_non_edges(complex_: SimplicialComplex, permutation: Permutation) -> VerificationReport:
        missing = VerifyService.non_edges(complex_)
        target = set(missing)
        for pair in missing:
            image = permutation.apply_face(pair)
            if image not in target:
                return VerificationReport(
                    check=f"non_edges[{permutation.name}]",
                    passed=False,
                    witness={"non_edge": list(pair), "image": list(image)},
                )
        return VerificationReport(
            check=f"non_edges[{permutation.name}]", passed=True, metrics={"non_edges": len(missing)}
        )

    @staticmethod
    def group_closure(generators: Sequence[Permutation], cap: Optional[int] = None) -> GroupClosureReport:
        """
        Breadth-first closure of the generated permutation group

        Raises:
            ValidationException if the generators act on different vertex sets
            ClosureCapExceeded if the group has more than `cap` elements
        """
        if not generators:
            raise ValidationException("Validation failed", details={"generators": "need at least one"})
        cap = settings.GROUP_CLOSURE_CAP if cap is None else cap
        domain = generators[0].domain
        if any(set(g.domain) != set(domain) for g in generators):
            raise ValidationException(
                "Validation failed", details={"generators": "must act on the same vertex set"}
            )

        position = {v: i for i, v in enumerate(domain)}
        images = [tuple(position[g(v)] for v in domain) for g in generators]
        identity = tuple(range(len(domain)))
        seen = {identity}
        queue = deque([identity])
        while queue:
            element = queue.popleft()
            for gen in images:
                composed = tuple(gen[i] for i in element)
                if composed not in seen:
                    seen.add(composed)
                    if len(seen) > cap:
                        raise ClosureCapExceeded(cap)
                    queue.append(composed)

        orbit_graph = nx.Graph()
        orbit_graph.add_nodes_from(domain)
        for g in generators:
            orbit_graph.add_edges_from((v, g(v)) for v in domain)
        orbits = sorted(
            (sorted(c, key=vertex_key) for c in nx.connected_components(orbit_graph)),
            key=lambda c: (-len(c), face_key(c)),
        )
        logger.debug(f"Group closure of {len(generators)} generators has order {len(seen)}")
        return GroupClosureReport(order=len(seen), orbits=orbits, vertex_transitive=len(orbits) == 1)

    @staticmethod
    def check_closed_pseudomanifold(complex_: SimplicialComplex) -> VerificationReport:
        """Every ridge in exactly two facets and a connected facet-ridge graph"""
        check = "closed_pseudomanifold"
        if complex_.is_void or not complex_.is_pure:
            return VerificationReport(check=check, passed=False, witness={"pure": False})
        counts = ComplexService.ridge_counts(complex_)
        for ridge in sorted(counts, key=face_key):
            if counts[ridge] != 2:
                return VerificationReport(
                    check=check, passed=False, witness={"ridge": list(ridge), "facets": counts[ridge]}
                )
        graph = ComplexService.facet_ridge_graph(complex_)
        if not nx.is_connected(graph):
            component = nx.node_connected_component(graph, complex_.facets[0])
            stray = next(f for f in complex_.facets if f not in component)
            return VerificationReport(check=check, passed=False, witness={"unreachable_facet": list(stray)})
        return VerificationReport(
            check=check, passed=True, metrics={"ridges": len(counts)}, note=MANIFOLD_NOTE
        )

    @staticmethod
    def link_homology_survey(complex_: SimplicialComplex, jobs: Optional[int] = None) -> VerificationReport:
        """
        Reduced homology of every vertex link

        Interior vertices need the homology of S^(dim-1); vertices on the
        boundary need acyclic links and are listed in the metrics.
        """
        check = "vertex_links"
        jobs = settings.JOBS if jobs is None else jobs
        try:
            rim = ComplexService.boundary_complex(complex_)
        except NotAPseudomanifoldException as e:
            return VerificationReport(check=check, passed=False, witness={"ridge": list(e.ridge), "facets": e.count})
        on_boundary = set(rim.vertices)
        sphere = HomologyService.sphere_profile(complex_.dimension - 1).betti

        vertices = list(complex_.vertices)
        facets = complex_.facets
        if jobs > 1 and len(vertices) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_link_betti, [facets] * len(vertices), vertices))
        else:
            results = [_link_betti(facets, v) for v in vertices]

        for vertex, betti, torsion_free in results:
            expected = [0] * len(sphere) if vertex in on_boundary else sphere
            if _trimmed(betti) != _trimmed(expected) or not torsion_free:
                return VerificationReport(
                    check=check,
                    passed=False,
                    witness={"vertex": vertex, "betti": betti, "expected": expected},
                )
        return VerificationReport(
            check=check,
            passed=True,
            metrics={"vertices": len(vertices), "boundary_vertices": sorted(on_boundary, key=vertex_key)},
            note=MANIFOLD_NOTE,
        )

    @staticmethod
    def skeleton_contained(complex_: SimplicialComplex, other: SimplicialComplex, i: int) -> VerificationReport:
        """Every face of `other` of dimension at most i is a face of `complex_`"""
        check = f"skeleton_{i}_contained"
        faces = complex_.face_set
        for k in range(0, i + 1):
            for face in other.faces(k):
                if face not in faces:
                    return VerificationReport(check=check, passed=False, witness={"face": list(face)})
        return VerificationReport(check=check, passed=True, metrics={"i": i})
