from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, List, Optional, Set, Tuple

import networkx as nx

from app.models.complex import Face, SimplicialComplex, make_face
from app.models.permutation import Coloring, Permutation, VertexMap
from app.models.polytope import GammaResult, GlueChain, GluedComplex, PolytopePiece, SigmaResult
from app.services.complex_service import ComplexService
from app.services.crosspoly_service import CrossPolytopeService
from app.utils.exceptions import (
    ConstructionInvariantException,
    GluingException,
    HandleIllegalException,
    ValidationException,
)
from app.utils.helpers import label_index, vertex_key, x, xp, y, yp
from app.utils.validators import validate_dimension, validate_range

import logging

logger = logging.getLogger(__name__)

TAG = "@"


@dataclass(frozen=True)
class MissingEdgeLedger:
    """Non-edges of the balanced complex sorted into their three sources"""
    non_edges: List[Face]
    same_color: List[Face]
    deleted: List[Face]
    never_shared: List[Face]


def color_of(label: str) -> int:
    """Colour of a label: its numeric index (canonical part for tagged labels)"""
    return label_index(canonical(label))


def canonical(label: str) -> str:
    return label.split(TAG, 1)[0]


def sigma_facet(d: int, i: int) -> Face:
    """sigma_i = x_1..x_i y_{i+1}..y_d, and sigma_{d+i} with x and y exchanged"""
    validate_range("i", i, 1, 2 * d)
    if i <= d:
        return make_face([x(j) for j in range(1, i + 1)] + [y(j) for j in range(i + 1, d + 1)])
    i -= d
    return make_face([y(j) for j in range(1, i + 1)] + [x(j) for j in range(i + 1, d + 1)])


def balanced_coloring(vertices) -> Coloring:
    return {v: color_of(v) for v in vertices}


class BalancedService:
    """Service for diamond gluings and the balanced sphere product"""

    @staticmethod
    def swap_xy(d: int) -> Permutation:
        """D: x <-> y and x' <-> y'"""
        pairs = []
        for i in range(1, d + 1):
            pairs += [(x(i), y(i)), (xp(i), yp(i))]
        return Permutation.from_pairs(pairs, name="D")

    @staticmethod
    def map_f(d: int) -> VertexMap:
        """
        x_i -> x'_{i+1}, y_i -> y'_{i+1} (i < d), x_d -> y'_1, y_d -> x'_1

        Shifts every colour by one modulo d and commutes with the x/y swap.
        """
        validate_dimension(d, 3)
        mapping = {}
        for i in range(1, d):
            mapping[x(i)] = xp(i + 1)
            mapping[y(i)] = yp(i + 1)
        mapping[x(d)] = yp(1)
        mapping[y(d)] = xp(1)
        return VertexMap(mapping, name="f")

    @staticmethod
    def gamma_piece(d: int, i: int) -> PolytopePiece:
        """
        Cross-polytope boundary on V(sigma_i) and V(f(sigma_i)), pairing the
        two vertices of each colour
        """
        validate_dimension(d, 3)
        sigma = sigma_facet(d, i)
        image = BalancedService.map_f(d).apply_face(sigma)
        by_color = {color_of(v): v for v in sigma}
        partner = {color_of(v): v for v in image}
        pairs = [(by_color[c], partner[c]) for c in range(1, d + 1)]
        complex_ = SimplicialComplex(product(*pairs), name=f"Gamma_piece_{i}")
        antipode = Permutation.from_pairs(pairs, name="A")
        if antipode.apply_face(sigma) != image:
            raise ConstructionInvariantException(
                "sigma and f(sigma) are not antipodal in the piece", details={"d": d, "i": i}
            )
        return PolytopePiece(
            complex=complex_,
            sigma=sigma,
            antipode=antipode,
            coloring=balanced_coloring(complex_.vertices),
            index=i,
        )

    @staticmethod
    def deleted_edges(d: int) -> List[Face]:
        """e_1 .. e_2d; e_k is shared by pieces k and k+1 (cyclically)"""
        validate_dimension(d, 3)
        first = [make_face([xp(i + 1), y(i + 2)]) for i in range(1, d - 1)]
        first.append(make_face([xp(d), x(1)]))
        first.append(make_face([yp(1), x(2)]))
        swap = BalancedService.swap_xy(d)
        return first + [swap.apply_face(e) for e in first]

    @staticmethod
    def explicit_deleted_edges(d: int) -> Set[Face]:
        edges = set()
        for i in range(1, d):
            edges.add(make_face([xp(i), y(i + 1)]))
            edges.add(make_face([yp(i), x(i + 1)]))
        edges.add(make_face([xp(d), x(1)]))
        edges.add(make_face([yp(d), y(1)]))
        return edges

    @staticmethod
    def diamond_connected_sum(
        first: GluedComplex, e1: Face, second: GluedComplex, e2: Face, ident: VertexMap
    ) -> GluedComplex:
        """
        Glue two complexes along the boundaries of two deleted edge stars

        ident sends the vertices of st(e1) onto those of st(e2); the result
        keeps the labels of `first`.

        Raises:
            ValidationException if an edge is missing, lies in a
            distinguished facet or its antipode, or the colours disagree
            GluingException if ident is not an isomorphism of the stars or
            the remaining labels collide
        """
        e1, e2 = make_face(e1), make_face(e2)
        BalancedService._check_edge(first, e1)
        BalancedService._check_edge(second, e2)

        star1 = ComplexService.star(first.complex, e1)
        star2 = ComplexService.star(second.complex, e2)
        BalancedService._check_identification(first, second, star1, star2, e1, e2, ident)

        for part1, part2 in ((first.distinguished, second.distinguished), (first.opposite, second.opposite)):
            side1 = ComplexService.restriction(star1, part1.vertices)
            side2 = ComplexService.restriction(star2, part2.vertices)
            if ident.apply(side1) != side2:
                raise GluingException(
                    "ident does not match the distinguished parts of the stars",
                    details={"e1": list(e1), "e2": list(e2)},
                )

        back = ident.inverse()
        rest = set(second.complex.vertices) - set(star2.vertices)
        collisions = sorted(rest & set(first.complex.vertices), key=vertex_key)
        if collisions:
            raise GluingException("labels collide outside the glued stars", details={"vertex": collisions[0]})

        kept1 = ComplexService.remove_facets(first.complex, star1.facets)
        kept2 = ComplexService.remove_facets(second.complex, star2.facets).relabel(back.mapping)
        glued = ComplexService.union(kept1, kept2, name=f"{first.complex.name}#{second.complex.name}")
        if glued.contains(e1):
            raise ConstructionInvariantException("deleted edge survived the gluing", details={"edge": list(e1)})

        coloring = dict(first.coloring)
        for v, c in second.coloring.items():
            coloring.setdefault(back.get(v), c)
        return GluedComplex(
            complex=glued,
            distinguished=ComplexService.union(first.distinguished, second.distinguished.relabel(back.mapping)),
            opposite=ComplexService.union(first.opposite, second.opposite.relabel(back.mapping)),
            coloring={v: coloring[v] for v in glued.vertices},
        )

    @staticmethod
    def diamond_handle_addition(glued: GluedComplex, e1: Face, e2: Face, phi: VertexMap) -> GluedComplex:
        """
        Remove the stars of e1 and e2 and identify their boundaries through phi

        Raises:
            ValidationException on a missing edge, an edge in a distinguished
            facet or its antipode, or a colour mismatch
            GluingException if phi is not an isomorphism st(e1) -> st(e2)
            HandleIllegalException if some v and phi(v) are adjacent or share a neighbour
        """
        e1, e2 = make_face(e1), make_face(e2)
        BalancedService._check_edge(glued, e1)
        BalancedService._check_edge(glued, e2)
        star1 = ComplexService.star(glued.complex, e1)
        star2 = ComplexService.star(glued.complex, e2)
        BalancedService._check_identification(glued, glued, star1, star2, e1, e2, phi)

        graph = glued.complex.graph
        for v in star1.vertices:
            w = phi(v)
            if v == w or graph.has_edge(v, w):
                raise HandleIllegalException(v, w)
            shared = sorted(nx.common_neighbors(graph, v, w), key=vertex_key)
            if shared:
                raise HandleIllegalException(v, shared[0])

        back = phi.inverse().mapping
        kept = ComplexService.remove_facets(glued.complex, star1.facets + star2.facets)
        closed = kept.relabel(back, name=f"{glued.complex.name}^phi")
        if closed.contains(e1):
            raise ConstructionInvariantException("deleted edge survived the handle", details={"edge": list(e1)})
        return GluedComplex(
            complex=closed,
            distinguished=glued.distinguished.relabel(back),
            opposite=glued.opposite.relabel(back),
            coloring={v: glued.coloring[v] for v in closed.vertices},
        )

    @staticmethod
    def _check_edge(glued: GluedComplex, edge: Face) -> None:
        if len(edge) != 2 or not glued.complex.contains(edge):
            raise ValidationException("Validation failed", details={"edge": f"{list(edge)} is not an edge"})
        if glued.distinguished.contains(edge) or glued.opposite.contains(edge):
            raise ValidationException(
                "Validation failed",
                details={"edge": f"{list(edge)} lies in a distinguished facet or its antipode"},
            )

    @staticmethod
    def _check_identification(
        first: GluedComplex,
        second: GluedComplex,
        star1: SimplicialComplex,
        star2: SimplicialComplex,
        e1: Face,
        e2: Face,
        ident: VertexMap,
    ) -> None:
        missing = [v for v in star1.vertices if v not in ident.mapping]
        if missing:
            raise GluingException("identification does not cover the star", details={"vertex": missing[0]})
        if ident.apply_face(e1) != e2:
            raise ValidationException("Validation failed", details={"edge": "identification must send e1 to e2"})
        for v in star1.vertices:
            if first.coloring.get(v) != second.coloring.get(ident(v)):
                raise ValidationException(
                    "Validation failed", details={"color": f"{v} and {ident(v)} have different colours"}
                )
        if ident.apply(star1) != star2:
            raise GluingException(
                "identification is not an isomorphism of the edge stars",
                details={"e1": list(e1), "e2": list(e2)},
            )

    @staticmethod
    def figure_connected_sum() -> GluedComplex:
        """
        Two octahedra on disjoint labels glued along {y3, x'1} and {Y3, X'1}

        The result is a balanced 2-sphere on 8 vertices.
        """
        left = [("y1", "x'1"), ("y2", "x'2"), ("y3", "x'3")]
        right = [("x1", "X'1"), ("Y2", "X'2"), ("Y3", "X'3")]
        pieces = []
        for pairs, sigma in ((left, ("y1", "y2", "y3")), (right, ("x1", "Y2", "Y3"))):
            complex_ = SimplicialComplex(product(*pairs), name="octahedron")
            antipode = Permutation.from_pairs(pairs, name="A")
            pieces.append(GluedComplex.from_piece(PolytopePiece(
                complex=complex_,
                sigma=make_face(sigma),
                antipode=antipode,
                coloring={v: c for c, pair in enumerate(pairs, start=1) for v in pair},
            )))
        ident = VertexMap({"y3": "Y3", "x'1": "X'1", "y2": "Y2", "x'2": "X'2"}, name="ident")
        return BalancedService.diamond_connected_sum(
            pieces[0], ("y3", "x'1"), pieces[1], ("Y3", "X'1"), ident
        )

    @staticmethod
    def build_Gamma(d: int) -> GammaResult:
        """
        Union of the 2d pieces minus every facet containing a deleted edge

        Raises:
            GluingException if consecutive pieces do not meet in the star of their edge
            ConstructionInvariantException if a facet of Delta_1 or f(Delta_1)
            is lost or the vertex count is not 4d
        """
        validate_dimension(d, 3)
        pieces = [BalancedService.gamma_piece(d, i) for i in range(1, 2 * d + 1)]
        edges = BalancedService.deleted_edges(d)
        for k, edge in enumerate(edges):
            a, b = pieces[k].complex, pieces[(k + 1) % (2 * d)].complex
            meet = ComplexService.intersection(a, b)
            if not (meet == ComplexService.star(a, edge) == ComplexService.star(b, edge)):
                raise GluingException(
                    f"Pieces {k + 1} and {(k + 1) % (2 * d) + 1} do not meet in the star of their edge",
                    details={"edge": list(edge)},
                )

        doomed = [frozenset(e) for e in edges]
        facets = {
            f
            for piece in pieces
            for f, s in zip(piece.complex.facets, piece.complex.facet_sets)
            if not any(e <= s for e in doomed)
        }
        gamma = SimplicialComplex(facets, name=f"Gamma_{d}")

        delta1 = CrossPolytopeService.b_complex(1, d)
        f_delta1 = BalancedService.map_f(d).apply(delta1)
        present = set(gamma.facets)
        lost = [f for f in delta1.facets + f_delta1.facets if f not in present]
        if lost:
            raise ConstructionInvariantException("facet of Delta_1 ∪ f(Delta_1) lost", details={"facet": list(lost[0])})
        if len(gamma.vertices) != 4 * d:
            raise ConstructionInvariantException(
                f"Gamma has {len(gamma.vertices)} vertices, expected {4 * d}", details={"d": d}
            )
        logger.info(f"Built Gamma for d={d}: {len(gamma)} facets on {len(gamma.vertices)} vertices")
        return GammaResult(
            gamma=gamma,
            delta1=delta1,
            f_delta1=f_delta1,
            chain=GlueChain(pieces=pieces, deleted_edges=edges),
            coloring=balanced_coloring(gamma.vertices),
        )

    @staticmethod
    def build_gamma_chain(d: int) -> Tuple[GluedComplex, GluedComplex, SimplicialComplex]:
        """
        Gamma assembled the long way: 2d pieces on disjoint tagged labels,
        chained by diamond connected sums and closed by a handle addition

        Returns: (open chain, closed chain, closed chain with tags removed)
        """
        validate_dimension(d, 3)
        pieces = [BalancedService.gamma_piece(d, i) for i in range(1, 2 * d + 1)]
        edges = BalancedService.deleted_edges(d)

        def tagged(piece: PolytopePiece, k: int) -> GluedComplex:
            names = {v: f"{v}{TAG}{k}" for v in piece.complex.vertices}
            return GluedComplex.from_piece(PolytopePiece(
                complex=piece.complex.relabel(names),
                sigma=make_face(names[v] for v in piece.sigma),
                antipode=Permutation({names[a]: names[b] for a, b in piece.antipode.mapping.items()}),
                coloring={names[v]: c for v, c in piece.coloring.items()},
                index=k,
            ))

        alias: List[Dict[str, str]] = [{v: f"{v}{TAG}1" for v in pieces[0].complex.vertices}]
        chain = tagged(pieces[0], 1)
        for k in range(1, 2 * d):
            nxt = tagged(pieces[k], k + 1)
            edge = edges[k - 1]
            e1 = make_face(alias[k - 1][v] for v in edge)
            e2 = make_face(f"{v}{TAG}{k + 1}" for v in edge)
            star_vertices = ComplexService.star(nxt.complex, e2).vertices
            ident = VertexMap({alias[k - 1][canonical(w)]: w for w in star_vertices}, name="ident")
            chain = BalancedService.diamond_connected_sum(chain, e1, nxt, e2, ident)
            shared = {canonical(w) for w in star_vertices}
            alias.append({
                v: alias[k - 1][v] if v in shared else f"{v}{TAG}{k + 1}"
                for v in pieces[k].complex.vertices
            })

        closing = edges[-1]
        e1 = make_face(alias[-1][v] for v in closing)
        e2 = make_face(alias[0][v] for v in closing)
        star1 = ComplexService.star(chain.complex, e1)
        phi = VertexMap({w: alias[0][canonical(w)] for w in star1.vertices}, name="phi")
        closed = BalancedService.diamond_handle_addition(chain, e1, e2, phi)
        collapsed = closed.complex.relabel({v: canonical(v) for v in closed.complex.vertices}, name=f"Gamma_{d}")
        logger.info(
            f"Chain for d={d}: open {len(chain.complex.vertices)} vertices, closed {len(closed.complex.vertices)}"
        )
        return chain, closed, collapsed

    @staticmethod
    def build_Sigma(d: int) -> SigmaResult:
        """
        Delta_2 ∪ N ∪ f(Delta_2), the balanced triangulation on 4d vertices

        Raises: ConstructionInvariantException if N does not meet Delta_1 and
        f(Delta_1) exactly in their boundaries
        """
        result = BalancedService.build_Gamma(d)
        f = BalancedService.map_f(d)
        sphere = CrossPolytopeService.cross_polytope_boundary(d).complex
        delta2 = ComplexService.complement(sphere, result.delta1, name="Delta_2")
        f_delta2 = f.apply(delta2)
        tube = ComplexService.remove_facets(
            result.gamma, result.delta1.facets + result.f_delta1.facets, name="N"
        )
        for ball in (result.delta1, result.f_delta1):
            if ComplexService.intersection(tube, ball) != ComplexService.boundary_complex(ball):
                raise ConstructionInvariantException(
                    "N does not meet the ball exactly in its boundary", details={"d": d}
                )

        sigma = ComplexService.union_all([delta2, tube, f_delta2], name=f"Sigma_{d}")
        if len(sigma.vertices) != 4 * d:
            raise ConstructionInvariantException(
                f"Sigma has {len(sigma.vertices)} vertices, expected {4 * d}", details={"d": d}
            )
        logger.info(f"Built Sigma for d={d}: f={sigma.f_vector().proper}")
        return SigmaResult(
            sigma=sigma,
            coloring=balanced_coloring(sigma.vertices),
            gamma=result.gamma,
            delta1=result.delta1,
            delta2=delta2,
            f_delta1=result.f_delta1,
            f_delta2=f_delta2,
            tube=tube,
        )

    @staticmethod
    def missing_edge_ledger(d: int, sigma: Optional[SimplicialComplex] = None) -> MissingEdgeLedger:
        """
        Split the non-edges of Sigma into same-colour pairs, deleted edges
        and pairs of different colour that never share a piece

        Raises: ConstructionInvariantException if a class is not where it
        should be or the deleted edges differ from their explicit list
        """
        sigma = sigma if sigma is not None else BalancedService.build_Sigma(d).sigma
        edges = set(sigma.faces(1))
        non_edges = [p for p in combinations(sigma.vertices, 2) if p not in edges]
        same = [p for p in non_edges if color_of(p[0]) == color_of(p[1])]
        deleted = sorted(BalancedService.deleted_edges(d), key=lambda e: tuple(vertex_key(v) for v in e))
        if set(deleted) != BalancedService.explicit_deleted_edges(d):
            raise ConstructionInvariantException("deleted edges differ from the explicit list", details={"d": d})
        stray = [e for e in deleted if e in edges]
        if stray:
            raise ConstructionInvariantException("a deleted edge is an edge of Sigma", details={"edge": list(stray[0])})

        excluded = set(same) | set(deleted)
        rest = [p for p in non_edges if p not in excluded]
        pieces = [set(BalancedService.gamma_piece(d, i).complex.vertices) for i in range(1, 2 * d + 1)]
        for pair in rest:
            if any(pair[0] in vs and pair[1] in vs for vs in pieces):
                raise ConstructionInvariantException(
                    "non-edge of different colours inside one piece", details={"pair": list(pair)}
                )
        return MissingEdgeLedger(non_edges=non_edges, same_color=same, deleted=deleted, never_shared=rest)

    @staticmethod
    def expected_f_numbers(d: int) -> Dict[int, int]:
        """
        f_0, f_1 and f_{d-1} of Sigma

        For d = 3 Sigma is two disjoint octahedra, so f_1 is 24 rather than
        4d(2d-3); the closed form only holds from d = 4 on.
        """
        validate_dimension(d, 3)
        edges = 4 * d * (2 * d - 3) if d >= 4 else 2 * 2 * d * (d - 1)
        return {0: 4 * d, 1: edges, d - 1: (d + 2) * 2 ** d - 8 * d}

    @staticmethod
    def symmetry_generators(d: int) -> List[Permutation]:
        """
        D, E' and R' acting on the 4d labels

        R'^d equals D, so the generated group is dihedral of order 4d.
        """
        validate_dimension(d, 4)
        e_prime = {}
        r_prime = {}
        for j in range(1, d + 1):
            e_prime[x(j)] = xp(d - j + 1)
            e_prime[y(j)] = yp(d - j + 1)
            e_prime[xp(j)] = x(d - j + 1)
            e_prime[yp(j)] = y(d - j + 1)
        for j in range(1, d):
            r_prime[x(j)], r_prime[y(j)] = x(j + 1), y(j + 1)
            r_prime[xp(j)], r_prime[yp(j)] = xp(j + 1), yp(j + 1)
        r_prime[x(d)], r_prime[y(d)] = y(1), x(1)
        r_prime[xp(d)], r_prime[yp(d)] = yp(1), xp(1)
        return [
            BalancedService.swap_xy(d),
            Permutation(e_prime, name="E'"),
            Permutation(r_prime, name="R'"),
        ]
