from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from app.models.complex import Face, SimplicialComplex, make_face
from app.models.permutation import Coloring, Permutation
from app.models.polytope import AnnotatedComplex, CrossPolytopeSphere, Signs
from app.services.complex_service import ComplexService
from app.utils.exceptions import ConstructionInvariantException, CriterionFailedException
from app.utils.helpers import label_index, wrap, x, y
from app.utils.validators import validate_dimension, validate_range

import logging

logger = logging.getLogger(__name__)


def antipode_map(d: int) -> Permutation:
    """x_i <-> y_i for i = 1..d"""
    return Permutation.from_pairs(((x(i), y(i)) for i in range(1, d + 1)), name="A")


def standard_coloring(d: int) -> Coloring:
    coloring = {}
    for i in range(1, d + 1):
        coloring[x(i)] = i
        coloring[y(i)] = i
    return coloring


class CrossPolytopeService:
    """Service for complexes living inside cross-polytope boundaries"""

    @staticmethod
    def cross_polytope_boundary(d: int) -> CrossPolytopeSphere:
        """
        Boundary of the d-cross-polytope: one facet per sign vector

        Raises: ValidationException if d < 1
        """
        validate_dimension(d, 1)
        facets = [
            CrossPolytopeService.facet_from_signs(signs)
            for signs in product("XY", repeat=d)
        ]
        complex_ = SimplicialComplex(facets, name=f"cross_polytope_{d}")
        return CrossPolytopeSphere(
            d=d, complex=complex_, antipode=antipode_map(d), coloring=standard_coloring(d)
        )

    @staticmethod
    def facet_from_signs(signs: Sequence[str]) -> Face:
        return make_face(x(i) if s == "X" else y(i) for i, s in enumerate(signs, start=1))

    @staticmethod
    def signs_of(facet: Iterable[str], d: int) -> Signs:
        """Sign vector of a facet of the d-cross-polytope boundary"""
        signs = [""] * d
        for v in facet:
            signs[label_index(v) - 1] = "X" if v.startswith("x") else "Y"
        return tuple(signs)

    @staticmethod
    def switch_count(signs: Sequence[str], cyclic: bool = False) -> int:
        """
        Number of positions where consecutive signs differ

        Positions 1..d-1 by default; with cyclic=True the pair (u_d, u_1) counts too.
        """
        count = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
        if cyclic and len(signs) > 1 and signs[-1] != signs[0]:
            count += 1
        return count

    @staticmethod
    def b_complex(i: int, d: int) -> SimplicialComplex:
        """
        Subcomplex of the d-cross-polytope generated by facets with at most i switches

        Raises: ValidationException unless 0 <= i <= d-1
        """
        validate_dimension(d, 1)
        validate_range("i", i, 0, d - 1)
        facets = [
            CrossPolytopeService.facet_from_signs(signs)
            for signs in product("XY", repeat=d)
            if CrossPolytopeService.switch_count(signs) <= i
        ]
        complex_ = SimplicialComplex(facets, name=f"B({i},{d})")
        logger.debug(f"Built B({i},{d}) with {len(complex_)} facets")
        return complex_

    @staticmethod
    def b_complex_boundary(i: int, d: int) -> SimplicialComplex:
        return ComplexService.boundary_complex(
            CrossPolytopeService.b_complex(i, d), name=f"∂B({i},{d})"
        )

    @staticmethod
    def shift(d: int, extra: Sequence[int] = ()) -> Permutation:
        """x_j -> x_{j+1}, y_j -> y_{j+1} modulo d; labels with index in `extra` fixed"""
        mapping = {}
        for j in range(1, d + 1):
            mapping[x(j)] = x(wrap(j + 1, d))
            mapping[y(j)] = y(wrap(j + 1, d))
        for j in extra:
            mapping[x(j)], mapping[y(j)] = x(j), y(j)
        return Permutation(mapping, name="S")

    @staticmethod
    def reflection(d: int, extra: Sequence[int] = ()) -> Permutation:
        """x_j -> x_{d-j+1}, y_j -> y_{d-j+1}"""
        mapping = {}
        for j in range(1, d + 1):
            mapping[x(j)] = x(d - j + 1)
            mapping[y(j)] = y(d - j + 1)
        for j in extra:
            mapping[x(j)], mapping[y(j)] = x(j), y(j)
        return Permutation(mapping, name="R")

    @staticmethod
    def twisted_shift(d: int) -> Permutation:
        """Shift that swaps x and y when wrapping from position d to 1"""
        mapping = {}
        for j in range(1, d):
            mapping[x(j)] = x(j + 1)
            mapping[y(j)] = y(j + 1)
        mapping[x(d)] = y(1)
        mapping[y(d)] = x(1)
        return Permutation(mapping, name="R'")

    @staticmethod
    def b_complex_symmetries(i: int, d: int) -> List[Permutation]:
        """
        Generators of a vertex-transitive group acting on B(i,d)

        Even i: antipode, cyclic shift and reflection. Odd i: the twisted
        shift (whose d-th power is the antipode) and the reflection.
        """
        validate_range("i", i, 0, d - 1)
        if i % 2 == 0:
            return [
                antipode_map(d),
                CrossPolytopeService.shift(d),
                CrossPolytopeService.reflection(d),
            ]
        return [CrossPolytopeService.twisted_shift(d), CrossPolytopeService.reflection(d)]

    @staticmethod
    def tau(j: int, k: int, d: int) -> Face:
        """
        The facet with y labels exactly at the cyclic block k..k+j-1

        Raises: ValidationException unless 0 <= j <= d and 1 <= k <= d
        """
        validate_range("j", j, 0, d)
        validate_range("k", k, 1, d)
        block = {wrap(k + t, d) for t in range(j)}
        return make_face(y(p) if p in block else x(p) for p in range(1, d + 1))

    @staticmethod
    def gamma(j: int, d: int) -> SimplicialComplex:
        """
        The belt of facets with exactly j consecutive (cyclically) y labels

        Raises: ValidationException unless 0 <= j <= d
        """
        validate_dimension(d, 1)
        validate_range("j", j, 0, d)
        return SimplicialComplex(
            (CrossPolytopeService.tau(j, k, d) for k in range(1, d + 1)),
            name=f"Gamma_{j}",
        )

    @staticmethod
    def gamma_range(low: int, high: int, d: int) -> SimplicialComplex:
        return ComplexService.union_all(
            [CrossPolytopeService.gamma(k, d) for k in range(low, high + 1)],
            name=f"Gamma_{low}..{high}",
        )

    @staticmethod
    def build_d1_d2(d: int) -> Tuple[SimplicialComplex, SimplicialComplex]:
        """
        The two d-balls in the (d+1)-cross-polytope boundary

        Raises:
            ValidationException if d < 3
            ConstructionInvariantException if their intersection is not
            centrally symmetric
        """
        validate_dimension(d, 3)
        antipode = antipode_map(d)
        m = d // 2
        if d % 2:
            base1 = CrossPolytopeService.gamma_range(0, m + 1, d)
            base2 = CrossPolytopeService.gamma_range(m, d, d)
        else:
            belt = SimplicialComplex(
                (CrossPolytopeService.tau(m - 1, i, d) for i in range(1, m + 1)), name="gamma"
            )
            opposite = antipode.apply(belt)
            expected = SimplicialComplex(
                (CrossPolytopeService.tau(m + 1, i, d) for i in range(m, d)), name="-gamma"
            )
            if opposite != expected:
                raise ConstructionInvariantException(
                    "Antipode of the half belt is not the opposite half belt",
                    details={"d": d},
                )
            base1 = ComplexService.union(CrossPolytopeService.gamma_range(0, m, d), opposite)
            base2 = ComplexService.union(CrossPolytopeService.gamma_range(m, d, d), belt)

        d1 = ComplexService.join_cone(base1, x(d + 1), name="D1")
        d2 = ComplexService.join_cone(base2, y(d + 1), name="D2")

        overlap = ComplexService.intersection(d1, d2)
        full_antipode = antipode_map(d + 1)
        if full_antipode.apply(overlap) != overlap:
            raise ConstructionInvariantException(
                "D1 ∩ D2 is not centrally symmetric", details={"d": d}
            )
        logger.info(f"Built D1, D2 for d={d}: {len(d1)} and {len(d2)} facets, intersection {len(overlap)}")
        return d1, d2

    @staticmethod
    def expected_cycle(d: int) -> List[Face]:
        """Facet enumeration of D1 ∩ D2 as a cycle of 2d facets"""
        tau = CrossPolytopeService.tau
        m = d // 2
        if d % 2:
            cycle = []
            for k in range(1, d + 1):
                cycle.append(tau(m, k, d))
                cycle.append(tau(m + 1, k, d))
            return cycle
        cycle = []
        for k in range(1, m):
            cycle += [tau(m - 1, k, d), tau(m, k, d)]
        cycle += [tau(m - 1, m, d), tau(m, m, d), tau(m + 1, m, d)]
        for k in range(m + 1, d):
            cycle += [tau(m, k, d), tau(m + 1, k, d)]
        cycle.append(tau(m, d, d))
        return cycle

    @staticmethod
    def verify_cycle_antipodal(
        complex_: SimplicialComplex,
        antipode: Permutation,
        start: Optional[Sequence[str]] = None,
        towards: Optional[Sequence[str]] = None,
    ) -> List[Face]:
        """
        Check that the facet-ridge graph is one even cycle whose opposite
        facets are antipodal

        Args:
            complex_: pure complex inside a cross-polytope boundary
            antipode: the vertex involution
            start: first facet of the enumeration (default: first facet)
            towards: its successor (default: its first neighbour)

        Returns: the enumeration sigma_1 .. sigma_2n
        Raises: CriterionFailedException naming the first violation
        """
        graph = ComplexService.facet_ridge_graph(complex_)
        if graph.number_of_nodes() == 0:
            raise CriterionFailedException("Complex has no facets", witness=[])
        for facet in complex_.facets:
            if graph.degree(facet) != 2:
                raise CriterionFailedException(
                    f"Facet-ridge graph is not a cycle: facet has {graph.degree(facet)} neighbours",
                    witness=list(facet),
                )

        first = make_face(start) if start is not None else complex_.facets[0]
        neighbours = sorted(graph.neighbors(first))
        second = make_face(towards) if towards is not None else neighbours[0]
        if second not in neighbours:
            raise CriterionFailedException("Requested successor is not adjacent", witness=list(second))

        cycle = [first]
        previous, current = first, second
        while current != first:
            cycle.append(current)
            a, b = graph.neighbors(current)
            previous, current = current, (b if a == previous else a)

        if len(cycle) != graph.number_of_nodes():
            raise CriterionFailedException(
                f"Facet-ridge graph is not a single cycle: walk closes after {len(cycle)} of {graph.number_of_nodes()} facets",
                witness=[list(f) for f in cycle[:2]],
            )
        if len(cycle) % 2:
            raise CriterionFailedException(f"Cycle length {len(cycle)} is odd", witness=list(cycle[0]))

        n = len(cycle) // 2
        for i in range(n):
            if antipode.apply_face(cycle[i]) != cycle[i + n]:
                raise CriterionFailedException(
                    f"Facets {i + 1} and {i + n + 1} of the cycle are not antipodal",
                    witness=[list(cycle[i]), list(cycle[i + n])],
                )
        return cycle

    @staticmethod
    def cs_sphere_product(d: int) -> AnnotatedComplex:
        """
        The centrally symmetric (2d+2)-vertex triangulation, boundary of D1 ∪ D2

        Raises: ValidationException if d < 5
        """
        validate_dimension(d, 5)
        d1, d2 = CrossPolytopeService.build_d1_d2(d)
        result = ComplexService.boundary_complex(
            ComplexService.union(d1, d2), name=f"cs_product_{d}"
        )
        antipode = antipode_map(d + 1)
        if len(result.vertices) != 2 * d + 2:
            raise ConstructionInvariantException(
                f"Expected {2 * d + 2} vertices, got {len(result.vertices)}", details={"d": d}
            )
        logger.info(f"Built cs product for d={d}: f={result.f_vector().proper}")
        return AnnotatedComplex(result, coloring=None, involution=antipode)

    @staticmethod
    def cs_product_symmetries(d: int) -> Dict[str, Permutation]:
        """R, S (both fixing x_{d+1}, y_{d+1}) and the antipode"""
        validate_dimension(d, 5)
        return {
            "R": CrossPolytopeService.reflection(d, extra=(d + 1,)),
            "S": CrossPolytopeService.shift(d, extra=(d + 1,)),
            "A": antipode_map(d + 1),
        }

    @staticmethod
    def shelling_bound(d: int) -> int:
        """Largest level i for which the belt order of Gamma_0..Gamma_i is a shelling"""
        return (d + 2) // 2 if d % 2 else d // 2
