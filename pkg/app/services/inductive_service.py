from typing import List

from app.models.complex import SimplicialComplex
from app.models.polytope import InductiveResult, InductiveSeed
from app.schemas.homology import HomologyProfile
from app.schemas.report import VerificationReport
from app.services.complex_service import ComplexService
from app.services.crosspoly_service import CrossPolytopeService
from app.services.homology_service import HomologyService
from app.utils.exceptions import ConstructionInvariantException, ValidationException
from app.utils.helpers import x, y
from app.utils.validators import validate_dimension, validate_range

import logging

logger = logging.getLogger(__name__)


def boundary_profile(dimension: int, sphere: int) -> HomologyProfile:
    """
    Homology of the boundary of a manifold of the given dimension whose
    homology is that of S^sphere: S^sphere x S^(dimension-1-sphere)
    """
    return HomologyService.sphere_product_profile(sphere, dimension - 1 - sphere)


class InductiveService:
    """Service for building sphere products one dimension at a time"""

    @staticmethod
    def inductive_step(seed: InductiveSeed) -> InductiveResult:
        """
        Assemble D_prev, D_cur and D_next from four balls and four apexes

        Raises:
            ValidationException if B1 ∩ B2 differs from A1 ∪ A2 or an apex
            label is already in use
            ConstructionInvariantException if C1 ∩ C2 differs from D_prev
        """
        used = set()
        for part in (seed.a1, seed.a2, seed.b1, seed.b2):
            used.update(part.vertices)
        apexes = [seed.u, seed.v, seed.u_next, seed.v_next]
        if len(set(apexes)) != 4 or used & set(apexes):
            raise ValidationException(
                "Validation failed", details={"apexes": "apex labels must be distinct and fresh"}
            )

        meet = ComplexService.intersection(seed.b1, seed.b2)
        joined = ComplexService.union(seed.a1, seed.a2)
        if meet != joined:
            raise ValidationException(
                "Validation failed",
                details={"seed": "B1 ∩ B2 must equal A1 ∪ A2"},
            )

        cone = ComplexService.join_cone
        union = ComplexService.union
        d_prev = union(cone(seed.a1, seed.u), cone(seed.a2, seed.v), name="D_prev")
        d_cur = union(cone(seed.b1, seed.u), cone(seed.b2, seed.v), name="D_cur")
        c1 = union(cone(seed.b1, seed.u), cone(seed.a2, seed.v), name="C1")
        c2 = union(cone(seed.a1, seed.u), cone(seed.b2, seed.v), name="C2")

        if ComplexService.intersection(c1, c2) != d_prev:
            raise ConstructionInvariantException(
                "C1 ∩ C2 differs from D_prev", details={"facets": len(d_prev)}
            )

        d_next = union(cone(c1, seed.u_next), cone(c2, seed.v_next), name="D_next")
        logger.info(f"Inductive step produced D_next with {len(d_next)} facets, dim {d_next.dimension}")
        return InductiveResult(d_prev=d_prev, d_cur=d_cur, d_next=d_next, c1=c1, c2=c2)

    @staticmethod
    def b_family_seed(i: int, d: int) -> InductiveSeed:
        """
        Links of x_d and y_d in B(i-1,d) and B(i,d); the step rebuilds B(i,d+1)

        Raises: ValidationException unless 1 <= i <= d-2
        """
        validate_dimension(d, 3)
        validate_range("i", i, 1, d - 2)
        previous = CrossPolytopeService.b_complex(i - 1, d)
        current = CrossPolytopeService.b_complex(i, d)
        link = ComplexService.link
        return InductiveSeed(
            a1=link(previous, [x(d)]),
            a2=link(previous, [y(d)]),
            b1=link(current, [x(d)]),
            b2=link(current, [y(d)]),
            u=x(d),
            v=y(d),
            u_next=x(d + 1),
            v_next=y(d + 1),
        )

    @staticmethod
    def circle_seed(d: int) -> InductiveSeed:
        """
        Two halves of the facet cycle of B(1,d-1), meeting in its all-x and all-y facets

        B1 runs through the facets y..y x..x, B2 through x..x y..y; the
        step yields a d-ball whose boundary has the homology of S^1 x S^(d-2).

        Raises: ValidationException if d < 4
        """
        validate_dimension(d, 4)
        n = d - 1
        facet = CrossPolytopeService.facet_from_signs
        all_x = facet("X" * n)
        all_y = facet("Y" * n)
        y_first = [facet("Y" * a + "X" * (n - a)) for a in range(1, n)]
        x_first = [facet("X" * a + "Y" * (n - a)) for a in range(1, n)]
        return InductiveSeed(
            a1=SimplicialComplex([all_x], name="A1"),
            a2=SimplicialComplex([all_y], name="A2"),
            b1=SimplicialComplex([all_x, *y_first, all_y], name="B1"),
            b2=SimplicialComplex([all_x, *x_first, all_y], name="B2"),
            u=x(d),
            v=y(d),
            u_next=x(d + 1),
            v_next=y(d + 1),
        )

    @staticmethod
    def side_conditions(seed: InductiveSeed, i: int) -> List[VerificationReport]:
        """
        Homology conditions the seed needs for the step to produce S^i x S^k

        The four balls must be acyclic, B1 ∩ B2 must have the homology of
        S^(i-1) and A1 ∩ A2 that of S^(i-2), each with the matching
        sphere-product boundary.
        """
        reports = []
        homology = HomologyService.reduced_homology
        for name in ("a1", "a2", "b1", "b2"):
            ball = getattr(seed, name)
            profile = homology(ball)
            passed = all(b == 0 for b in profile.betti) and profile.is_torsion_free
            reports.append(VerificationReport(
                check=f"{name}_acyclic",
                passed=passed,
                witness=None if passed else profile.lines(),
                metrics={"betti": profile.betti},
            ))

        parts = [("b", ComplexService.intersection(seed.b1, seed.b2), i - 1)]
        if i >= 2:
            parts.append(("a", ComplexService.intersection(seed.a1, seed.a2), i - 2))
        for name, meet, sphere in parts:
            profile = homology(meet)
            expected = HomologyService.sphere_profile(sphere)
            passed = profile.same_groups(expected)
            reports.append(VerificationReport(
                check=f"{name}_intersection_homology",
                passed=passed,
                witness=None if passed else profile.lines(),
                metrics={"betti": profile.betti, "expected": expected.betti},
            ))
            rim = ComplexService.boundary_complex(meet)
            rim_profile = homology(rim)
            rim_expected = boundary_profile(meet.dimension, sphere)
            passed = rim_profile.same_groups(rim_expected)
            reports.append(VerificationReport(
                check=f"{name}_intersection_boundary_homology",
                passed=passed,
                witness=None if passed else rim_profile.lines(),
                metrics={"betti": rim_profile.betti, "expected": rim_expected.betti},
            ))
        return reports
