from typing import List, Sequence

from app.models.complex import Face, SimplicialComplex, make_face, maximal_faces
from app.schemas.shelling import ShellingCertificate
from app.services.crosspoly_service import CrossPolytopeService
from app.utils.exceptions import NotAShellingException, ValidationException
from app.utils.helpers import wrap, y
from app.utils.validators import validate_dimension, validate_range

import logging

logger = logging.getLogger(__name__)


class ShellingService:
    """Service for shelling orders and their restriction faces"""

    @staticmethod
    def verify_shelling(complex_: SimplicialComplex, order: Sequence[Sequence[str]]) -> ShellingCertificate:
        """
        Check the interval condition for a facet order

        At step j the faces of F_j not already present must form an interval
        [r(F_j), F_j]; this holds iff every maximal intersection of F_j with an
        earlier facet is a ridge of F_j, and then r(F_j) is the set of vertices
        whose removal gives one of those ridges.

        Raises:
            ValidationException if the order is not the facet set
            NotAShellingException at the first step that fails
        """
        facets = [make_face(f) for f in order]
        if len(set(facets)) != len(facets) or set(facets) != set(complex_.facets):
            raise ValidationException(
                "Validation failed",
                details={"order": "must list every facet of the complex exactly once"},
            )

        restrictions: List[Face] = [()]
        earlier = [frozenset(facets[0])] if facets else []
        for step, facet in enumerate(facets[1:], start=2):
            current = frozenset(facet)
            meets = maximal_faces(tuple(sorted(current & prev)) for prev in earlier)
            short = [list(m) for m in meets if len(m) != len(facet) - 1]
            if short:
                raise NotAShellingException(step, facet, short)
            ridges = {frozenset(m) for m in meets}
            restrictions.append(make_face(v for v in facet if current - {v} in ridges))
            earlier.append(current)

        logger.debug(f"Verified shelling of {len(facets)} facets")
        return ShellingCertificate(
            order=[list(f) for f in facets],
            restrictions=[list(r) for r in restrictions],
        )

    @staticmethod
    def lemma_shelling_order(i: int, d: int) -> List[Face]:
        """
        tau_0, tau_1^1 .. tau_1^d, ..., tau_i^1 .. tau_i^d

        Raises: ValidationException unless 0 <= i <= d-1
        """
        validate_dimension(d, 2)
        validate_range("i", i, 0, d - 1)
        order = [CrossPolytopeService.tau(0, 1, d)]
        for level in range(1, i + 1):
            order.extend(CrossPolytopeService.tau(level, k, d) for k in range(1, d + 1))
        return order

    @staticmethod
    def expected_restriction(i: int, k: int, d: int) -> Face:
        """Restriction face of tau_i^k in the belt order"""
        if i == 0:
            return ()
        if i == 1:
            return (y(k),)
        return make_face({y(k), y(wrap(k + i - 1, d))})
