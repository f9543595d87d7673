from typing import Dict, List, Optional, Set, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices.normalforms import invariant_factors, smith_normal_decomp

from app.core.config import settings
from app.models.complex import SimplicialComplex
from app.models.matrix import ChainComplexData, IntegerMatrix, SmithNormalForm
from app.schemas.homology import HomologyProfile
from app.utils.exceptions import ConstructionInvariantException, ValidationException

import logging

logger = logging.getLogger(__name__)


def _select_unit_pivot(rows: Dict[int, Dict[int, int]], cols: Dict[int, Set[int]]) -> Optional[Tuple[int, int]]:
    """Unit entry of least Markowitz cost (fill-in bound), or None"""
    best = None
    best_cost = None
    for c, members in cols.items():
        for r in members:
            value = rows[r][c]
            if value != 1 and value != -1:
                continue
            cost = (len(rows[r]) - 1) * (len(members) - 1)
            if best is None or cost < best_cost:
                best, best_cost = (r, c), cost
                if cost == 0:
                    return best
    return best


def eliminate_unit_pivots(matrix: IntegerMatrix) -> Tuple[int, IntegerMatrix]:
    """
    Eliminate ±1 pivots by integer row operations

    Each pivot contributes an invariant factor 1. Returns the number of
    pivots and the residual matrix (pivot rows and columns removed), whose
    Smith form supplies the remaining factors.
    """
    rows: Dict[int, Dict[int, int]] = {r: dict(entries) for r, entries in matrix.row_items()}
    cols: Dict[int, Set[int]] = {}
    for r, entries in rows.items():
        for c in entries:
            cols.setdefault(c, set()).add(r)

    pivots = 0
    while True:
        pivot = _select_unit_pivot(rows, cols)
        if pivot is None:
            break
        r, c = pivot
        prow = rows.pop(r)
        sign = prow[c]
        for other in list(cols[c]):
            if other == r:
                continue
            orow = rows[other]
            factor = orow[c] * sign
            for col, value in prow.items():
                updated = orow.get(col, 0) - factor * value
                if updated:
                    if col not in orow:
                        cols[col].add(other)
                    orow[col] = updated
                elif col in orow:
                    del orow[col]
                    cols[col].discard(other)
            if not orow:
                del rows[other]
        for col in prow:
            cols[col].discard(r)
        for col in [col for col in prow if not cols[col]]:
            del cols[col]
        pivots += 1

    row_ids = sorted(rows)
    col_ids = sorted(cols)
    row_pos = {r: i for i, r in enumerate(row_ids)}
    col_pos = {c: j for j, c in enumerate(col_ids)}
    residual = IntegerMatrix(
        len(row_ids),
        len(col_ids),
        {(row_pos[r], col_pos[c]): v for r, entries in rows.items() for c, v in entries.items()},
    )
    return pivots, residual


class HomologyService:
    """Service for integral simplicial homology"""

    @staticmethod
    def boundary_matrices(complex_: SimplicialComplex) -> ChainComplexData:
        """
        Augmented chain complex of a non-empty complex

        Column sigma of the k-th matrix has entry (-1)^j in the row of sigma
        with its j-th vertex removed; the 0-th matrix is the augmentation.

        Raises: ValidationException for the void complex
        """
        if complex_.is_void:
            raise ValidationException(
                "Validation failed", details={"complex": "homology needs a non-empty complex"}
            )
        faces = dict(complex_.faces_by_dimension)
        boundaries: Dict[int, IntegerMatrix] = {}
        for k in range(0, complex_.dimension + 1):
            index = {face: i for i, face in enumerate(faces[k - 1])}
            entries = {}
            for col, face in enumerate(faces[k]):
                for j in range(len(face)):
                    entries[(index[face[:j] + face[j + 1:]], col)] = -1 if j % 2 else 1
            boundaries[k] = IntegerMatrix(len(faces[k - 1]), len(faces[k]), entries)
        logger.debug(f"Assembled chain complex of {complex_.name or 'complex'}: f={complex_.f_vector().proper}")
        return ChainComplexData(faces=faces, boundaries=boundaries)

    @staticmethod
    def matrix_rank(matrix: IntegerMatrix) -> int:
        """Rank via unit elimination, finishing the residual over the rationals"""
        pivots, residual = eliminate_unit_pivots(matrix)
        if residual.is_zero():
            return pivots
        return pivots + residual.to_domain_matrix().convert_to(QQ).rank()

    @staticmethod
    def smith_normal_form(matrix: IntegerMatrix, transforms: bool = False) -> SmithNormalForm:
        """
        Invariant factors d_1 | d_2 | ... of an integer matrix

        Args:
            matrix: any integer matrix
            transforms: also return unimodular U, V with U*M*V diagonal

        Raises:
            ValidationException if transforms are requested for a matrix
            larger than SNF_TRANSFORM_MAX_SIZE
            ConstructionInvariantException if the returned transforms fail
            their check
        """
        if transforms:
            return HomologyService._smith_with_transforms(matrix)

        pivots, residual = eliminate_unit_pivots(matrix)
        factors = [1] * pivots
        if not residual.is_zero():
            found = invariant_factors(residual.to_domain_matrix())
            factors.extend(sorted(abs(int(f)) for f in found if f != 0))
        return SmithNormalForm(invariant_factors=tuple(factors), rank=len(factors))

    @staticmethod
    def _smith_with_transforms(matrix: IntegerMatrix) -> SmithNormalForm:
        limit = settings.SNF_TRANSFORM_MAX_SIZE
        if max(matrix.shape) > limit:
            raise ValidationException(
                "Validation failed",
                details={"transforms": f"matrix {matrix.rows}x{matrix.cols} exceeds SNF_TRANSFORM_MAX_SIZE={limit}"},
            )
        if matrix.rows == 0 or matrix.cols == 0 or matrix.is_zero():
            left = IntegerMatrix(matrix.rows, matrix.rows, {(i, i): 1 for i in range(matrix.rows)})
            right = IntegerMatrix(matrix.cols, matrix.cols, {(i, i): 1 for i in range(matrix.cols)})
            return SmithNormalForm(invariant_factors=(), rank=0, left=left, right=right)

        dm = matrix.to_domain_matrix().to_dense()
        smf, s, t = smith_normal_decomp(dm)
        left = IntegerMatrix.from_domain_matrix(s)
        right = IntegerMatrix.from_domain_matrix(t)
        diagonal = IntegerMatrix.from_domain_matrix(smf)

        factors = [abs(diagonal.get(i, i)) for i in range(min(matrix.shape)) if diagonal.get(i, i)]
        product = left.matmul(matrix).matmul(right)
        off_diagonal = [key for key in product.entries() if key[0] != key[1]]
        on_diagonal = [abs(product.get(i, i)) for i in range(min(matrix.shape)) if product.get(i, i)]
        if off_diagonal or on_diagonal != factors or abs(int(s.det())) != 1 or abs(int(t.det())) != 1:
            raise ConstructionInvariantException(
                "Smith normal form transforms failed verification",
                details={"off_diagonal": off_diagonal[:5], "factors": factors},
            )
        return SmithNormalForm(
            invariant_factors=tuple(factors), rank=len(factors), left=left, right=right
        )

    @staticmethod
    def reduced_homology(
        complex_: SimplicialComplex, reduced: bool = True, torsion: bool = True
    ) -> HomologyProfile:
        """
        Betti numbers and torsion coefficients over the integers

        Args:
            complex_: non-empty complex
            reduced: augmented (reduced) convention when True
            torsion: run the full Smith form; otherwise ranks only and torsion
            is reported empty

        Raises: ValidationException for the void complex
        """
        chain = HomologyService.boundary_matrices(complex_)
        top = complex_.dimension
        ranks: Dict[int, int] = {top + 1: 0}
        factors: Dict[int, Tuple[int, ...]] = {top + 1: ()}
        for k in range(0, top + 1):
            if k == 0 and not reduced:
                ranks[0], factors[0] = 0, ()
                continue
            if torsion:
                snf = HomologyService.smith_normal_form(chain.boundary(k))
                ranks[k], factors[k] = snf.rank, snf.invariant_factors
            else:
                ranks[k], factors[k] = HomologyService.matrix_rank(chain.boundary(k)), ()

        betti: List[int] = []
        torsion_lists: List[List[int]] = []
        for k in range(0, max(top, 0) + 1):
            count = len(chain.faces.get(k, ()))
            betti.append(count - ranks.get(k, 0) - ranks.get(k + 1, 0))
            torsion_lists.append([t for t in factors.get(k + 1, ()) if t > 1])

        profile = HomologyProfile(betti=betti, torsion=torsion_lists, reduced=reduced)
        logger.debug(f"Homology of {complex_.name or 'complex'}: betti={betti}")
        return profile

    @staticmethod
    def sphere_profile(n: int) -> HomologyProfile:
        """
        Reduced homology of the n-sphere

        The (-1)-sphere {∅} only has H_-1 = Z, so its profile lists no degree.

        Raises: ValidationException for n < -1
        """
        if n < -1:
            raise ValidationException("Validation failed", details={"sphere": f"no sphere of dimension {n}"})
        if n == -1:
            return HomologyProfile(betti=[])
        betti = [0] * (n + 1)
        betti[n] = 1
        return HomologyProfile(betti=betti)

    @staticmethod
    def sphere_product_profile(a: int, b: int) -> HomologyProfile:
        """Reduced homology of S^a x S^b (a = 0 gives two copies of S^b)"""
        betti = [0] * (a + b + 1)
        betti[a] += 1
        betti[b] += 1
        betti[a + b] += 1
        return HomologyProfile(betti=betti)

    @staticmethod
    def acyclic_profile(dimension: int = 0) -> HomologyProfile:
        return HomologyProfile(betti=[0] * (max(dimension, 0) + 1))
