from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from app.models.complex import Face


class IntegerMatrix:
    """Sparse matrix over the integers; zero entries are never stored"""

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[Tuple[int, int], int]] = None):
        self.rows = rows
        self.cols = cols
        self._data: Dict[int, Dict[int, int]] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            if value:
                self._data.setdefault(r, {})[c] = int(value)

    @classmethod
    def from_dense(cls, dense: List[List[int]]) -> "IntegerMatrix":
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(
            rows,
            cols,
            {(r, c): v for r, row in enumerate(dense) for c, v in enumerate(row) if v},
        )

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix) -> "IntegerMatrix":
        rows, cols = dm.shape
        dense = [[int(v) for v in row] for row in dm.to_list()] if rows and cols else []
        matrix = cls.from_dense(dense) if dense else cls(rows, cols)
        matrix.rows, matrix.cols = rows, cols
        return matrix

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def nnz(self) -> int:
        return sum(len(row) for row in self._data.values())

    def get(self, r: int, c: int) -> int:
        return self._data.get(r, {}).get(c, 0)

    def row_items(self) -> Iterator[Tuple[int, Dict[int, int]]]:
        return iter(self._data.items())

    def entries(self) -> Dict[Tuple[int, int], int]:
        return {(r, c): v for r, row in self._data.items() for c, v in row.items()}

    def is_zero(self) -> bool:
        return not self._data

    def to_dense(self) -> List[List[int]]:
        return [[self.get(r, c) for c in range(self.cols)] for r in range(self.rows)]

    def to_domain_matrix(self) -> DomainMatrix:
        rows = {r: {c: ZZ(v) for c, v in row.items()} for r, row in self._data.items()}
        return DomainMatrix(rows, self.shape, ZZ)

    def matmul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        product: Dict[Tuple[int, int], int] = {}
        for r, row in self._data.items():
            for k, a in row.items():
                for c, b in other._data.get(k, {}).items():
                    product[(r, c)] = product.get((r, c), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, product)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __repr__(self) -> str:
        return f"<IntegerMatrix {self.rows}x{self.cols} nnz={self.nnz}>"


@dataclass(frozen=True)
class SmithNormalForm:
    """Invariant factors d_1 | d_2 | ... and the rank; optional unimodular transforms"""
    invariant_factors: Tuple[int, ...]
    rank: int
    left: Optional[IntegerMatrix] = None
    right: Optional[IntegerMatrix] = None


@dataclass(frozen=True)
class ChainComplexData:
    """
    Augmented simplicial chain complex.

    faces[k] lists the k-faces in canonical order (faces[-1] is the empty
    face); boundaries[k] is the matrix of the map C_k -> C_{k-1}, with rows
    indexed by faces[k-1] and columns by faces[k].
    """
    faces: Dict[int, Tuple[Face, ...]]
    boundaries: Dict[int, IntegerMatrix] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return max(self.faces)

    def boundary(self, k: int) -> IntegerMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        return IntegerMatrix(len(self.faces.get(k - 1, ())), len(self.faces.get(k, ())))

    def composition_vanishes(self) -> bool:
        """Check that every composite of consecutive boundary maps is zero"""
        return all(
            self.boundary(k).matmul(self.boundary(k + 1)).is_zero()
            for k in range(0, self.top)
        )
