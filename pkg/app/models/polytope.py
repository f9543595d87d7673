from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from app.models.complex import Face, SimplicialComplex
from app.models.permutation import Coloring, Permutation

# sign vector over {"X", "Y"}; position i selects x_i or y_i
Signs = Tuple[str, ...]


@dataclass(frozen=True)
class AnnotatedComplex:
    """A complex together with the maps that travel with it on disk"""
    complex: SimplicialComplex
    coloring: Optional[Coloring] = None
    involution: Optional[Permutation] = None

    @property
    def name(self) -> str:
        return self.complex.name


@dataclass(frozen=True)
class CrossPolytopeSphere:
    """Boundary of the d-dimensional cross-polytope on x_1..x_d, y_1..y_d"""
    d: int
    complex: SimplicialComplex
    antipode: Permutation
    coloring: Coloring

    @property
    def labels(self) -> Tuple[str, ...]:
        return self.complex.vertices

    def annotated(self) -> AnnotatedComplex:
        return AnnotatedComplex(self.complex, coloring=self.coloring, involution=self.antipode)


@dataclass(frozen=True)
class PolytopePiece:
    """
    Cross-polytope boundary with a distinguished facet sigma.

    antipode pairs the vertices of equal colour, so sigma and
    antipode(sigma) are opposite facets.
    """
    complex: SimplicialComplex
    sigma: Face
    antipode: Permutation
    coloring: Coloring
    index: int = 0

    @property
    def opposite(self) -> Face:
        return self.antipode.apply_face(self.sigma)


@dataclass(frozen=True)
class GluedComplex:
    """
    Result of diamond gluings.

    distinguished is the complex generated by the distinguished facets of
    the pieces glued so far; opposite is generated by their antipodes.
    """
    complex: SimplicialComplex
    distinguished: SimplicialComplex
    opposite: SimplicialComplex
    coloring: Coloring

    @classmethod
    def from_piece(cls, piece: PolytopePiece) -> "GluedComplex":
        return cls(
            complex=piece.complex,
            distinguished=SimplicialComplex([piece.sigma]),
            opposite=SimplicialComplex([piece.opposite]),
            coloring=dict(piece.coloring),
        )


@dataclass(frozen=True)
class GlueChain:
    """Pieces glued in order along the deleted edges"""
    pieces: List[PolytopePiece]
    deleted_edges: List[Face]
    identification: Dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class GammaResult:
    """The doubled cross-polytope complex and its two distinguished balls"""
    gamma: SimplicialComplex
    delta1: SimplicialComplex
    f_delta1: SimplicialComplex
    chain: GlueChain
    coloring: Coloring


@dataclass(frozen=True)
class SigmaResult:
    """Balanced sphere product and the intermediates it is assembled from"""
    sigma: SimplicialComplex
    coloring: Coloring
    gamma: SimplicialComplex
    delta1: SimplicialComplex
    delta2: SimplicialComplex
    f_delta1: SimplicialComplex
    f_delta2: SimplicialComplex
    tube: SimplicialComplex

    def intermediates(self) -> Dict[str, SimplicialComplex]:
        return {
            "gamma": self.gamma,
            "delta1": self.delta1,
            "delta2": self.delta2,
            "f_delta1": self.f_delta1,
            "f_delta2": self.f_delta2,
            "tube": self.tube,
        }


@dataclass(frozen=True)
class InductiveSeed:
    """Balls A1, A2, B1, B2 and the four apex labels of one inductive step"""
    a1: SimplicialComplex
    a2: SimplicialComplex
    b1: SimplicialComplex
    b2: SimplicialComplex
    u: str
    v: str
    u_next: str
    v_next: str


@dataclass(frozen=True)
class InductiveResult:
    d_prev: SimplicialComplex
    d_cur: SimplicialComplex
    d_next: SimplicialComplex
    c1: SimplicialComplex
    c2: SimplicialComplex
