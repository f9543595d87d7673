from math import lcm
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from app.models.complex import Face, SimplicialComplex, make_face
from app.utils.exceptions import ValidationException
from app.utils.helpers import vertex_key

# vertex -> colour in 1..d
Coloring = Dict[str, int]


class VertexMap:
    """Injective map between vertex labels"""

    def __init__(self, mapping: Mapping[str, str], name: str = ""):
        self.mapping: Dict[str, str] = dict(mapping)
        self.name = name
        if len(set(self.mapping.values())) != len(self.mapping):
            raise ValidationException(
                "Validation failed", details={"map": f"{name or 'map'} is not injective"}
            )

    @property
    def domain(self) -> Tuple[str, ...]:
        return tuple(sorted(self.mapping, key=vertex_key))

    def __call__(self, vertex: str) -> str:
        return self.mapping[vertex]

    def get(self, vertex: str) -> str:
        """Image of a vertex, or the vertex itself outside the domain"""
        return self.mapping.get(vertex, vertex)

    def apply_face(self, face: Iterable[str]) -> Face:
        return make_face(self.mapping[v] for v in face)

    def apply(self, complex_: SimplicialComplex) -> SimplicialComplex:
        return SimplicialComplex(
            (self.apply_face(f) for f in complex_.facets), name=complex_.name
        )

    def inverse(self):
        return type(self)({b: a for a, b in self.mapping.items()}, name=f"{self.name}^-1")

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexMap):
            return NotImplemented
        return self.mapping == other.mapping

    def __hash__(self) -> int:
        return hash(frozenset(self.mapping.items()))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{a}->{self.mapping[a]}" for a in self.domain)
        return f"<VertexMap {self.name} {pairs}>"


class Permutation(VertexMap):
    """Bijection of a finite vertex set onto itself"""

    def __init__(self, mapping: Mapping[str, str], name: str = ""):
        super().__init__(mapping, name=name)
        if set(self.mapping.values()) != set(self.mapping):
            raise ValidationException(
                "Validation failed",
                details={"permutation": f"{name or 'map'} is not a bijection of its domain"},
            )

    @classmethod
    def identity(cls, vertices: Iterable[str], name: str = "id") -> "Permutation":
        return cls({v: v for v in vertices}, name=name)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]], name: str = "") -> "Permutation":
        """Involution swapping each given pair"""
        mapping = {}
        for a, b in pairs:
            mapping[a] = b
            mapping[b] = a
        return cls(mapping, name=name)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other"""
        if set(self.mapping) != set(other.mapping):
            raise ValidationException(
                "Validation failed", details={"compose": "permutations act on different vertex sets"}
            )
        return Permutation(
            {v: self.mapping[other.mapping[v]] for v in other.mapping},
            name=f"{self.name}{other.name}",
        )

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping.items())

    def fixed_points(self) -> List[str]:
        return [v for v in self.domain if self.mapping[v] == v]

    def cycles(self) -> List[Tuple[str, ...]]:
        seen = set()
        found = []
        for start in self.domain:
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            current = self.mapping[start]
            while current != start:
                cycle.append(current)
                seen.add(current)
                current = self.mapping[current]
            found.append(tuple(cycle))
        return found

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.mapping else 1

    def power(self, n: int) -> "Permutation":
        result = Permutation.identity(self.mapping)
        for _ in range(n % self.order()):
            result = self.compose(result)
        return result

    def as_tuple(self, order: Sequence[str]) -> Tuple[str, ...]:
        """Images of `order`, used as a hashable group element"""
        return tuple(self.mapping[v] for v in order)

    def __repr__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        body = " ".join("(" + " ".join(c) + ")" for c in moved) or "()"
        return f"<Permutation {self.name} {body}>"
