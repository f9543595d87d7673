from typing import Optional, Sequence


class ValidationException(Exception):
    """Raised when a precondition or parameter range check fails"""
    def __init__(self, message: str, details: dict = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

class MalformedInputException(Exception):
    """Raised when a face, file or document cannot be parsed"""
    def __init__(self, message: str, line: Optional[int] = None):
        self.message = message if line is None else f"line {line}: {message}"
        self.line = line
        super().__init__(self.message)

class FaceNotFoundException(Exception):
    """Raised when a face is not in the complex"""
    def __init__(self, face: Sequence[str]):
        self.face = tuple(face)
        self.message = f"Face {{{', '.join(self.face)}}} is not in the complex"
        super().__init__(self.message)

class VertexCollisionException(Exception):
    """Raised when a new apex is already a vertex of the complex"""
    def __init__(self, vertex: str):
        self.vertex = vertex
        self.message = f"Vertex '{vertex}' is already present"
        super().__init__(self.message)

class NotAPseudomanifoldException(Exception):
    """Raised when a ridge lies in three or more facets"""
    def __init__(self, ridge: Sequence[str], count: int):
        self.ridge = tuple(ridge)
        self.count = count
        self.message = f"Ridge {{{', '.join(self.ridge)}}} lies in {count} facets"
        super().__init__(self.message)

class NotAShellingException(Exception):
    """Raised when a facet order violates the interval condition"""
    def __init__(self, step: int, facet: Sequence[str], intersection: list):
        self.step = step
        self.facet = tuple(facet)
        self.intersection = intersection
        self.message = (
            f"Not a shelling at step {step}: facet {{{', '.join(self.facet)}}} "
            f"meets earlier facets in {intersection}"
        )
        super().__init__(self.message)

class CriterionFailedException(Exception):
    """Raised when the facet-cycle antipodality criterion fails"""
    def __init__(self, message: str, witness=None):
        self.message = message
        self.witness = witness
        super().__init__(self.message)

class ConstructionInvariantException(Exception):
    """Raised when an identity asserted by a construction does not hold"""
    def __init__(self, message: str, details: dict = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

class GluingException(Exception):
    """Raised when two complexes cannot be glued as requested"""
    def __init__(self, message: str, details: dict = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

class HandleIllegalException(Exception):
    """Raised when a vertex and its image share a neighbor"""
    def __init__(self, vertex: str, neighbor: str):
        self.vertex = vertex
        self.neighbor = neighbor
        self.message = f"Vertex '{vertex}' and its image share the neighbor '{neighbor}'"
        super().__init__(self.message)

class SymmetryException(Exception):
    """Raised when a permutation is not an automorphism"""
    def __init__(self, generator: str, facet: Sequence[str]):
        self.generator = generator
        self.facet = tuple(facet)
        self.message = (
            f"Generator {generator} maps facet {{{', '.join(self.facet)}}} outside the complex"
        )
        super().__init__(self.message)

class SearchBudgetExceeded(Exception):
    """Raised when a backtracking search runs out of budget"""
    def __init__(self, budget: int):
        self.budget = budget
        self.message = f"Search budget of {budget} nodes exceeded"
        super().__init__(self.message)

class ClosureCapExceeded(Exception):
    """Raised when a group closure grows beyond the cap"""
    def __init__(self, cap: int):
        self.cap = cap
        self.message = f"Group closure exceeded {cap} elements"
        super().__init__(self.message)
