from pydantic import BaseModel, ConfigDict, Field
from typing import Dict, List, Optional

class FVector(BaseModel):
    """Face counts f_{-1}, f_0, ..., f_{dim}; empty for the void complex"""
    counts: List[int] = Field(default_factory=list)
    
    model_config = ConfigDict(frozen=True)
    
    def f(self, i: int) -> int:
        """Number of i-dimensional faces"""
        index = i + 1
        if 0 <= index < len(self.counts):
            return self.counts[index]
        return 0
    
    @property
    def proper(self) -> List[int]:
        """f_0 .. f_{dim}"""
        return self.counts[1:]
    
    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.proper))

class ComplexDocument(BaseModel):
    """Canonical JSON form of a complex and its attached maps"""
    name: str = ""
    vertices: List[str]
    facets: List[List[str]]
    coloring: Optional[Dict[str, int]] = None
    involution: Optional[Dict[str, str]] = None
