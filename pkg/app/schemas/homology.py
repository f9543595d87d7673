from pydantic import BaseModel, Field, model_validator
from typing import List

class HomologyProfile(BaseModel):
    """Betti numbers and torsion coefficients per dimension 0..top"""
    betti: List[int]
    torsion: List[List[int]] = Field(default_factory=list)
    reduced: bool = True
    
    @model_validator(mode="after")
    def _check_shape(self):
        if not self.torsion:
            self.torsion = [[] for _ in self.betti]
        if len(self.torsion) != len(self.betti):
            raise ValueError("torsion must list one entry per dimension")
        for factors in self.torsion:
            for a, b in zip(factors, factors[1:]):
                if b % a != 0:
                    raise ValueError(f"torsion factors {factors} do not form a divisibility chain")
        return self
    
    @property
    def is_torsion_free(self) -> bool:
        return all(not factors for factors in self.torsion)
    
    def betti_number(self, k: int) -> int:
        return self.betti[k] if 0 <= k < len(self.betti) else 0
    
    def torsion_in(self, k: int) -> List[int]:
        return self.torsion[k] if 0 <= k < len(self.torsion) else []
    
    @property
    def euler_characteristic(self) -> int:
        """Unreduced Euler characteristic implied by the Betti numbers"""
        chi = sum((-1) ** k * b for k, b in enumerate(self.betti))
        return chi + 1 if self.reduced else chi
    
    def same_groups(self, other: "HomologyProfile") -> bool:
        """Equal groups in every dimension, trailing zero dimensions ignored"""
        if self.reduced != other.reduced:
            return False
        size = max(len(self.betti), len(other.betti))
        return all(
            self.betti_number(k) == other.betti_number(k)
            and self.torsion_in(k) == other.torsion_in(k)
            for k in range(size)
        )
    
    def lines(self) -> List[str]:
        """Render as `H_k = Z^b (+ Z/t ...)` lines"""
        rendered = []
        for k, b in enumerate(self.betti):
            parts = [f"Z^{b}"] + [f"Z/{t}" for t in self.torsion[k]]
            rendered.append(f"H_{k} = " + " + ".join(parts))
        return rendered
