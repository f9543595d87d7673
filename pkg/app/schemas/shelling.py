from pydantic import BaseModel
from typing import List

class ShellingCertificate(BaseModel):
    """Facet order together with the restriction face of every step"""
    order: List[List[str]]
    restrictions: List[List[str]]
