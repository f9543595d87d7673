import hashlib
import re
from functools import lru_cache
from typing import Iterable, Tuple

_LABEL = re.compile(r"^(.*?)(\d*)$")

@lru_cache(maxsize=None)
def vertex_key(label: str) -> Tuple[str, int]:
    """Natural sort key for a vertex label: prefix first, then numeric index"""
    prefix, digits = _LABEL.match(label).groups()
    return (prefix, int(digits) if digits else -1)

def face_key(face: Iterable[str]) -> tuple:
    """Sort key for a face whose vertices are already sorted"""
    return tuple(vertex_key(v) for v in face)

def wrap(index: int, d: int) -> int:
    """Reduce a 1-based index modulo d (x_{d+i} is x_i)"""
    return (index - 1) % d + 1

def x(i: int) -> str:
    return f"x{i}"

def y(i: int) -> str:
    return f"y{i}"

def xp(i: int) -> str:
    return f"x'{i}"

def yp(i: int) -> str:
    return f"y'{i}"

def label_index(label: str) -> int:
    """Numeric index of a label such as x3 or y'12"""
    return vertex_key(label)[1]

def sha256_digest(data: bytes) -> str:
    """Hex digest used in run manifests"""
    return hashlib.sha256(data).hexdigest()
