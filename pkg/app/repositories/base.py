from pathlib import Path
from typing import Generic, TypeVar, Union

from app.utils.helpers import sha256_digest

import logging

logger = logging.getLogger(__name__)

DocumentType = TypeVar("DocumentType")


class BaseRepository(Generic[DocumentType]):
    """Base repository storing documents as files under one directory"""

    def __init__(self, base_dir: Union[str, Path]):
        self.base_dir = Path(base_dir)

    def path_for(self, name: str, suffix: str) -> Path:
        """Path of a named document inside the base directory"""
        return self.base_dir / f"{name}{suffix}"

    def write_text(self, path: Union[str, Path], text: str) -> str:
        """
        Write a document, creating parent directories

        Returns: sha256 digest of the written bytes
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        data = text.encode("utf-8")
        path.write_bytes(data)
        logger.debug(f"Wrote {len(data)} bytes to {path}")
        return sha256_digest(data)

    def read_text(self, path: Union[str, Path]) -> str:
        return Path(path).read_text(encoding="utf-8")

    def digest(self, path: Union[str, Path]) -> str:
        return sha256_digest(Path(path).read_bytes())
