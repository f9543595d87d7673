from pathlib import Path
from typing import Union

from app.repositories.base import BaseRepository
from app.schemas.report import RunManifest

MANIFEST_DIR = "manifests"


class ManifestRepository(BaseRepository[RunManifest]):
    """Repository for certify run manifests"""

    def save(self, manifest: RunManifest, name: str) -> Path:
        path = self.base_dir / MANIFEST_DIR / f"{name}.json"
        self.write_text(path, manifest.model_dump_json(indent=2) + "\n")
        return path

    def load(self, path: Union[str, Path]) -> RunManifest:
        return RunManifest.model_validate_json(self.read_text(path))
