import json
from pathlib import Path
from typing import Optional, Union

from pydantic import ValidationError

from app.models.complex import SimplicialComplex, make_face
from app.models.permutation import Permutation
from app.models.polytope import AnnotatedComplex
from app.repositories.base import BaseRepository
from app.schemas.complex import ComplexDocument
from app.utils.exceptions import MalformedInputException
from app.utils.helpers import vertex_key
from app.utils.validators import validate_format

import logging

logger = logging.getLogger(__name__)

SUFFIXES = {"plain": ".txt", "json": ".json"}
NAME_PREFIX = "name:"


def detect_format(path: Union[str, Path]) -> str:
    return "json" if Path(path).suffix.lower() == ".json" else "plain"


class ComplexRepository(BaseRepository[AnnotatedComplex]):
    """Repository for complexes in the plain and JSON canonical formats"""

    @staticmethod
    def parse_plain(text: str, name: str = "") -> AnnotatedComplex:
        """
        One facet per line, vertices separated by whitespace

        `#` starts a comment; a `# name: ...` comment sets the complex name.

        Raises: MalformedInputException with the line number of a bad facet,
        or when the text holds no facet at all
        """
        facets = []
        for number, raw in enumerate(text.splitlines(), start=1):
            body, _, comment = raw.partition("#")
            comment = comment.strip()
            if comment.startswith(NAME_PREFIX) and not body.strip():
                name = comment[len(NAME_PREFIX):].strip()
            tokens = body.split()
            if not tokens:
                continue
            try:
                facets.append(make_face(tokens))
            except MalformedInputException as e:
                raise MalformedInputException(e.message, line=number)
        if not facets:
            raise MalformedInputException("empty complex: no facet lines found")
        return AnnotatedComplex(SimplicialComplex(facets, name=name))

    @staticmethod
    def parse_json(text: str) -> AnnotatedComplex:
        """
        Parse a ComplexDocument

        Raises: MalformedInputException on invalid JSON, a schema violation,
        an empty facet list or a vertex list that disagrees with the facets
        """
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise MalformedInputException(f"invalid JSON: {e.msg}", line=e.lineno)
        try:
            document = ComplexDocument.model_validate(raw)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(part) for part in first["loc"])
            raise MalformedInputException(f"invalid complex document at '{where}': {first['msg']}")

        if not document.facets:
            raise MalformedInputException("empty complex: facet list is empty")
        for index, facet in enumerate(document.facets, start=1):
            try:
                make_face(facet)
            except MalformedInputException as e:
                raise MalformedInputException(f"facet {index}: {e.message}")
        complex_ = SimplicialComplex(document.facets, name=document.name)
        if sorted(document.vertices, key=vertex_key) != list(complex_.vertices):
            raise MalformedInputException("vertex list does not match the vertices of the facets")

        involution = None
        if document.involution is not None:
            involution = Permutation(document.involution, name="involution")
        return AnnotatedComplex(complex_, coloring=document.coloring, involution=involution)

    @staticmethod
    def render_plain(annotated: AnnotatedComplex) -> str:
        if annotated.coloring is not None or annotated.involution is not None:
            logger.warning(f"Plain format drops the coloring and involution of '{annotated.name}'")
        lines = []
        if annotated.name:
            lines.append(f"# {NAME_PREFIX} {annotated.name}")
        lines.extend(" ".join(facet) for facet in annotated.complex.facets)
        return "\n".join(lines) + "\n"

    @staticmethod
    def render_json(annotated: AnnotatedComplex) -> str:
        complex_ = annotated.complex
        coloring = None
        if annotated.coloring is not None:
            coloring = {v: annotated.coloring[v] for v in complex_.vertices if v in annotated.coloring}
        involution = None
        if annotated.involution is not None:
            involution = {v: annotated.involution.mapping[v] for v in annotated.involution.domain}
        document = ComplexDocument(
            name=complex_.name,
            vertices=list(complex_.vertices),
            facets=[list(f) for f in complex_.facets],
            coloring=coloring,
            involution=involution,
        )
        return document.model_dump_json(indent=2) + "\n"

    def render(self, annotated: AnnotatedComplex, fmt: str) -> str:
        validate_format(fmt)
        return self.render_json(annotated) if fmt == "json" else self.render_plain(annotated)

    def parse(self, text: str, fmt: str, name: str = "") -> AnnotatedComplex:
        validate_format(fmt)
        return self.parse_json(text) if fmt == "json" else self.parse_plain(text, name=name)

    def load(self, path: Union[str, Path], fmt: Optional[str] = None) -> AnnotatedComplex:
        """Read a complex file; the format follows the suffix unless given"""
        path = Path(path)
        fmt = fmt or detect_format(path)
        annotated = self.parse(self.read_text(path), fmt, name=path.stem)
        logger.info(f"Loaded {annotated.complex} from {path}")
        return annotated

    def load_mapping(self, path: Union[str, Path]) -> dict:
        """
        Read a JSON object such as a colouring or a vertex permutation

        Raises: MalformedInputException unless the file holds one JSON object
        """
        try:
            mapping = json.loads(self.read_text(path))
        except json.JSONDecodeError as e:
            raise MalformedInputException(f"invalid JSON in {path}: {e.msg}", line=e.lineno)
        if not isinstance(mapping, dict):
            raise MalformedInputException(f"{path} must hold a JSON object")
        return mapping

    def save(self, annotated: AnnotatedComplex, fmt: str, name: Optional[str] = None) -> Path:
        """Write under the base directory as <name>.json or <name>.txt"""
        path = self.path_for(name or annotated.name, SUFFIXES[fmt])
        self.save_to(annotated, path, fmt)
        return path

    def save_to(self, annotated: AnnotatedComplex, path: Union[str, Path], fmt: Optional[str] = None) -> str:
        """Write to an explicit path; returns the digest"""
        fmt = fmt or detect_format(path)
        return self.write_text(path, self.render(annotated, fmt))
