"""Pretrained word vectors, document averaging, and cosine similarity.

The vector file format is the common one-token-per-line text layout: token
followed by `dimension` decimal floats, space-separated, UTF-8, LF or CRLF
line endings. Malformed lines are skipped and counted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from oerrec.errors import ValidationError

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


def tokenize(text: str) -> list[str]:
    """Lowercase and split on non-alphanumeric runs. No stemming, no stopwords."""
    return [tok for tok in _TOKEN_SPLIT.split(text.lower()) if tok]


@dataclass
class DocVector:
    vector: np.ndarray
    token_count: int  # in-vocabulary tokens that contributed


class EmbeddingTable:
    """Immutable token -> dense vector map; lookups lowercase the key."""

    def __init__(self, dimension: int = 300):
        if dimension < 1:
            raise ValidationError(f"dimension must be positive, got {dimension}")
        self.dimension = dimension
        self._vectors: dict[str, np.ndarray] = {}
        self.skipped_lines = 0

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, token: str) -> bool:
        return token.lower() in self._vectors

    def add(self, token: str, vector) -> None:
        arr = np.asarray(vector, dtype=np.float64)
        if arr.shape != (self.dimension,):
            raise ValidationError(
                f"vector for {token!r} has shape {arr.shape}, expected ({self.dimension},)"
            )
        self._vectors[token.lower()] = arr

    def get(self, token: str) -> np.ndarray | None:
        return self._vectors.get(token.lower())

    @classmethod
    def load(cls, path, dimension: int | None = None) -> "EmbeddingTable":
        """Parse a vector text file; the first well-formed line fixes the dimension
        unless one is given. Returns the table with `skipped_lines` populated."""
        table = None
        skipped = 0
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                parts = line.rstrip("\r\n").split(" ")
                if len(parts) < 2:
                    skipped += 1
                    continue
                token, raw = parts[0], parts[1:]
                if table is None:
                    dim = dimension if dimension is not None else len(raw)
                    table = cls(dimension=dim)
                if len(raw) != table.dimension or not token:
                    skipped += 1
                    continue
                try:
                    values = [float(x) for x in raw]
                except ValueError:
                    skipped += 1
                    continue
                table.add(token, values)
        if table is None:
            table = cls(dimension=dimension if dimension is not None else 300)
        table.skipped_lines = skipped
        return table


def embed_document(text: str, table: EmbeddingTable) -> DocVector:
    """Mean of in-vocabulary token vectors; all-OOV or empty text gives the zero vector."""
    hits = [table.get(tok) for tok in tokenize(text)]
    hits = [vec for vec in hits if vec is not None]
    if not hits:
        return DocVector(np.zeros(table.dimension), token_count=0)
    return DocVector(np.mean(hits, axis=0), token_count=len(hits))


def cosine_similarity(a, b) -> float:
    """a.b / (|a||b|), with zero-norm inputs mapping to 0."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValidationError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return float(np.dot(a, b) / (norm_a * norm_b))


def skill_similarity(transcription: str, skill_description: str, table: EmbeddingTable) -> float:
    """Cosine between the transcript's and the skill description's mean vectors."""
    doc = embed_document(transcription, table)
    skill = embed_document(skill_description, table)
    return cosine_similarity(doc.vector, skill.vector)
