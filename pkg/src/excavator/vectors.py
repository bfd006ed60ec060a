"""Deterministic token/phrase vectors via hashed character n-grams.

Stand-in for a contextual encoder: each padded character trigram of the
lowercased text hashes (keyed blake2b, so stable across runs and machines)
to a coordinate and a sign; the accumulated vector is L2-normalized.
Any provider with the same `vector`/`token_vectors` surface can be swapped
in where these vectors are consumed.
"""

import hashlib

import numpy as np


class HashedNgramVectors:
    """Seeded hashed random-projection embedding of character n-grams."""

    def __init__(self, dim: int = 64, seed: int = 0, n: int = 3):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.dim = dim
        self.seed = seed
        self.n = n

    def _ngrams(self, text: str) -> list[str]:
        padded = f"^{text.lower()}$"
        if len(padded) <= self.n:
            return [padded]
        return [padded[i:i + self.n] for i in range(len(padded) - self.n + 1)]

    def vector(self, text: str) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.float64)
        for gram in self._ngrams(text):
            h = hashlib.blake2b(
                gram.encode("utf-8"),
                key=str(self.seed).encode("ascii"),
                digest_size=8,
            ).digest()
            val = int.from_bytes(h, "big")
            idx = val % self.dim
            sign = 1.0 if (val >> 32) & 1 else -1.0
            v[idx] += sign
        norm = np.linalg.norm(v)
        if norm > 0:
            v /= norm
        else:
            v[0] = 1.0  # degenerate text; keep vectors unit length
        return v

    def token_vectors(self, tokens: list[str]) -> np.ndarray:
        """(len(tokens), dim) matrix, one row per token."""
        if not tokens:
            return np.zeros((0, self.dim), dtype=np.float64)
        return np.stack([self.vector(t) for t in tokens])


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))
