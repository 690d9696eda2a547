"""Schmidt coefficient vectors over fixed computational basis pairs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .pauli import Bitstring

NORM_EPS = 1e-10


@dataclass(frozen=True)
class SchmidtVector:
    """Ordered (sigma_A, sigma_B) pairs with real coefficients on the unit sphere.

    Coefficients may be signed; probability weights are always the
    squares, and a sign can be absorbed into the B-side unitary.
    """

    pairs: tuple[tuple[Bitstring, Bitstring], ...]
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float)
        object.__setattr__(self, "coeffs", coeffs)
        if len(self.pairs) != coeffs.shape[0]:
            raise InvalidInputError("pair list and coefficient vector disagree in length")
        if len(set(self.pairs)) != len(self.pairs):
            raise InvalidInputError("duplicate basis pairs")
        if abs(float(np.sum(coeffs**2)) - 1.0) > NORM_EPS:
            raise InvalidInputError("Schmidt coefficients must satisfy sum(lambda^2) = 1")

    def __len__(self):
        return len(self.pairs)

    @property
    def width_a(self) -> int:
        return self.pairs[0][0].width

    @property
    def width_b(self) -> int:
        return self.pairs[0][1].width

    def top_k(self, k: int) -> list[tuple[Bitstring, Bitstring]]:
        """Pairs of the k largest |coeff|, ties by lexicographic pair order."""
        order = sorted(
            range(len(self.pairs)),
            key=lambda i: (-abs(float(self.coeffs[i])), self.pairs[i][0], self.pairs[i][1]),
        )
        return [self.pairs[i] for i in order[:k]]


def normalized(pairs: Sequence[tuple[Bitstring, Bitstring]], raw: Sequence[float]) -> SchmidtVector:
    vec = np.asarray(raw, dtype=float)
    norm = float(np.linalg.norm(vec))
    if norm == 0:
        raise InvalidInputError("cannot normalize a zero coefficient vector")
    return SchmidtVector(tuple(pairs), vec / norm)


def von_neumann_entropy(coeffs: np.ndarray | SchmidtVector) -> float:
    """-2 sum lambda^2 log|lambda| in nats, with 0 log 0 = 0."""
    lam = coeffs.coeffs if isinstance(coeffs, SchmidtVector) else np.asarray(coeffs, dtype=float)
    sq = lam**2
    nz = sq > 0
    return float(-2.0 * np.sum(sq[nz] * np.log(np.abs(lam[nz]))))
