"""Pauli-string algebra on up to 32 qubits.

Conventions used everywhere in this package:

* A bitstring ``(b_0, b_1, ..., b_{N-1})`` is packed big-endian into an
  integer: bit 0 is the leftmost label and the most significant bit, so
  the basis index of ``|b_0 ... b_{N-1}>`` is ``sum b_i * 2^(N-1-i)``.
* Pauli strings are stored as an (xmask, zmask) pair in the same bit
  layout plus a phase in {+1, -1, +i, -i}. The operator is
  ``phase * prod_q L_q`` with ``L_q in {I, X, Y, Z}`` read off the masks
  (X: x-bit, Z: z-bit, Y: both). Since ``Y = i X Z`` per qubit, the
  string equals ``phase * i^{#Y} * X(x) * Z(z)``.
* For a bipartite system the subsystem-A qubits always come first in
  the stacked ordering ``|sigma_A, sigma_B>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import total_ordering
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, InvalidInputError

MAX_WIDTH = 32
MERGE_EPS = 1e-12

_PHASES = (1 + 0j, -1 + 0j, 1j, -1j)
_LETTER_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@total_ordering
@dataclass(frozen=True)
class Bitstring:
    """Fixed-width bit array; equality by value, order lexicographic."""

    value: int
    width: int

    def __post_init__(self):
        if not 0 < self.width <= MAX_WIDTH:
            raise InvalidInputError(f"width must be in [1, {MAX_WIDTH}], got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise InvalidInputError(f"value {self.value} out of range for width {self.width}")

    @classmethod
    def from_bits(cls, bits: Sequence[int] | str) -> "Bitstring":
        value = 0
        for b in bits:
            value = (value << 1) | (int(b) & 1)
        return cls(value, len(bits))

    def bit(self, i: int) -> int:
        if not 0 <= i < self.width:
            raise InvalidInputError(f"bit index {i} out of range for width {self.width}")
        return (self.value >> (self.width - 1 - i)) & 1

    @property
    def ones(self) -> int:
        return self.value.bit_count()

    def to01(self) -> str:
        return format(self.value, f"0{self.width}b")

    def split(self, width_a: int) -> tuple["Bitstring", "Bitstring"]:
        width_b = self.width - width_a
        return (
            Bitstring(self.value >> width_b, width_a),
            Bitstring(self.value & ((1 << width_b) - 1), width_b),
        )

    @staticmethod
    def concat(a: "Bitstring", b: "Bitstring") -> "Bitstring":
        return Bitstring((a.value << b.width) | b.value, a.width + b.width)

    def __lt__(self, other: "Bitstring") -> bool:
        return self.to01() < other.to01()

    def __repr__(self):
        return f"Bitstring({self.to01()!r})"


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis times a fourth-root phase."""

    xmask: int
    zmask: int
    width: int
    phase: complex = 1 + 0j

    def __post_init__(self):
        if not 0 < self.width <= MAX_WIDTH:
            raise InvalidInputError(f"width must be in [1, {MAX_WIDTH}], got {self.width}")
        full = (1 << self.width) - 1
        if self.xmask & ~full or self.zmask & ~full:
            raise InvalidInputError("mask bits outside declared width")
        if self.phase not in _PHASES:
            raise InvalidInputError(f"phase must be a fourth root of unity, got {self.phase}")

    @classmethod
    def from_label(cls, label: str, phase: complex = 1 + 0j) -> "PauliString":
        xmask = zmask = 0
        for ch in label:
            xmask <<= 1
            zmask <<= 1
            if ch == "X":
                xmask |= 1
            elif ch == "Y":
                xmask |= 1
                zmask |= 1
            elif ch == "Z":
                zmask |= 1
            elif ch != "I":
                raise InvalidInputError(f"unknown Pauli letter {ch!r}")
        return cls(xmask, zmask, len(label), phase)

    @classmethod
    def identity(cls, width: int) -> "PauliString":
        return cls(0, 0, width)

    @classmethod
    def single(cls, width: int, qubit: int, letter: str) -> "PauliString":
        label = ["I"] * width
        label[qubit] = letter
        return cls.from_label("".join(label))

    @property
    def letters(self) -> str:
        out = []
        for q in range(self.width):
            bit = 1 << (self.width - 1 - q)
            x = bool(self.xmask & bit)
            z = bool(self.zmask & bit)
            out.append("Y" if x and z else "X" if x else "Z" if z else "I")
        return "".join(out)

    @property
    def n_y(self) -> int:
        return (self.xmask & self.zmask).bit_count()

    @property
    def pref(self) -> complex:
        """Prefactor of the basis action: P|b> = pref * (-1)^|b&z| |b^x>."""
        return self.phase * (1j) ** (self.n_y % 4)

    @property
    def is_identity(self) -> bool:
        return self.xmask == 0 and self.zmask == 0

    def compose(self, other: "PauliString") -> "PauliString":
        """Operator product self @ other (self applied after other)."""
        if self.width != other.width:
            raise DimensionError(f"widths differ: {self.width} vs {other.width}")
        x = self.xmask ^ other.xmask
        z = self.zmask ^ other.zmask
        # i-exponent bookkeeping for letters = i^{nY} X(x) Z(z)
        k = self.n_y + other.n_y - (x & z).bit_count()
        sign = -1 if (self.zmask & other.xmask).bit_count() & 1 else 1
        phase = self.phase * other.phase * (1j) ** (k % 4) * sign
        return PauliString(x, z, self.width, complex(phase))

    def restrict(self, qubits: Sequence[int]) -> "PauliString":
        """Letters at the given original indices, in the listed order; phase +1."""
        m = len(qubits)
        xmask = zmask = 0
        for j, q in enumerate(qubits):
            src = 1 << (self.width - 1 - q)
            dst = 1 << (m - 1 - j)
            if self.xmask & src:
                xmask |= dst
            if self.zmask & src:
                zmask |= dst
        return PauliString(xmask, zmask, m)

    def dense(self) -> np.ndarray:
        mat = np.array([[self.phase]], dtype=complex)
        for ch in self.letters:
            mat = np.kron(mat, _LETTER_MATS[ch])
        return mat

    def __repr__(self):
        ph = {1 + 0j: "+", -1 + 0j: "-", 1j: "+i", -1j: "-i"}[self.phase]
        return f"PauliString({ph}{self.letters})"


def pauli_apply(p: PauliString, sigma: Bitstring) -> tuple[complex, Bitstring]:
    """Exact basis-state action: P|sigma> = phase * |sigma'>."""
    if p.width != sigma.width:
        raise DimensionError(f"widths differ: {p.width} vs {sigma.width}")
    sign = -1 if (sigma.value & p.zmask).bit_count() & 1 else 1
    return p.pref * sign, Bitstring(sigma.value ^ p.xmask, sigma.width)


@dataclass(frozen=True)
class BipartiteTerm:
    """One Hamiltonian term split across the cut: coeff * opA (x) opB."""

    coeff: float
    opA: PauliString
    opB: PauliString

    def __post_init__(self):
        if not np.isfinite(self.coeff):
            raise InvalidInputError("coefficient must be finite")
        if self.opA.phase != 1 or self.opB.phase != 1:
            raise InvalidInputError("bipartite factors must carry phase +1")


@dataclass(frozen=True)
class PauliHamiltonian:
    """Real-weighted sum of phase-free Pauli strings on a common width."""

    width: int
    terms: tuple[tuple[float, PauliString], ...]
    _mask_cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    @classmethod
    def build(
        cls,
        width: int,
        terms: Iterable[tuple[float | complex, PauliString]],
        hermit_tol: float = 1e-10,
    ) -> "PauliHamiltonian":
        """Merge duplicate strings, fold phases into coefficients.

        Coefficients below MERGE_EPS after merging are dropped; a residual
        imaginary part above hermit_tol raises (the operator would not be
        Hermitian).
        """
        acc: dict[tuple[int, int], complex] = {}
        for coeff, string in terms:
            if string.width != width:
                raise DimensionError(f"term width {string.width} != {width}")
            key = (string.xmask, string.zmask)
            acc[key] = acc.get(key, 0j) + complex(coeff) * string.phase
        merged = []
        for (x, z), c in acc.items():
            if abs(c.imag) > hermit_tol:
                raise InvalidInputError(f"non-Hermitian coefficient {c} on {PauliString(x, z, width).letters}")
            if abs(c.real) >= MERGE_EPS:
                merged.append((c.real, PauliString(x, z, width)))
        merged.sort(key=lambda t: t[1].letters)
        return cls(width, tuple(merged))

    def __add__(self, other: "PauliHamiltonian") -> "PauliHamiltonian":
        if self.width != other.width:
            raise DimensionError("widths differ")
        return PauliHamiltonian.build(self.width, list(self.terms) + list(other.terms))

    def __len__(self):
        return len(self.terms)

    def mask_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(xmasks, zmasks, prefs) arrays for the numeric kernels."""
        if "masks" not in self._mask_cache:
            xm = np.array([s.xmask for _, s in self.terms], dtype=np.int64)
            zm = np.array([s.zmask for _, s in self.terms], dtype=np.int64)
            pref = np.array([c * s.pref for c, s in self.terms], dtype=np.complex128)
            self._mask_cache["masks"] = (xm, zm, pref)
        return self._mask_cache["masks"]

    def dense(self) -> np.ndarray:
        """Full 2^N matrix; intended for N <= 14."""
        dim = 1 << self.width
        mat = np.zeros((dim, dim), dtype=complex)
        idx = np.arange(dim, dtype=np.int64)
        xm, zm, pref = self.mask_arrays()
        for t in range(len(xm)):
            signs = 1.0 - 2.0 * (np.bitwise_count(idx & zm[t]).astype(np.int64) & 1)
            mat[idx ^ xm[t], idx] += pref[t] * signs
        return mat


def matrix_element(h: PauliHamiltonian, bra: Bitstring, ket: Bitstring) -> complex:
    """<bra|H|ket>, exact up to the coefficient sum."""
    if bra.width != h.width or ket.width != h.width:
        raise DimensionError("bitstring width does not match Hamiltonian")
    out = 0j
    for coeff, string in h.terms:
        if ket.value ^ string.xmask == bra.value:
            sign = -1 if (ket.value & string.zmask).bit_count() & 1 else 1
            out += coeff * string.pref * sign
    return out


@dataclass(frozen=True)
class BipartitionSpec:
    """Disjoint ordered split of {0..N-1} into equal halves A and B."""

    qubitsA: tuple[int, ...]
    qubitsB: tuple[int, ...]

    def __post_init__(self):
        n = len(self.qubitsA) + len(self.qubitsB)
        if sorted(self.qubitsA + self.qubitsB) != list(range(n)):
            raise InvalidInputError("qubitsA and qubitsB must partition 0..N-1")
        if len(self.qubitsA) != len(self.qubitsB):
            raise InvalidInputError("subsystems must have equal size")

    @classmethod
    def half_split(cls, width: int) -> "BipartitionSpec":
        if width % 2:
            raise InvalidInputError("equal bipartition requires even width")
        half = width // 2
        return cls(tuple(range(half)), tuple(range(half, width)))

    @property
    def width(self) -> int:
        return len(self.qubitsA) + len(self.qubitsB)

    @property
    def stacked_order(self) -> tuple[int, ...]:
        return self.qubitsA + self.qubitsB

    @property
    def is_stacked(self) -> bool:
        return self.stacked_order == tuple(range(self.width))


def bipartition(h: PauliHamiltonian, spec: BipartitionSpec) -> list[BipartiteTerm]:
    """Split every term into its A and B factors (exact for Pauli strings)."""
    if spec.width != h.width:
        raise DimensionError("bipartition width does not match Hamiltonian")
    return [
        BipartiteTerm(coeff, s.restrict(spec.qubitsA), s.restrict(spec.qubitsB))
        for coeff, s in h.terms
    ]


def permute_qubits(h: PauliHamiltonian, order: Sequence[int]) -> PauliHamiltonian:
    """Relabel so that new qubit j is old qubit order[j] (stacking helper)."""
    if sorted(order) != list(range(h.width)):
        raise InvalidInputError("order must be a permutation of 0..N-1")
    return PauliHamiltonian.build(
        h.width, [(c, s.restrict(order)) for c, s in h.terms]
    )


def truncate_terms(terms: Sequence[BipartiteTerm], k: int) -> list[BipartiteTerm]:
    """The K terms of largest |coeff|; ties resolved lexicographically."""
    if k < 1:
        raise InvalidInputError("K must be >= 1")
    ranked = sorted(terms, key=lambda t: (-abs(t.coeff), t.opA.letters, t.opB.letters))
    return ranked[: min(k, len(ranked))]


# --- Jordan-Wigner ----------------------------------------------------------
#
# Fermionic input terms are (product, coeff) pairs where product is a
# sequence of (orbital, is_creation) ladder operators, applied right to
# left like the written expression, e.g. a+_0 a_1 is ((0, 1), (1, 0)).

FermionTerm = tuple[Sequence[tuple[int, int]], float]


def _ladder_strings(orbital: int, creation: bool, width: int):
    """JW image of one ladder operator as [(xmask, zmask, coeff)]."""
    zstring = 0
    for q in range(orbital):
        zstring |= 1 << (width - 1 - q)
    site = 1 << (width - 1 - orbital)
    sign = -0.5j if creation else 0.5j
    # (X -+ iY)/2 with the Z tail; Y contributes its own i via letters
    return [(site, zstring, 0.5), (site, zstring | site, sign)]


def _compose_xz(x1, z1, c1, x2, z2, c2):
    x = x1 ^ x2
    z = z1 ^ z2
    k = (x1 & z1).bit_count() + (x2 & z2).bit_count() - (x & z).bit_count()
    sign = -1.0 if (z1 & x2).bit_count() & 1 else 1.0
    return x, z, c1 * c2 * (1j) ** (k % 4) * sign


def jordan_wigner(
    terms: Sequence[FermionTerm], n_orbitals: int, hermit_tol: float = 1e-10
) -> PauliHamiltonian:
    """Map a fermionic operator to qubits (orbital j -> qubit j).

    a+_j = Z_0..Z_{j-1} (X_j - iY_j)/2 and a_j likewise with +i. The
    caller is responsible for supplying a Hermitian operator; residual
    imaginary coefficients above hermit_tol raise InvalidInputError.
    """
    acc: dict[tuple[int, int], complex] = {}
    for product, coeff in terms:
        partial = {(0, 0): complex(coeff)}
        # rightmost ladder operator acts first; compose left factors onto it
        for orbital, creation in reversed(product):
            if not 0 <= orbital < n_orbitals:
                raise InvalidInputError(f"orbital index {orbital} out of range")
            nxt: dict[tuple[int, int], complex] = {}
            for (x2, z2), c2 in partial.items():
                for x1, z1, c1 in _ladder_strings(orbital, bool(creation), n_orbitals):
                    x, z, c = _compose_xz(x1, z1, c1, x2, z2, c2)
                    key = (x, z)
                    nxt[key] = nxt.get(key, 0j) + c
            partial = nxt
        for (x, z), c in partial.items():
            acc[(x, z)] = acc.get((x, z), 0j) + c
    return PauliHamiltonian.build(
        n_orbitals,
        [(c, PauliString(x, z, n_orbitals)) for (x, z), c in acc.items()],
        hermit_tol=hermit_tol,
    )
