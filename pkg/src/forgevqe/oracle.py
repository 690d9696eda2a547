"""Exact diagonalization and exact Schmidt decompositions.

Ground truth for every verification in this package: dense or
matrix-free Lanczos ground states, SVD Schmidt spectra, truncated
weights, and basis-pair rankings.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import _kernels
from .errors import ConsistencyError, InvalidInputError
from .pauli import BipartitionSpec, Bitstring, PauliHamiltonian
from .schmidt import SchmidtVector

DENSE_CUTOFF = 4096
RESIDUAL_TOL = 1e-8
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class ExactGroundState:
    """Lowest eigenpair; amplitudes live in the full 2^N space."""

    energy: float
    amplitudes: np.ndarray
    width: int


def _sector_basis(width: int, sector) -> np.ndarray | None:
    """Sorted basis labels for a symmetry sector.

    sector is None (full space), an int (total number of set bits) or a
    pair (kA, kB) of per-half quotas in the stacked ordering.
    """
    if sector is None:
        return None
    if isinstance(sector, int):
        positions = range(width)
        vals = []
        for combo in combinations(positions, sector):
            v = 0
            for q in combo:
                v |= 1 << (width - 1 - q)
            vals.append(v)
        return np.array(sorted(vals), dtype=np.int64)
    ka, kb = sector
    half = width // 2
    if width % 2:
        raise InvalidInputError("per-half sectors need even width")
    if not (0 <= ka <= half and 0 <= kb <= half):
        raise InvalidInputError(f"infeasible sector quotas ({ka}, {kb}) for width {width}")
    a_vals = []
    for combo in combinations(range(half), ka):
        v = 0
        for q in combo:
            v |= 1 << (half - 1 - q)
        a_vals.append(v)
    b_vals = []
    for combo in combinations(range(half), kb):
        v = 0
        for q in combo:
            v |= 1 << (half - 1 - q)
        b_vals.append(v)
    vals = [(a << half) | b for a in a_vals for b in b_vals]
    return np.array(sorted(vals), dtype=np.int64)


def _build_sector_matrix(h: PauliHamiltonian, basis: np.ndarray) -> sp.csr_matrix:
    xm, zm, pref = h.mask_arrays()
    nb = basis.shape[0]
    rows, cols, vals = [], [], []
    for t in range(len(xm)):
        targets = basis ^ xm[t]
        pos = np.searchsorted(basis, targets)
        pos_c = np.minimum(pos, nb - 1)
        keep = basis[pos_c] == targets
        signs = 1.0 - 2.0 * (np.bitwise_count(basis & zm[t]).astype(np.int64) & 1)
        rows.append(pos_c[keep])
        cols.append(np.arange(nb, dtype=np.int64)[keep])
        vals.append((pref[t] * signs)[keep])
    return sp.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(nb, nb),
        dtype=np.complex128,
    )


def _canonical_index(vec: np.ndarray) -> int:
    peak = np.max(np.abs(vec))
    return int(np.nonzero(np.abs(vec) >= peak - 1e-12)[0][0])


def _canonicalize_phase(vec: np.ndarray) -> np.ndarray:
    j = _canonical_index(vec)
    ph = vec[j] / abs(vec[j])
    return vec * np.conj(ph)


def ground_state(h: PauliHamiltonian, sector=None, seed: int = 0) -> ExactGroundState:
    """Lowest eigenpair, dense below DENSE_CUTOFF, else matrix-free Lanczos.

    Sector-projected solves drop couplings that leave the sector, which
    is exact when H commutes with the sector symmetry. Degenerate dense
    ground spaces pick the eigenvector whose largest-|amplitude| index
    is smallest; the global phase makes that amplitude real positive.
    """
    basis = _sector_basis(h.width, sector)
    dim = (1 << h.width) if basis is None else int(basis.shape[0])
    if dim == 0:
        raise InvalidInputError("empty symmetry sector")

    if dim <= DENSE_CUTOFF:
        if basis is None:
            mat = h.dense()
        else:
            mat = _build_sector_matrix(h, basis).toarray()
        evals, evecs = np.linalg.eigh(mat)
        e0 = float(evals[0])
        cand = [i for i in range(len(evals)) if evals[i] <= e0 + DEGENERACY_TOL]
        best = min(cand, key=lambda i: (_canonical_index(evecs[:, i]), i))
        vec = _canonicalize_phase(evecs[:, best])
    else:
        xm, zm, pref = h.mask_arrays()
        if basis is None:

            def matvec(v):
                out = np.zeros_like(v, dtype=np.complex128)
                _kernels.matvec_pauli_sum(np.ascontiguousarray(v, dtype=np.complex128), out, xm, zm, pref)
                return out

        else:

            def matvec(v):
                out = np.zeros_like(v, dtype=np.complex128)
                _kernels.matvec_pauli_sum_sector(
                    np.ascontiguousarray(v, dtype=np.complex128), out, basis, xm, zm, pref
                )
                return out

        op = spla.LinearOperator((dim, dim), matvec=matvec, dtype=np.complex128)
        rng = np.random.default_rng(seed)
        v0 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        try:
            evals, evecs = spla.eigsh(op, k=1, which="SA", v0=v0, tol=0)
        except spla.ArpackNoConvergence as exc:
            raise ConsistencyError(f"Lanczos did not converge: {exc}") from exc
        e0 = float(evals[0])
        vec = _canonicalize_phase(evecs[:, 0])

    if basis is not None:
        full = np.zeros(1 << h.width, dtype=np.complex128)
        full[basis] = vec
        vec = full
    vec = vec / np.linalg.norm(vec)

    xm, zm, pref = h.mask_arrays()
    resid = np.zeros_like(vec)
    _kernels.matvec_pauli_sum(vec, resid, xm, zm, pref)
    resid -= e0 * vec
    if np.linalg.norm(resid) > RESIDUAL_TOL:
        raise ConsistencyError(f"eigenpair residual {np.linalg.norm(resid):.2e} above tolerance")
    return ExactGroundState(e0, vec, h.width)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """Full SVD of the stacked amplitude matrix; values sorted descending."""

    values: np.ndarray
    left: np.ndarray  # columns are A-side Schmidt vectors
    right: np.ndarray  # rows are B-side Schmidt vectors (Vh convention)
    width_a: int
    width_b: int

    def dominant_pairs(self, k: int) -> list[tuple[Bitstring, Bitstring]]:
        """Computational labels dominating each retained singular pair."""
        out = []
        for i in range(min(k, len(self.values))):
            a = _canonical_index(self.left[:, i])
            b = _canonical_index(self.right[i, :])
            out.append((Bitstring(a, self.width_a), Bitstring(b, self.width_b)))
        return out


def amplitude_matrix(psi: ExactGroundState, spec: BipartitionSpec) -> np.ndarray:
    """Amplitudes reshaped to 2^(N/2) x 2^(N/2) in the stacked A,B order."""
    if spec.width != psi.width:
        raise InvalidInputError("bipartition width does not match state")
    n = psi.width
    half = n // 2
    tensor = psi.amplitudes.reshape((2,) * n)
    if not spec.is_stacked:
        tensor = tensor.transpose(spec.stacked_order)
    return tensor.reshape(1 << half, 1 << half)


def exact_schmidt(psi: ExactGroundState, spec: BipartitionSpec) -> SchmidtDecomposition:
    mat = amplitude_matrix(psi, spec)
    left, vals, right = np.linalg.svd(mat)
    half = psi.width // 2
    return SchmidtDecomposition(vals, left, right, half, half)


def truncated_weight(values: np.ndarray | SchmidtDecomposition, k: int) -> float:
    """Sum of the k largest squared Schmidt coefficients."""
    vals = values.values if isinstance(values, SchmidtDecomposition) else np.asarray(values)
    vals = np.sort(np.abs(vals))[::-1]
    return float(np.sum(vals[:k] ** 2))


def exact_basis_schmidt_vector(psi: ExactGroundState, spec: BipartitionSpec) -> SchmidtVector:
    """Fixed-basis reading: every (row, col) pair weighted by its amplitude.

    This is the constrained solve over the complete pair set (identity
    half-system unitaries), i.e. the target of the selection algorithm.
    Pairs are sorted by decreasing |amplitude|, ties lexicographic.
    """
    mat = amplitude_matrix(psi, spec)
    half = psi.width // 2
    rows, cols = np.nonzero(np.abs(mat) > 0)
    amps = mat[rows, cols]
    if np.max(np.abs(amps.imag)) > 1e-9:
        # a global phase was already removed; residual imaginary parts
        # would signal a genuinely complex ground state
        raise ConsistencyError("amplitude matrix is not real up to global phase")
    order = sorted(
        range(len(rows)),
        key=lambda i: (-abs(amps[i]), int(rows[i]), int(cols[i])),
    )
    pairs = tuple(
        (Bitstring(int(rows[i]), half), Bitstring(int(cols[i]), half)) for i in order
    )
    coeffs = np.array([amps[i].real for i in order])
    return SchmidtVector(pairs, coeffs / np.linalg.norm(coeffs))


def exact_topk_pairs(
    psi: ExactGroundState, spec: BipartitionSpec, k: int, ranking: str = "amplitude"
) -> list[tuple[Bitstring, Bitstring]]:
    """Top-k basis pairs under either ranking convention.

    "amplitude" ranks (sigma_A, sigma_B) by |amplitude matrix entry|;
    "svd" takes the dominant computational labels of the top singular
    vectors. Both are reported by the scoring harness since they can
    disagree beyond the leading pairs.
    """
    if ranking == "amplitude":
        return exact_basis_schmidt_vector(psi, spec).top_k(k)
    if ranking == "svd":
        return exact_schmidt(psi, spec).dominant_pairs(k)
    raise InvalidInputError(f"unknown ranking {ranking!r}")
