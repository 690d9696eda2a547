"""Benchmark Hamiltonians: spin chains, triangular-lattice TFIM, the t-V
model, and nuclear shell-model ingestion.

Lattice conventions: a triangular rows x cols lattice is a parallelogram
grid with edges right, down, and down-right; CBC wraps columns, TBC wraps
both directions. The diagonal cut keeps the staircase r + c <= T on side
A. Site index is row-major, r * cols + c.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidInputError, ParseError
from .pauli import (
    BipartitionSpec,
    PauliHamiltonian,
    PauliString,
    jordan_wigner,
)

_MASK64 = (1 << 64) - 1


def _splitmix64(seed: int, count: int) -> np.ndarray:
    """Deterministic uniform doubles in [0, 1); cross-language friendly."""
    x = seed & _MASK64
    out = np.empty(count, dtype=float)
    for i in range(count):
        x = (x + 0x9E3779B97F4A7C15) & _MASK64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z = z ^ (z >> 31)
        out[i] = (z >> 11) * 2.0**-53
    return out


@dataclass(frozen=True)
class FieldSpec:
    """Per-site transverse field: uniform or seeded random-uniform."""

    kind: str
    h: float = 0.0
    lo: float = 0.0
    hi: float = 0.0
    seed: int = 0

    @classmethod
    def uniform(cls, h: float) -> "FieldSpec":
        return cls("uniform", h=h)

    @classmethod
    def random_uniform(cls, lo: float, hi: float, seed: int) -> "FieldSpec":
        if lo > hi:
            raise InvalidInputError("random field needs lo <= hi")
        return cls("random-uniform", lo=lo, hi=hi, seed=seed)

    def values(self, n_sites: int) -> np.ndarray:
        if self.kind == "uniform":
            return np.full(n_sites, self.h)
        if self.kind == "random-uniform":
            u = _splitmix64(self.seed, n_sites)
            return self.lo + u * (self.hi - self.lo)
        raise InvalidInputError(f"unknown field kind {self.kind!r}")


def _pair_zz(n: int, i: int, j: int) -> PauliString:
    label = ["I"] * n
    label[i] = "Z"
    label[j] = "Z"
    return PauliString.from_label("".join(label))


def _bond_xyz(n: int, i: int, j: int):
    for letter in "XYZ":
        label = ["I"] * n
        label[i] = letter
        label[j] = letter
        yield PauliString.from_label("".join(label))


def _check_even(n: int):
    if n < 2 or n % 2:
        raise InvalidInputError(f"equal bipartition requires an even site count, got {n}")


def build_tfim_1d(n: int, j: float, field: FieldSpec) -> PauliHamiltonian:
    """Ring TFIM: J sum_i Z_i Z_{i+1} + sum_i h_i X_i, periodic."""
    _check_even(n)
    h = field.values(n)
    terms = [(j, _pair_zz(n, i, (i + 1) % n)) for i in range(n)]
    terms += [(h[i], PauliString.single(n, i, "X")) for i in range(n)]
    return PauliHamiltonian.build(n, terms)


def build_heisenberg_1d(n: int, j: float) -> PauliHamiltonian:
    """Ring Heisenberg: J sum_i (XX + YY + ZZ) on nearest neighbors."""
    _check_even(n)
    terms = []
    for i in range(n):
        for s in _bond_xyz(n, i, (i + 1) % n):
            terms.append((j, s))
    return PauliHamiltonian.build(n, terms)


def build_j1j2_1d(n: int, j1: float, j2: float) -> PauliHamiltonian:
    """Ring J1-J2: Heisenberg bonds on nearest and next-nearest neighbors."""
    _check_even(n)
    terms = []
    for i in range(n):
        for s in _bond_xyz(n, i, (i + 1) % n):
            terms.append((j1, s))
        for s in _bond_xyz(n, i, (i + 2) % n):
            terms.append((j2, s))
    return PauliHamiltonian.build(n, terms)


def triangular_edges(rows: int, cols: int, boundary: str) -> list[tuple[int, int]]:
    """Deterministic edge list of the triangular parallelogram lattice."""
    if boundary not in ("OBC", "CBC", "TBC"):
        raise InvalidInputError(f"unsupported boundary {boundary!r}")
    wrap_c = boundary in ("CBC", "TBC")
    wrap_r = boundary == "TBC"
    edges = []

    def site(r, c):
        return r * cols + c

    for r in range(rows):
        for c in range(cols):
            # right
            if c + 1 < cols:
                edges.append((site(r, c), site(r, c + 1)))
            elif wrap_c and cols > 1:
                edges.append((site(r, c), site(r, 0)))
            # down
            if r + 1 < rows:
                edges.append((site(r, c), site(r + 1, c)))
            elif wrap_r and rows > 1:
                edges.append((site(r, c), site(0, c)))
            # down-right diagonal
            r2, c2 = r + 1, c + 1
            if r2 >= rows:
                if not wrap_r:
                    continue
                r2 = 0
            if c2 >= cols:
                if not wrap_c:
                    continue
                c2 = 0
            if rows > 1 or cols > 1:
                edges.append((site(r, c), site(r2, c2)))
    return edges


def diagonal_cut(rows: int, cols: int) -> BipartitionSpec:
    """Staircase r + c <= T on side A; T chosen to split the sites evenly."""
    n = rows * cols
    _check_even(n)
    half = n // 2
    for t in range(rows + cols - 1):
        a = [r * cols + c for r in range(rows) for c in range(cols) if r + c <= t]
        if len(a) == half:
            b = [q for q in range(n) if q not in set(a)]
            return BipartitionSpec(tuple(a), tuple(b))
        if len(a) > half:
            break
    raise InvalidInputError(f"no exact diagonal cut for a {rows}x{cols} lattice")


def build_tfim_2d_triangular(
    rows: int, cols: int, boundary: str, field: FieldSpec
) -> tuple[PauliHamiltonian, BipartitionSpec]:
    """Triangular-lattice TFIM with ZZ couplings and per-site X fields."""
    n = rows * cols
    _check_even(n)
    h = field.values(n)
    terms = [(1.0, _pair_zz(n, i, j)) for i, j in triangular_edges(rows, cols, boundary)]
    terms += [(h[i], PauliString.single(n, i, "X")) for i in range(n)]
    return PauliHamiltonian.build(n, terms), diagonal_cut(rows, cols)


def grid_edges(rows: int, cols: int) -> list[tuple[int, int]]:
    """Square-lattice edges (right and down) with periodic wrapping."""
    edges = []

    def site(r, c):
        return r * cols + c

    for r in range(rows):
        for c in range(cols):
            if cols > 1:
                edges.append((site(r, c), site(r, (c + 1) % cols)))
            if rows > 1:
                edges.append((site(r, c), site((r + 1) % rows, c)))
    return edges


def build_tv_model(rows: int, cols: int, t: float, v: float) -> PauliHamiltonian:
    """Spinless fermions on a periodic grid: hopping -t, repulsion V."""
    n = rows * cols
    _check_even(n)
    ferm = []
    for i, j in grid_edges(rows, cols):
        ferm.append((((i, 1), (j, 0)), -t))
        ferm.append((((j, 1), (i, 0)), -t))
        ferm.append((((i, 1), (i, 0), (j, 1), (j, 0)), v))
    return jordan_wigner(ferm, n)


# --- nuclear shell model ----------------------------------------------------


@dataclass(frozen=True)
class ShellModelData:
    """Single-particle energies and two-body matrix elements (MeV).

    Orbitals [0, n/2) are protons, [n/2, n) neutrons. The two-body term
    enters the Hamiltonian as H2 = 1/2 sum V_ijkl a+_i a+_j a_l a_k, so
    the file must list a complete Hermitian set of entries; neither
    antisymmetrization nor Hermitian completion is performed here.
    """

    orbital_count: int
    single_particle: tuple[float, ...]
    two_body: tuple[tuple[int, int, int, int, float], ...]
    core_label: str

    def __post_init__(self):
        if self.orbital_count < 2 or self.orbital_count % 2:
            raise InvalidInputError("orbital count must be even and >= 2")
        for i, j, k, l, v in self.two_body:
            if not all(0 <= q < self.orbital_count for q in (i, j, k, l)):
                raise InvalidInputError(f"orbital index out of range in tb {i} {j} {k} {l}")
            if not np.isfinite(v):
                raise InvalidInputError("two-body matrix elements must be finite")


def load_shell_model(path: str | Path) -> ShellModelData:
    """Parse an interaction file.

    Grammar (UTF-8, line-based, '#' starts a comment):
        orbitals <n> core <label>
        sp <i> <eps_i>
        tb <i> <j> <k> <l> <V>
    """
    orbitals = None
    core = ""
    sp: dict[int, float] = {}
    tb = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        try:
            if fields[0] == "orbitals":
                if len(fields) != 4 or fields[2] != "core":
                    raise ValueError("expected 'orbitals <n> core <label>'")
                orbitals = int(fields[1])
                core = fields[3]
            elif fields[0] == "sp":
                if len(fields) != 3:
                    raise ValueError("expected 'sp <i> <eps>'")
                sp[int(fields[1])] = float(fields[2])
            elif fields[0] == "tb":
                if len(fields) != 6:
                    raise ValueError("expected 'tb <i> <j> <k> <l> <V>'")
                tb.append(tuple(int(x) for x in fields[1:5]) + (float(fields[5]),))
            else:
                raise ValueError(f"unknown record {fields[0]!r}")
        except ValueError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
    if orbitals is None:
        raise ParseError(f"{path}: missing 'orbitals' header")
    for i in sp:
        if not 0 <= i < orbitals:
            raise ParseError(f"{path}: single-particle index {i} out of range")
    eps = tuple(sp.get(i, 0.0) for i in range(orbitals))
    return ShellModelData(orbitals, eps, tuple(tb), core)


def build_shell_hamiltonian(
    data: ShellModelData,
) -> tuple[PauliHamiltonian, BipartitionSpec]:
    """Second-quantized H -> qubit H; cut = proton block vs neutron block."""
    ferm = []
    for i, e in enumerate(data.single_particle):
        if e != 0.0:
            ferm.append((((i, 1), (i, 0)), e))
    for i, j, k, l, v in data.two_body:
        ferm.append((((i, 1), (j, 1), (l, 0), (k, 0)), 0.5 * v))
    h = jordan_wigner(ferm, data.orbital_count)
    return h, BipartitionSpec.half_split(data.orbital_count)
