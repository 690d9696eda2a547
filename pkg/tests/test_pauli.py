import numpy as np
import pytest

from forgevqe.errors import DimensionError, InvalidInputError
from forgevqe.pauli import (
    BipartitionSpec,
    Bitstring,
    PauliHamiltonian,
    PauliString,
    bipartition,
    jordan_wigner,
    matrix_element,
    pauli_apply,
    permute_qubits,
    truncate_terms,
)


def random_hamiltonian(rng, width, n_terms, real=False):
    terms = []
    for _ in range(n_terms):
        label = "".join(rng.choice(list("IXYZ")) for _ in range(width))
        if real:
            # even number of Y letters keeps the matrix real
            if label.count("Y") % 2:
                label = label.replace("Y", "X", 1)
        terms.append((rng.uniform(-2, 2), PauliString.from_label(label)))
    return PauliHamiltonian.build(width, terms)


class TestBitstring:
    def test_packing_big_endian(self):
        s = Bitstring.from_bits("0110")
        assert s.value == 0b0110
        assert [s.bit(i) for i in range(4)] == [0, 1, 1, 0]
        assert s.to01() == "0110"

    def test_split_concat_roundtrip(self):
        s = Bitstring.from_bits("101100")
        a, b = s.split(3)
        assert a.to01() == "101" and b.to01() == "100"
        assert Bitstring.concat(a, b) == s

    def test_ordering_lexicographic(self):
        assert Bitstring.from_bits("0011") < Bitstring.from_bits("0100")
        vals = sorted(Bitstring(v, 3) for v in range(8))
        assert [s.value for s in vals] == list(range(8))

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            Bitstring(4, 2)
        with pytest.raises(InvalidInputError):
            Bitstring(0, 0)
        with pytest.raises(InvalidInputError):
            Bitstring(0, 33)


class TestPauliApply:
    def test_z_on_zero(self):
        ph, s = pauli_apply(PauliString.from_label("Z"), Bitstring.from_bits("0"))
        assert ph == 1 and s.to01() == "0"

    def test_x_flips(self):
        ph, s = pauli_apply(PauliString.from_label("X"), Bitstring.from_bits("0"))
        assert ph == 1 and s.to01() == "1"

    def test_y_on_one(self):
        ph, s = pauli_apply(PauliString.from_label("Y"), Bitstring.from_bits("1"))
        assert ph == -1j and s.to01() == "0"

    def test_width_mismatch(self):
        with pytest.raises(DimensionError):
            pauli_apply(PauliString.from_label("XX"), Bitstring.from_bits("0"))

    def test_involution_phase(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            label = "".join(rng.choice(list("IXYZ")) for _ in range(5))
            p = PauliString.from_label(label)
            s = Bitstring(int(rng.integers(0, 32)), 5)
            ph1, s1 = pauli_apply(p, s)
            ph2, s2 = pauli_apply(p, s1)
            assert s2 == s
            assert ph1 * ph2 == pytest.approx(1)

    def test_matches_dense_action(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            label = "".join(rng.choice(list("IXYZ")) for _ in range(3))
            phase = rng.choice([1, -1, 1j, -1j])
            p = PauliString.from_label(label, complex(phase))
            b = int(rng.integers(0, 8))
            ph, s2 = pauli_apply(p, Bitstring(b, 3))
            col = p.dense()[:, b]
            expect = np.zeros(8, dtype=complex)
            expect[s2.value] = ph
            np.testing.assert_allclose(col, expect, atol=1e-14)


class TestCompose:
    def test_xz_order(self):
        x = PauliString.from_label("X")
        z = PauliString.from_label("Z")
        np.testing.assert_allclose(x.compose(z).dense(), x.dense() @ z.dense())
        np.testing.assert_allclose(z.compose(x).dense(), z.dense() @ x.dense())

    def test_random_products(self):
        rng = np.random.default_rng(11)
        for _ in range(40):
            a = PauliString.from_label("".join(rng.choice(list("IXYZ")) for _ in range(3)))
            b = PauliString.from_label("".join(rng.choice(list("IXYZ")) for _ in range(3)))
            np.testing.assert_allclose(
                a.compose(b).dense(), a.dense() @ b.dense(), atol=1e-14
            )


class TestMatrixElement:
    def test_diagonal_z(self):
        h = PauliHamiltonian.build(1, [(1.0, PauliString.from_label("Z"))])
        b = Bitstring.from_bits("0")
        assert matrix_element(h, b, b) == 1

    def test_offdiagonal_x(self):
        h = PauliHamiltonian.build(1, [(1.0, PauliString.from_label("X"))])
        assert matrix_element(h, Bitstring.from_bits("1"), Bitstring.from_bits("0")) == 1

    def test_against_dense(self):
        rng = np.random.default_rng(5)
        h = random_hamiltonian(rng, 4, 10)
        mat = h.dense()
        for _ in range(25):
            i, j = rng.integers(0, 16, size=2)
            got = matrix_element(h, Bitstring(int(i), 4), Bitstring(int(j), 4))
            assert got == pytest.approx(mat[i, j], abs=1e-12)

    def test_hermiticity(self):
        rng = np.random.default_rng(9)
        h = random_hamiltonian(rng, 3, 8)
        for _ in range(20):
            i, j = rng.integers(0, 8, size=2)
            a = matrix_element(h, Bitstring(int(i), 3), Bitstring(int(j), 3))
            b = matrix_element(h, Bitstring(int(j), 3), Bitstring(int(i), 3))
            assert a == pytest.approx(np.conj(b), abs=1e-12)


class TestBipartition:
    def test_zz_splits(self):
        h = PauliHamiltonian.build(2, [(1.0, PauliString.from_label("ZZ"))])
        (term,) = bipartition(h, BipartitionSpec.half_split(2))
        assert term.coeff == 1.0
        assert term.opA.letters == "Z" and term.opB.letters == "Z"

    def test_x_identity_factor(self):
        h = PauliHamiltonian.build(2, [(1.0, PauliString.from_label("XI"))])
        (term,) = bipartition(h, BipartitionSpec.half_split(2))
        assert term.opA.letters == "X" and term.opB.letters == "I"

    def test_kron_reassembly_random(self):
        rng = np.random.default_rng(21)
        for width in (4, 6, 8):
            h = random_hamiltonian(rng, width, 12)
            qubits = list(range(width))
            rng.shuffle(qubits)
            half = width // 2
            spec = BipartitionSpec(tuple(qubits[:half]), tuple(qubits[half:]))
            parts = bipartition(h, spec)
            assert len(parts) == len(h.terms)
            dim = 1 << width
            rebuilt = np.zeros((dim, dim), dtype=complex)
            for t in parts:
                rebuilt += t.coeff * np.kron(t.opA.dense(), t.opB.dense())
            np.testing.assert_allclose(
                rebuilt, permute_qubits(h, spec.stacked_order).dense(), atol=1e-12
            )

    def test_spec_validation(self):
        with pytest.raises(InvalidInputError):
            BipartitionSpec((0, 1), (1, 2))
        with pytest.raises(InvalidInputError):
            BipartitionSpec((0,), (1, 2))


class TestTruncate:
    def _terms(self, coeffs):
        eye = PauliString.identity(1)
        zs = PauliString.from_label("Z")
        out = []
        for i, c in enumerate(coeffs):
            out.append((zs if i % 2 else eye, c))
        from forgevqe.pauli import BipartiteTerm

        return [BipartiteTerm(c, a, PauliString.identity(1)) for a, c in out]

    def test_keeps_largest_magnitudes(self):
        terms = self._terms([3.0, -5.0, 1.0])
        kept = truncate_terms(terms, 2)
        assert sorted(abs(t.coeff) for t in kept) == [3.0, 5.0]

    def test_full_k_is_identity(self):
        terms = self._terms([3.0, -5.0, 1.0])
        assert len(truncate_terms(terms, 3)) == 3
        assert len(truncate_terms(terms, 10)) == 3


class TestJordanWigner:
    def test_number_operator(self):
        h = jordan_wigner([(((0, 1), (0, 0)), 1.0)], 1)
        # n = (I - Z)/2
        np.testing.assert_allclose(h.dense(), np.diag([0.0, 1.0]), atol=1e-14)

    def test_hopping_pair(self):
        h = jordan_wigner([(((0, 1), (1, 0)), 1.0), (((1, 1), (0, 0)), 1.0)], 2)
        labels = {s.letters: c for c, s in h.terms}
        assert labels == pytest.approx({"XX": 0.5, "YY": 0.5})

    def test_anticommutation(self):
        # {a_i, a+_j} = delta_ij as dense matrices
        n = 3
        for i in range(n):
            for j in range(n):
                both = jordan_wigner(
                    [(((i, 0), (j, 1)), 1.0), (((j, 1), (i, 0)), 1.0)],
                    n,
                    hermit_tol=np.inf,
                )
                expect = np.eye(8) if i == j else np.zeros((8, 8))
                np.testing.assert_allclose(both.dense(), expect, atol=1e-12)

    def test_number_symmetry_preserved(self):
        rng = np.random.default_rng(17)
        n = 4
        terms = []
        for _ in range(6):
            i, j = rng.integers(0, n, size=2)
            c = float(rng.uniform(-1, 1))
            terms.append((((int(i), 1), (int(j), 0)), c))
            terms.append((((int(j), 1), (int(i), 0)), c))
        h = jordan_wigner(terms, n)
        num = jordan_wigner([(((q, 1), (q, 0)), 1.0) for q in range(n)], n)
        hm, nm = h.dense(), num.dense()
        np.testing.assert_allclose(hm @ nm, nm @ hm, atol=1e-10)

    def test_non_hermitian_rejected(self):
        with pytest.raises(InvalidInputError):
            jordan_wigner([(((0, 1), (1, 0)), 1.0)], 2)


class TestHamiltonianBuild:
    def test_merges_duplicates(self):
        z = PauliString.from_label("Z")
        h = PauliHamiltonian.build(1, [(1.0, z), (2.0, z)])
        assert len(h) == 1 and h.terms[0][0] == 3.0

    def test_drops_cancelled(self):
        z = PauliString.from_label("Z")
        h = PauliHamiltonian.build(1, [(1.0, z), (-1.0, z)])
        assert len(h) == 0

    def test_phase_folded(self):
        y = PauliString.from_label("Y", phase=-1 + 0j)
        h = PauliHamiltonian.build(1, [(2.0, y)])
        assert h.terms[0][0] == -2.0
        assert h.terms[0][1].phase == 1
