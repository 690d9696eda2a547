"""Hot numeric kernels: statevector gates, Pauli expectations, H|v>.

Every kernel exists twice: a loop version compiled with numba (``*_jit``)
and a vectorized numpy version (``*_np``). The public names dispatch on
``_accel.USE_NUMBA``. All kernels share the global index convention:
basis index = bits packed big-endian, i.e. qubit 0 is the most
significant bit, so a gate on qubit ``q`` of an ``n``-qubit register
touches bit position ``n - 1 - q`` of the index.

State buffers are 1-D contiguous complex128 arrays mutated in place.
"""
import numpy as np

from ._accel import HAS_NUMBA, USE_NUMBA, njit

_M1 = 0x5555555555555555
_M2 = 0x3333333333333333
_M4 = 0x0F0F0F0F0F0F0F0F
_H01 = 0x0101010101010101


def _popcount64(x):
    x = x - ((x >> 1) & _M1)
    x = (x & _M2) + ((x >> 2) & _M2)
    x = (x + (x >> 4)) & _M4
    return (x * _H01) >> 56


# ---------------------------------------------------------------------------
# loop bodies (compiled with numba when available)
# ---------------------------------------------------------------------------

def _apply_1q(a, n, q, m00, m01, m10, m11):
    step = 1 << (n - 1 - q)
    for base in range(0, a.shape[0], 2 * step):
        for off in range(step):
            i0 = base + off
            i1 = i0 + step
            a0 = a[i0]
            a1 = a[i1]
            a[i0] = m00 * a0 + m01 * a1
            a[i1] = m10 * a0 + m11 * a1


def _apply_diag_1q(a, n, q, f0, f1):
    bit = 1 << (n - 1 - q)
    for i in range(a.shape[0]):
        if i & bit:
            a[i] *= f1
        else:
            a[i] *= f0


def _apply_cx(a, n, c, t):
    cbit = 1 << (n - 1 - c)
    tbit = 1 << (n - 1 - t)
    for i in range(a.shape[0]):
        if (i & cbit) and not (i & tbit):
            j = i | tbit
            tmp = a[i]
            a[i] = a[j]
            a[j] = tmp


def _apply_hop(a, n, q1, q2, m11, m12, m21, m22):
    # acts on the span of |01>, |10> of qubits (q1, q2); identity elsewhere
    b1 = 1 << (n - 1 - q1)
    b2 = 1 << (n - 1 - q2)
    for i in range(a.shape[0]):
        if (not (i & b1)) and (i & b2):
            j = (i | b1) & ~b2
            a01 = a[i]
            a10 = a[j]
            a[i] = m11 * a01 + m12 * a10
            a[j] = m21 * a01 + m22 * a10


def _apply_hop_outside(a, n, q1, q2, f):
    # scales the |00>, |11> components of qubits (q1, q2) by f
    b1 = 1 << (n - 1 - q1)
    b2 = 1 << (n - 1 - q2)
    for i in range(a.shape[0]):
        h1 = (i & b1) != 0
        h2 = (i & b2) != 0
        if h1 == h2:
            a[i] *= f


def _apply_g4(a, n, q0, q1, q2, q3, m11, m12, m21, m22, f):
    # rotates the span of |0011>, |1100> on (q0..q3); scales the rest by f
    b0 = 1 << (n - 1 - q0)
    b1 = 1 << (n - 1 - q1)
    b2 = 1 << (n - 1 - q2)
    b3 = 1 << (n - 1 - q3)
    mask = b0 | b1 | b2 | b3
    lo = b2 | b3
    hi = b0 | b1
    for i in range(a.shape[0]):
        sel = i & mask
        if sel == lo:
            j = i ^ mask
            v0011 = a[i]
            v1100 = a[j]
            a[i] = m11 * v0011 + m12 * v1100
            a[j] = m21 * v0011 + m22 * v1100
        elif sel != hi and f != 1.0 + 0.0j:
            a[i] *= f


def _expval_pauli(a, xmask, zmask, pref):
    acc = 0.0 + 0.0j
    for b in range(a.shape[0]):
        amp = a[b]
        if amp != 0.0:
            if _popcount64(b & zmask) & 1:
                acc -= np.conj(a[b ^ xmask]) * amp
            else:
                acc += np.conj(a[b ^ xmask]) * amp
    return pref * acc


def _expval_pauli_many(a, xmasks, zmasks, prefs, out):
    for t in range(xmasks.shape[0]):
        out[t] = _expval_pauli(a, xmasks[t], zmasks[t], prefs[t])


def _matvec_pauli_sum(v, out, xmasks, zmasks, prefs):
    for t in range(xmasks.shape[0]):
        x = xmasks[t]
        z = zmasks[t]
        w = prefs[t]
        for b in range(v.shape[0]):
            amp = v[b]
            if amp != 0.0:
                if _popcount64(b & z) & 1:
                    out[b ^ x] -= w * amp
                else:
                    out[b ^ x] += w * amp


def _matvec_pauli_sum_sector(v, out, basis, xmasks, zmasks, prefs):
    # basis: sorted int64 labels of the retained subspace; contributions
    # leaving the subspace are dropped (exact for symmetry-commuting H)
    nb = basis.shape[0]
    for t in range(xmasks.shape[0]):
        x = xmasks[t]
        z = zmasks[t]
        w = prefs[t]
        for i in range(nb):
            b = basis[i]
            amp = v[i]
            if amp == 0.0:
                continue
            b2 = b ^ x
            lo = 0
            hi = nb - 1
            j = -1
            while lo <= hi:
                mid = (lo + hi) >> 1
                bm = basis[mid]
                if bm == b2:
                    j = mid
                    break
                elif bm < b2:
                    lo = mid + 1
                else:
                    hi = mid - 1
            if j >= 0:
                if _popcount64(b & z) & 1:
                    out[j] -= w * amp
                else:
                    out[j] += w * amp


if HAS_NUMBA:
    _popcount64 = njit(cache=True)(_popcount64)
    _apply_1q_jit = njit(cache=True)(_apply_1q)
    _apply_diag_1q_jit = njit(cache=True)(_apply_diag_1q)
    _apply_cx_jit = njit(cache=True)(_apply_cx)
    _apply_hop_jit = njit(cache=True)(_apply_hop)
    _apply_hop_outside_jit = njit(cache=True)(_apply_hop_outside)
    _apply_g4_jit = njit(cache=True)(_apply_g4)
    _expval_pauli_jit = njit(cache=True)(_expval_pauli)
    _expval_pauli_many_jit = njit(cache=True)(_expval_pauli_many)
    _matvec_pauli_sum_jit = njit(cache=True)(_matvec_pauli_sum)
    _matvec_pauli_sum_sector_jit = njit(cache=True)(_matvec_pauli_sum_sector)


# ---------------------------------------------------------------------------
# vectorized numpy fallbacks
# ---------------------------------------------------------------------------

def _view(a, n, *qubits):
    v = a.reshape((2,) * n)
    if qubits:
        v = np.moveaxis(v, qubits, tuple(range(len(qubits))))
    return v


def _apply_1q_np(a, n, q, m00, m01, m10, m11):
    v = _view(a, n, q)
    a0 = v[0].copy()
    a1 = v[1]
    v[0] = m00 * a0 + m01 * a1
    v[1] = m10 * a0 + m11 * a1


def _apply_diag_1q_np(a, n, q, f0, f1):
    v = _view(a, n, q)
    v[0] *= f0
    v[1] *= f1


def _apply_cx_np(a, n, c, t):
    v = _view(a, n, c, t)
    tmp = v[1, 0].copy()
    v[1, 0] = v[1, 1]
    v[1, 1] = tmp


def _apply_hop_np(a, n, q1, q2, m11, m12, m21, m22):
    v = _view(a, n, q1, q2)
    a01 = v[0, 1].copy()
    a10 = v[1, 0]
    v[0, 1] = m11 * a01 + m12 * a10
    v[1, 0] = m21 * a01 + m22 * a10


def _apply_hop_outside_np(a, n, q1, q2, f):
    v = _view(a, n, q1, q2)
    v[0, 0] *= f
    v[1, 1] *= f


def _apply_g4_np(a, n, q0, q1, q2, q3, m11, m12, m21, m22, f):
    v = _view(a, n, q0, q1, q2, q3)
    lo = v[0, 0, 1, 1].copy()
    hi = v[1, 1, 0, 0].copy()
    if f != 1.0 + 0.0j:
        v *= f
    v[0, 0, 1, 1] = m11 * lo + m12 * hi
    v[1, 1, 0, 0] = m21 * lo + m22 * hi


def _signs(idx, zmask):
    par = np.bitwise_count(idx & zmask).astype(np.int64) & 1
    return 1.0 - 2.0 * par


def _expval_pauli_np(a, xmask, zmask, pref):
    idx = np.arange(a.shape[0], dtype=np.int64)
    return pref * np.sum(np.conj(a[idx ^ xmask]) * _signs(idx, zmask) * a)


def _expval_pauli_many_np(a, xmasks, zmasks, prefs, out):
    for t in range(xmasks.shape[0]):
        out[t] = _expval_pauli_np(a, xmasks[t], zmasks[t], prefs[t])


def _matvec_pauli_sum_np(v, out, xmasks, zmasks, prefs):
    idx = np.arange(v.shape[0], dtype=np.int64)
    for t in range(xmasks.shape[0]):
        # idx ^ xmask is a permutation, so fancy += never collides
        out[idx ^ xmasks[t]] += prefs[t] * _signs(idx, zmasks[t]) * v
    return out


def _matvec_pauli_sum_sector_np(v, out, basis, xmasks, zmasks, prefs):
    nb = basis.shape[0]
    for t in range(xmasks.shape[0]):
        b2 = basis ^ xmasks[t]
        pos = np.searchsorted(basis, b2)
        pos_c = np.minimum(pos, nb - 1)
        keep = basis[pos_c] == b2
        vals = prefs[t] * _signs(basis, zmasks[t]) * v
        out[pos_c[keep]] += vals[keep]
    return out


if USE_NUMBA:
    apply_1q = _apply_1q_jit
    apply_diag_1q = _apply_diag_1q_jit
    apply_cx = _apply_cx_jit
    apply_hop = _apply_hop_jit
    apply_hop_outside = _apply_hop_outside_jit
    apply_g4 = _apply_g4_jit
    expval_pauli = _expval_pauli_jit
    expval_pauli_many = _expval_pauli_many_jit
    matvec_pauli_sum = _matvec_pauli_sum_jit
    matvec_pauli_sum_sector = _matvec_pauli_sum_sector_jit
else:
    apply_1q = _apply_1q_np
    apply_diag_1q = _apply_diag_1q_np
    apply_cx = _apply_cx_np
    apply_hop = _apply_hop_np
    apply_hop_outside = _apply_hop_outside_np
    apply_g4 = _apply_g4_np
    expval_pauli = _expval_pauli_np
    expval_pauli_many = _expval_pauli_many_np
    matvec_pauli_sum = _matvec_pauli_sum_np
    matvec_pauli_sum_sector = _matvec_pauli_sum_sector_np
