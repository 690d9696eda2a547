"""Entanglement-forged variational ground-state solver.

Schmidt-basis selection with an autoregressive neural sampler plus a
forged VQE over two half-system statevector circuits, verified against
an exact-diagonalization oracle.
"""

__version__ = "0.1.0"
