"""
Tensors of coherences for one and two qubits
============================================

A density matrix on n qubits is stored as 4^n real numbers, its components
along the products of rescaled Pauli matrices.
"""

import numpy as np

from cohtensor.coherence import (
    bloch_vector,
    density_to_tensor,
    pauli_basis_matrix,
    tensor_to_density,
    two_qubit_components_closed_form,
)

# The single-qubit basis is orthonormal under the trace inner product.
gram = np.array([[np.trace(pauli_basis_matrix(j) @ pauli_basis_matrix(k)).real
                  for k in range(4)] for j in range(4)])
print("tr(lambda_j lambda_k):\n", gram.round(12))

# A pure qubit sits on the sphere of radius 1/sqrt(2); the mixed one at its centre.
for name, rho in [("|0><0|", np.diag([1.0, 0.0])), ("I/2", np.eye(2) / 2)]:
    b = bloch_vector(density_to_tensor(rho))
    print(f"{name:7s} components {np.round(b.components, 6)}  radius {b.radius:.6f}")

# Two qubits: a random density, converted both ways.
rng = np.random.default_rng(0)
g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
rho = g @ g.conj().T
rho /= np.trace(rho).real
t = density_to_tensor(rho)
print("\ncomponents (rows: first qubit index):\n", t.round(4))
print("round-trip error:", np.max(np.abs(tensor_to_density(t) - rho)))

# The explicit matrix-entry formulas give the same sixteen numbers.
print("closed-form mismatch:", np.max(np.abs(two_qubit_components_closed_form(rho) - t)))

# Purity is just the squared length of the tensor.
print("sum t^2 =", np.sum(t**2), " tr rho^2 =", np.trace(rho @ rho).real)
