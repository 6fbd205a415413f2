#!/usr/bin/env python3
"""Spectrum of the non-Hermitian oscillator H = omega(a'a + 1/2) + alpha(a^2 - a'^2).

Although H is not Hermitian for alpha != 0, its spectrum is real and
harmonic with spacing sqrt(omega^2 + 4 alpha^2).  This script builds the
truncated matrix, diagonalizes it, and shows the truncation convergence.
"""

import numpy as np

from pseudoherm import FockDim, ModelParams, build_hamiltonian, eigenvalues, pt_symmetry_defect

params = ModelParams(omega=3.0, alpha=2.0)
print(f"model: omega={params.omega}, alpha={params.alpha}")
print(f"expected spacing sqrt(omega^2 + 4 alpha^2) = {params.spectral_scale}")

H = build_hamiltonian(params, FockDim(128, 8))
print(f"\nPT-symmetry defect of H: {pt_symmetry_defect(H):.1e} (exactly zero)")

spec = eigenvalues(H)
exact = (np.arange(8) + 0.5) * params.spectral_scale
print(f"residual certificate: {spec.max_residual:.2e}\n")
print(" n   E_exact        E_numeric          abs err")
for n in range(8):
    e = spec.eigenvalues.real[n]
    print(f"{n:2d}   {exact[n]:<12.6f}   {e:<16.12f}   {abs(e - exact[n]):.2e}")

print("\ntruncation convergence of the lowest level:")
for n_levels in (32, 64, 128):
    spec_n = eigenvalues(build_hamiltonian(params, FockDim(n_levels, 8)))
    print(f"  N={n_levels:4d}: E_0 = {spec_n.eigenvalues.real[0]:.14f}")
