#!/usr/bin/env python3
"""Solving the Hermitization problem: find the metric generator making
h = Theta H Theta^-1 Hermitian, then audit the closed-form claims.

The family of solutions is parametrized by z = 2 kappa / eps; a real
solution exists only for z > 2 alpha / omega.  At each solved point the
matrix oracle certifies h, the Bogoliubov transforms, and the metric.
"""

import numpy as np

from pseudoherm import (
    CERT_DIM,
    ModelParams,
    NoRealMetricError,
    bogoliubov_defect,
    build_metric_pair,
    hermitian_equivalent_at,
    hermiticity_condition_residual,
    hermiticity_defect,
    lambda_report,
    pseudo_hermiticity_defect,
    solve_eps,
)

params = ModelParams(omega=3.0, alpha=1.0)
print(f"model: omega={params.omega}, alpha={params.alpha}")
print(f"real metric exists for z > 2 alpha/omega = {2*params.alpha/params.omega:.4f}\n")

for z in (0.5, 1.0, 2.0, 3.0):
    try:
        mp = solve_eps(z, params)
    except NoRealMetricError as exc:
        print(f"z={z}: no real metric ({exc})\n")
        continue
    g = hermiticity_condition_residual(mp, params)
    h, coeffs = hermitian_equivalent_at(mp, params, CERT_DIM)
    theta, eta = build_metric_pair(mp, CERT_DIM)
    print(f"z={z}: eps={mp.eps_metric:.10f}, kappa={mp.kappa:.10f}, theta={mp.theta:.6f}")
    print(f"   condition residual      {abs(g):.2e}")
    print(f"   hermiticity defect of h {hermiticity_defect(h):.2e}")
    print(f"   ||eta H - H' eta||      {pseudo_hermiticity_defect(mp, params, CERT_DIM):.2e}")
    print(f"   Bogoliubov defects      {max(bogoliubov_defect(mp, CERT_DIM)):.2e}")
    print(f"   min eig(eta[16x16])     {np.linalg.eigvalsh(eta.entries[:16,:16]).min():.3e}")
    print(f"   f1={coeffs.f1:.6f}, f2={coeffs.f2:.6f}, f3={coeffs.f3:.6f}")
    print(f"   f1^2 - 4 f2^2 = {coeffs.f1**2 - 4*coeffs.f2**2:.10f} "
          f"(omega^2 + 4 alpha^2 = {params.spectral_scale**2})")
    rep = lambda_report(z, params, CERT_DIM)
    print(f"   h = lambda1 p^2 + lambda2 x^2: ({rep.lambda1_oracle:.6f}, {rep.lambda2_oracle:.6f}), "
          f"4 l1 l2 = {rep.product_oracle:.8f}\n")
