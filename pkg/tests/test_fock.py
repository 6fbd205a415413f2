import numpy as np
import pytest
from scipy.linalg import expm as scipy_expm

import pseudoherm as ph
from pseudoherm.fock import FockDim, FockOperator, ModelParams

DIM16 = FockDim(16, 4)
DIM64 = FockDim(64, 8)


def test_ladder_matrix_elements():
    a, ad = ph.ladder_ops(DIM16)
    for n in range(15):
        assert a.entries[n, n + 1] == pytest.approx(np.sqrt(n + 1.0), abs=0)
    # top-left 3x3 block equals the hand-built N=3 matrix
    expected = np.array([[0, 1, 0], [0, 0, np.sqrt(2)], [0, 0, 0]])
    assert np.abs(a.entries[:3, :3] - expected).max() == 0.0
    assert np.abs(ad.entries - a.entries.conj().T).max() == 0.0


def test_commutator_interior_and_edge():
    a, ad = ph.ladder_ops(DIM64)
    comm = a.entries @ ad.entries - ad.entries @ a.entries
    k = 64 - DIM64.buffer
    assert np.linalg.norm((comm - np.eye(64))[:k, :k]) < 1e-12
    # truncation artifact: bottom-right entry is 1 - N
    assert comm[-1, -1] == pytest.approx(1 - 64, abs=1e-11)
    # the same artifact computed by hand at N = 2
    a2 = np.array([[0.0, 1.0], [0.0, 0.0]])
    comm2 = a2 @ a2.T - a2.T @ a2
    assert comm2[-1, -1] == -1.0


def test_canonical_pair():
    x, p = ph.canonical_pair(2.0, DIM16)
    a, ad = ph.ladder_ops(DIM16)
    assert np.abs(x.entries - (a.entries + ad.entries) / 2.0).max() < 1e-15
    comm = x.entries @ p.entries - p.entries @ x.entries
    assert np.abs((comm - 1j * np.eye(16))[:12, :12]).max() < 1e-13
    # reassembly is exact at any omega
    for om in (1.0, 3.0):
        x, p = ph.canonical_pair(om, DIM16)
        re = np.sqrt(om / 2) * x.entries + 1j * p.entries / np.sqrt(2 * om)
        assert np.abs(re - a.entries).max() < 1e-14
    x, p = ph.canonical_pair(3.0, DIM64)
    assert ph.hermiticity_defect(x) == 0.0
    assert ph.hermiticity_defect(p) == 0.0
    with pytest.raises(ph.InvalidParameterError):
        ph.canonical_pair(-1.0, DIM16)


def test_hamiltonian_assembly():
    H = ph.build_hamiltonian(ModelParams(1.0, 0.5), DIM16)
    expected = np.array(
        [[0.5, 0, np.sqrt(2) * 0.5], [0, 1.5, 0], [-np.sqrt(2) * 0.5, 0, 2.5]]
    )
    assert np.abs(H.entries[:3, :3] - expected).max() < 1e-15
    assert np.abs(H.entries.imag).max() == 0.0
    # alpha = 0: harmonic diagonal
    H0 = ph.build_hamiltonian(ModelParams(2.0, 0.0), DIM16)
    assert np.abs(H0.entries - np.diag(2.0 * (np.arange(16) + 0.5))).max() < 1e-14
    # anti-Hermitian part present for alpha != 0
    H2 = ph.build_hamiltonian(ModelParams(3.0, 2.0), FockDim(128, 8))
    assert ph.hermiticity_defect(H2) > 0.0


def test_build_T():
    T0 = ph.build_T(0.7, 0.0, DIM16)
    assert np.abs(T0.entries - np.diag(0.7 * np.arange(16))).max() < 1e-14
    T1 = ph.build_T(0.0, 1.0, DIM16)
    assert np.abs(T1.entries + T1.entries.T).max() < 1e-15
    assert np.abs(T1.entries.imag).max() == 0.0
    # theta for the z = 1 style pair (kappa = eps/2)
    mp = ph.metric_params(0.81052, 0.40526)
    assert mp.theta == pytest.approx(0.81052 * np.sqrt(2.0), rel=1e-12)


class TestMatExp:
    def test_zero_and_diagonal(self):
        z = FockOperator(DIM16, np.zeros((16, 16)))
        assert np.abs(ph.mat_exp(z).entries - np.eye(16)).max() == 0.0
        d = np.linspace(-3.0, 2.0, 16)
        md = FockOperator(DIM16, np.diag(d))
        out = ph.mat_exp(md).entries
        assert np.abs(np.diag(out) - np.exp(d)).max() < 1e-13
        assert np.abs(out - np.diag(np.diag(out))).max() == 0.0

    def test_nilpotent_series_terminates(self):
        a, _ = ph.ladder_ops(DIM16)
        out = ph.mat_exp(a).entries
        # short paths fix the top-left block: I + a + a^2/2 there
        a3 = a.entries[:3, :3]
        expected = np.eye(3) + a3 + a3 @ a3 / 2.0
        assert np.abs(out[:3, :3] - expected).max() < 1e-14

    def test_inverse_pairing(self):
        # module invariant, on the generator structure the module uses
        for eps, kap in ((0.3, 0.1), (0.81, 0.405), (-0.6, 0.9)):
            t = ph.build_T(eps, kap, DIM16)
            norm = np.linalg.norm(t.entries, 1)
            if norm > 20.0:
                t = FockOperator(DIM16, t.entries * (20.0 / norm))
            prod = ph.mat_exp(t).entries @ ph.mat_exp(FockOperator(DIM16, -t.entries)).entries
            assert np.linalg.norm((prod - np.eye(16))[:12, :12]) < 1e-10

    def test_inverse_pairing_dense(self):
        rng = np.random.default_rng(7)
        m = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        m *= 20.0 / np.linalg.norm(m, 2)
        prod = ph.mat_exp(FockOperator(DIM16, m)).entries @ ph.mat_exp(
            FockOperator(DIM16, -m)
        ).entries
        # generic dense non-normal input: squaring amplification dominates
        # (scipy's expm shows the same floor on this input)
        assert np.linalg.norm((prod - np.eye(16))[:12, :12]) < 1e-6

    def test_against_scipy(self):
        rng = np.random.default_rng(11)
        m = rng.normal(size=(24, 24)) + 1j * rng.normal(size=(24, 24))
        mine = ph.mat_exp(FockOperator(FockDim(24, 4), m)).entries
        ref = scipy_expm(m)
        assert np.linalg.norm(mine - ref) / np.linalg.norm(ref) < 1e-12

    def test_overflow(self):
        with pytest.raises(ph.NumericOverflowError):
            ph.mat_exp(FockOperator(DIM16, np.diag(np.full(16, 1000.0))))


class TestSimilarityTransform:
    def test_identity(self):
        H = ph.build_hamiltonian(ModelParams(3.0, 1.0), DIM16)
        eye = FockOperator(DIM16, np.eye(16))
        out = ph.similarity_transform(eye, H)
        assert np.abs(out.entries - H.entries).max() < 1e-14

    def test_diagonal_conjugation(self):
        d = np.concatenate([[2.0], np.ones(15)])
        s = FockOperator(DIM16, np.diag(d))
        a, _ = ph.ladder_ops(DIM16)
        out = ph.similarity_transform(s, a)
        expected = np.diag(d) @ a.entries @ np.diag(1.0 / d)
        assert np.abs(out.entries - expected).max() < 1e-13

    def test_spectrum_preserved(self):
        rng = np.random.default_rng(3)
        s = FockOperator(DIM16, np.eye(16) + 0.3 * rng.normal(size=(16, 16)))
        H = ph.build_hamiltonian(ModelParams(3.0, 1.0), DIM16)
        out = ph.similarity_transform(s, H)
        w1 = np.sort(np.linalg.eigvals(H.entries).real)
        w2 = np.sort(np.linalg.eigvals(out.entries).real)
        assert np.abs(w1 - w2).max() < 1e-9

    def test_singular_raises(self):
        s = FockOperator(DIM16, np.zeros((16, 16)))
        H = ph.build_hamiltonian(ModelParams(3.0, 1.0), DIM16)
        with pytest.raises(ph.SingularTransformError):
            ph.similarity_transform(s, H)


def test_hermiticity_defect_bounds():
    H0 = ph.build_hamiltonian(ModelParams(3.0, 0.0), DIM64)
    assert ph.hermiticity_defect(H0) == 0.0
    a, ad = ph.ladder_ops(DIM64)
    anti = FockOperator(DIM64, a.entries @ a.entries - ad.entries @ ad.entries)
    assert ph.hermiticity_defect(anti) == pytest.approx(1.0, abs=1e-14)
    mixed = ph.build_hamiltonian(ModelParams(3.0, 2.0), DIM64)
    assert 0.0 < ph.hermiticity_defect(mixed) < 1.0
    with pytest.raises(ph.UndefinedDefectError):
        ph.hermiticity_defect(FockOperator(DIM16, np.zeros((16, 16))))


class TestEigenvalues:
    def test_spectrum_formula(self):
        H = ph.build_hamiltonian(ModelParams(3.0, 2.0), FockDim(128, 8))
        spec = ph.eigenvalues(H)
        exact = (np.arange(8) + 0.5) * 5.0
        got = spec.eigenvalues.real[:8]
        assert np.abs(got - exact).max() / exact.max() < 1e-6
        assert (np.abs(got - exact) / exact).max() < 1e-6
        assert spec.max_residual < 1e-9

    def test_harmonic_exact(self):
        H = ph.build_hamiltonian(ModelParams(2.5, 0.0), DIM64)
        spec = ph.eigenvalues(H, hermitian_hint=True)
        exact = 2.5 * (np.arange(64) + 0.5)
        assert np.abs(spec.eigenvalues.real - exact).max() < 1e-12

    def test_convergence_omega3_alpha1(self):
        # module invariant: lowest 8 move < 1e-8 between N = 64 and 128
        lows = {}
        for n in (64, 128):
            H = ph.build_hamiltonian(ModelParams(3.0, 1.0), FockDim(n, 8))
            lows[n] = ph.eigenvalues(H).eigenvalues.real[:8]
        assert np.abs(lows[64] - lows[128]).max() < 1e-8

    def test_h_matches_H_spectrum(self):
        # similarity invariance oracle: certified corner coefficients,
        # assembled at full dimension for the spectral comparison
        from pseudoherm.metric import coefficient_model

        h, coeffs = ph.hermitian_equivalent(1.0, ModelParams(3.0, 1.0), ph.CERT_DIM)
        model = coefficient_model(coeffs, FockDim(128, 8))
        spec = ph.eigenvalues(model, hermitian_hint=True)
        exact = (np.arange(8) + 0.5) * np.sqrt(13.0)
        assert (np.abs(spec.eigenvalues.real[:8] - exact) / exact).max() < 1e-6


def test_pt_symmetry_defect():
    for om in (1.0, 2.0, 3.0):
        for al in (-1.0, 0.5, 2.0):
            H = ph.build_hamiltonian(ModelParams(om, al), DIM64)
            assert ph.pt_symmetry_defect(H) == 0.0
    T = ph.build_T(0.7, 0.3, DIM64)
    assert ph.pt_symmetry_defect(T) == 0.0
    a, _ = ph.ladder_ops(DIM64)
    assert ph.pt_symmetry_defect(a) > 0.0


def test_fockdim_validation():
    with pytest.raises(ph.InvalidParameterError):
        FockDim(8, 2)
    with pytest.raises(ph.InvalidParameterError):
        FockDim(32, 16)
    with pytest.raises(ph.InvalidParameterError):
        ModelParams(0.0, 1.0)
