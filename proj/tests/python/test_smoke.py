"""Smoke tests for the compiled extension module.

Run against an installed package (`import bergmanlab`) or a build tree with
the extension directory on PYTHONPATH (`import _core`).
"""

import math

import pytest

try:
    import bergmanlab as bl
except ImportError:  # build-tree layout
    import _core as bl


def test_levi_and_signature():
    phi = bl.WeightFunction(
        2,
        [
            ([1, 0], [1, 0], 0.5 + 0j),
            ([0, 1], [0, 1], -0.5 + 0j),
        ],
    )
    levi = bl.levi_matrix(phi, [0j, 0j])
    sig = bl.signature(levi)
    assert (sig.n_minus, sig.n_plus) == (1, 1)
    assert not sig.degenerate

    spec = bl.subprincipal_spectrum(sig.eigenvalues, 1)
    assert spec[0] == pytest.approx(0.0, abs=1e-12)


def test_characteristic_variety():
    phi = bl.WeightFunction(1, [([1], [1], 0.5 + 0j)])
    pt = bl.sigma_point(phi, [1 + 0j])
    assert pt.zeta[0] == pytest.approx(-1j)
    assert bl.p0_eval(phi, pt) < 1e-14


def test_heat_phase_and_kernel():
    model = bl.build_model([1.0])
    limit = bl.phase_limit(model)
    assert limit.A[0, 0] == pytest.approx(1j)
    assert bl.evolve_phase(model, 2.0).dist(bl.flow_phase(model, 2.0)) < 1e-8

    lam = 0.5
    z, w = 0.7 + 0.2j, -0.1 + 0.4j
    got = bl.kernel_phase(bl.build_model([lam]), [z], [w])
    want = lam * (2 * z * w.conjugate() - abs(z) ** 2 - abs(w) ** 2)
    assert got == pytest.approx(want, abs=1e-10)

    rate, _ = bl.convergence_rate(model)
    assert rate > 0


def test_model_kernels():
    val = bl.fock_kernel_exact([0.5], 1, [0j], [0j])
    assert val.real == pytest.approx(1 / math.pi)

    harm, trivial, idx = bl.fock_harmonic_kernel([0.5, -0.5], 1, [0j, 0j], [0j, 0j], 1)
    assert not trivial
    assert idx == [1]
    assert harm.real == pytest.approx(1 / math.pi**2)

    quad = bl.QuadratureSpec(96, 16, 0.0)
    assert bl.p1_trace(10, quad) == pytest.approx(11.0, abs=1e-8)


def test_flag_dimensions():
    rs = bl.RootSystem.typeA(2)
    lam = bl.weight(rs, [2, -5])
    assert bl.index_of_weight(rs, lam) == 2
    dim, wall = bl.bott_dim(rs, lam, 2)
    assert (dim, wall) == (6, False)
    assert bl.weyl_dim(rs, bl.weight(rs, [1, 1])) == 8
    assert bl.monomial_count_su3_flag(1, 1) == 8
    twist, _ = bl.kx_minus_weight(rs, lam)
    assert list(twist.fund) == [0, 3]


def test_chern_identities():
    assert bl.todd_coefficients(4) == ["1", "1/2", "1/12", "0", "-1/720"]
    assert bl.verify_conjugate_identity([["1"], ["-2/3"]], 6) == "0"
    assert bl.rr_projective(1) == "k + 1"
