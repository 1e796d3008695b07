import math

import numpy as np
import pytest

import swiptdaf as sd


def test_default_constants():
    c = sd.derive_constants(sd.SystemParams())
    assert c.k1 == pytest.approx(17.5)
    assert c.k2 == pytest.approx(2.625)
    assert c.k3 == pytest.approx(5.75)
    assert c.gbar0 == pytest.approx(10.0)
    assert sd.two_hop_snr(c, 1.0, 1.0) == pytest.approx(17.5 / (5.75 + 2.625))


def test_keyword_params():
    p = sd.params(p0=100.0, d1=1.5)
    assert p.p0 == 100.0 and p.d1 == 1.5 and p.theta == 0.5
    with pytest.raises(TypeError):
        sd.SystemParams(nonsense=1.0)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        sd.derive_constants(sd.params(eta=-1.0))
    with pytest.raises(sd.DegenerateConfigError):
        sd.derive_constants(sd.params(theta=0.0))
    with pytest.raises(sd.SwiptError):
        sd.derive_constants(sd.params(theta=1.0))


def test_pdf_is_vectorized():
    c = sd.derive_constants(sd.SystemParams())
    z = np.array([0.1, 1.0, 10.0])
    f = sd.pdf_two_hop_exact(c, z)
    assert f.shape == (3,)
    assert f[1] == pytest.approx(0.177031390287, rel=1e-8)
    assert np.all(np.diff(sd.pdf_two_hop_asymptotic(c, z)) < 0)


def test_aber_values():
    c = sd.derive_constants(sd.SystemParams())
    assert sd.aber_direct(c).value == pytest.approx(1 / 22)
    th = sd.aber(c, sd.Scheme.TH)
    closed = sd.aber(c, sd.Scheme.TH, sd.Method.ASYMPTOTIC_CLOSED)
    quad = sd.aber(c, sd.Scheme.TH, sd.Method.ASYMPTOTIC_QUAD)
    assert 0 < th.value <= 0.5
    assert closed.value == pytest.approx(quad.value, rel=1e-6)
    assert float(sd.aber_lc_exact(c)) < float(th)


def test_meijer_g():
    assert sd.meijer_g(1, 0, [], [0.0], 2.0) == pytest.approx(math.exp(-2.0), rel=1e-12)
    up = sd.meijer_g_signed(3, 1, [0.0], [-0.5, 0.0, 0.0], -0.3, upper=True)
    lo = sd.meijer_g_signed(3, 1, [0.0], [-0.5, 0.0, 0.0], -0.3, upper=False)
    assert up == pytest.approx(lo.conjugate(), rel=1e-9)
    with pytest.raises(sd.UnsupportedError):
        sd.meijer_g(2, 2, [0.0, 0.0], [0.0, 0.0], 1.0)


def test_monte_carlo_is_seeded():
    cfg = sd.McConfig()
    cfg.frames = 5000
    cfg.symbols_per_frame = 2
    cfg.seed = 11
    a = sd.run_monte_carlo_all(cfg)
    b = sd.run_monte_carlo_all(cfg)
    assert [r.errors for r in a] == [r.errors for r in b]
    assert abs(a[2].ber - 1 / 22) < 4 * a[2].ci95_halfwidth
    cfg.eh_mode = sd.EhMode.CON
    assert sd.baseline_variants(cfg).bits == 5000


def test_sampler():
    c = sd.derive_constants(sd.SystemParams())
    s = sd.sample_two_hop_snr(c, 1000, 3)
    assert isinstance(s, np.ndarray) and s.shape == (1000,)
    assert np.array_equal(s, sd.sample_two_hop_snr(c, 1000, 3, threads=1))
    assert np.all(s > 0)
