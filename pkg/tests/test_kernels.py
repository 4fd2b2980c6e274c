import os
import subprocess
import sys

import numpy as np
import pytest

from blochlab import kernels

BACKENDS = kernels.available_backends()


def _data(seed, n=300, m=12):
    rng = np.random.default_rng(seed)
    r = 0.98 * np.sqrt(rng.uniform(size=n)); t = rng.uniform(-np.pi, np.pi, size=n)
    zs = r * np.exp(1j * t)
    a = 0.95 * np.sqrt(rng.uniform(size=m)) * np.exp(1j * rng.uniform(-np.pi, np.pi, size=m))
    w = rng.normal(size=m) + 1j * rng.normal(size=m)
    return w, a, zs


@pytest.mark.parametrize("name", BACKENDS)
def test_backend_against_direct_formulas(name):
    k = kernels.get_backend(name)
    w, a, zs = _data(1)
    ref = sum(wk * (ak - zs) / (1 - np.conj(ak) * zs) for wk, ak in zip(w, a))
    np.testing.assert_allclose(k.mobius_sum(w, a, zs), ref, rtol=1e-12, atol=1e-12)
    ref = sum(wk / (1 - np.conj(ak) * zs) ** 3 for wk, ak in zip(w, a))
    np.testing.assert_allclose(k.pole_sum(w, a, zs, 3), ref, rtol=1e-11)
    a0 = np.append(a, 0.0)
    ref = zs * np.prod([(abs(ak) / ak) * (ak - zs) / (1 - np.conj(ak) * zs) for ak in a], axis=0)
    np.testing.assert_allclose(k.blaschke_eval(a0, zs), ref, rtol=1e-12, atol=1e-15)
    sl = k.separation_logs(np.append(a, a[0]))
    assert sl[0] == -np.inf and np.isfinite(sl[1])


@pytest.mark.skipif("compiled" not in BACKENDS, reason="extension not built")
def test_backends_agree():
    c, p = kernels.get_backend("compiled"), kernels.get_backend("python")
    w, a, zs = _data(2, n=20_000)
    for fn, args in (("mobius_sum", (w, a, zs)), ("pole_sum", (w, a, zs, 2)),
                     ("blaschke_eval", (a, zs)), ("separation_logs", (a,))):
        np.testing.assert_allclose(getattr(c, fn)(*args), getattr(p, fn)(*args), rtol=1e-13, atol=1e-14)


def test_pure_env_selects_fallback():
    env = dict(os.environ, BLOCHLAB_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from blochlab import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "python"
