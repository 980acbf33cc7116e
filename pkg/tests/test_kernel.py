import os
import subprocess
import sys
from pathlib import Path

import pytest

from jtwist import _pykernel, kernel
from jtwist.twist import canonical_twist

ROOT = Path(__file__).resolve().parents[1]


def _backend(env_value):
    env = dict(os.environ, JTWIST_PURE=env_value)
    proc = subprocess.run([sys.executable, "-c", "import jtwist; print(jtwist.BACKEND)"],
                          capture_output=True, text=True, env=env, check=True)
    return proc.stdout.strip()


def test_pure_override():
    assert _backend("1") == "python"


def test_default_backend_is_compiled_when_built():
    expected = "cython" if kernel.BACKEND == "cython" else "python"
    assert _backend("") == expected


def test_purepbw_is_always_the_python_kernel():
    assert kernel.PurePBWKernel is _pykernel.PBWKernel


@pytest.mark.skipif(kernel.BACKEND != "cython", reason="compiled kernel not built")
@pytest.mark.parametrize("N", [3, 4])
def test_graded_products_agree(N):
    tw = canonical_twist(N, 3)
    g, F = tw.algebra, tw.F
    lower = {(i, j): tuple(sorted(v.items())) for (i, j), v in g._br.items() if i > j}
    a = _pykernel.PBWKernel(g.dim, lower).graded_mul(F.layers, F.layers, 3, 2)
    b = kernel.PBWKernel(g.dim, lower).graded_mul(F.layers, F.layers, 3, 2)
    assert a == b


def test_pure_backend_full_check():
    code = ("from jtwist.twist import canonical_twist, check_twist_equation;"
            "import jtwist;"
            "assert jtwist.BACKEND == 'python';"
            "assert check_twist_equation(canonical_twist(3, 3).F).is_zero()")
    env = dict(os.environ, JTWIST_PURE="1")
    subprocess.run([sys.executable, "-c", code], env=env, check=True)


def test_benchmark_script_runs():
    proc = subprocess.run([sys.executable, str(ROOT / "benchmarks" / "bench_kernel.py"),
                           "--n", "3", "--order", "2", "--repeat", "1"],
                          capture_output=True, text=True, check=True)
    assert "python" in proc.stdout
