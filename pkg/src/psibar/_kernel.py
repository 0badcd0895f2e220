"""Backend selection for the sieve kernels.

The compiled extension is preferred when importable; set PSIBAR_PURE=1 to
force the interpreted twin (useful for benchmarking and for checking the
two against each other).
"""

from __future__ import annotations

import os

from . import _sieve_py

if os.environ.get("PSIBAR_PURE") == "1":
    _impl = _sieve_py
    BACKEND = "python"
else:
    try:
        from . import _sieve_fast as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _sieve_py
        BACKEND = "python"

build_d_spf = _impl.build_d_spf
lambda_trajectory_block = _impl.lambda_trajectory_block


def available_backends() -> tuple[str, ...]:
    """Names of importable kernel backends ('python' is always present)."""
    try:
        from . import _sieve_fast  # noqa: F401
    except ImportError:
        return ("python",)
    return ("cython", "python")


def get_kernels(backend: str):
    """(build_d_spf, lambda_trajectory_block) for an explicit backend name."""
    if backend == "python":
        return _sieve_py.build_d_spf, _sieve_py.lambda_trajectory_block
    if backend == "cython":
        from . import _sieve_fast

        return _sieve_fast.build_d_spf, _sieve_fast.lambda_trajectory_block
    raise ValueError(f"unknown backend {backend!r}")
