"""Backend selection for the sieve kernels.

The compiled Cython extension is preferred; the numpy/pure-Python fallback is
used when it is missing or when ``PRIMORIAL_LAB_PURE=1`` is set (the benchmark
and the test suite use the override to exercise both paths).
"""

from __future__ import annotations

import os

if os.environ.get("PRIMORIAL_LAB_PURE") == "1":
    from primorial_lab import _pysieve as _impl

    BACKEND = "python"
else:
    try:
        from primorial_lab import _fastsieve as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build environment
        from primorial_lab import _pysieve as _impl  # type: ignore[no-redef]

        BACKEND = "python"

sieve_primes = _impl.sieve_primes
log_prefix = _impl.log_prefix
