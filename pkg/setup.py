"""Build script: compiles the optional Cython sieve kernel.

The package is fully functional without the extension (a numpy/pure-Python
backend is selected at import time), so any build failure here downgrades
to a pure install instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "primorial_lab._fastsieve",
                ["src/primorial_lab/_fastsieve.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    import sys

    print(f"primorial-lab: building without compiled sieve kernel ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
