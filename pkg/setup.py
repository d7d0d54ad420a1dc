"""Build script: compiles the Cython evaluation kernel when possible.

The package works without the compiled extension; wavesym.evaluate falls
back to the pure-Python kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/wavesym/_evalkernel.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"wavesym: skipping Cython kernel ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)
