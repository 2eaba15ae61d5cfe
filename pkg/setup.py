"""Build script: compiles the split-search kernel when Cython is available.

The package installs and works without the extension; `oerrec.quality.kernels`
falls back to the pure-Python kernel at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("oerrec.quality._split_fast", ["src/oerrec/quality/_split_fast.pyx"])],
        compiler_directives={"language_level": 3, "boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
