"""Build hook: compiles the optional kernel extension when Cython is present.

The package is fully functional without the extension; ringline.kernels falls
back to the numpy implementations in ringline._kernels_py.  Set
RINGLINE_NO_EXT=1 to skip the compile step entirely.
"""
import os

from setuptools import setup

ext_modules = []
include_dirs = []
if not os.environ.get("RINGLINE_NO_EXT"):
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/ringline/_kernels_cy.pyx"],
            language_level=3,
            compiler_directives={"boundscheck": False, "wraparound": False},
        )
        include_dirs = [numpy.get_include()]
    except Exception:
        ext_modules = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)
