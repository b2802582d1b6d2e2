import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("pvlik._kernels_cy", ["src/pvlik/_kernels_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    print("Cython not available; building without the compiled kernel "
          "(pure-Python fallback will be used).", file=sys.stderr)

setup(ext_modules=ext_modules)
