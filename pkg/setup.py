"""Build script for the optional compiled sweep kernels.

The extension is a pure speed-up: if Cython or a C compiler is missing the
install proceeds and the package falls back to the numpy implementation of
the same kernels at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "normpar._kernels._sweeps_cy",
                ["src/normpar/_kernels/_sweeps_cy.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
