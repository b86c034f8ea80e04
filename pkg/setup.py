"""Build script: compiles the optional mod-p matrix kernels.

The package works without the extension (a pure-Python fallback is
selected at import time); set LOCALZETA_NO_EXT=1 to skip compilation.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("LOCALZETA_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            "src/localzeta/_kernels.pyx",
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
