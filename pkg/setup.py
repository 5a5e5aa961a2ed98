"""Build script: compiles the optional float-mode transport kernel.

The compiled kernel is a speedup only; every code path has a pure-Python
twin, so the build degrades gracefully when Cython or a C compiler is
missing (or when MAXWASS_NO_EXT is set).
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MAXWASS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("maxwass._netsimplex", ["src/maxwass/_netsimplex.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
