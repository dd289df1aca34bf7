"""Build script: compiles the optional quadrature kernel extension.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so the extension is marked optional and a failed
compile does not fail the install.  Set FRACLIM_NO_EXTENSION=1 to skip the
build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FRACLIM_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "fraclim._quadcore",
                    ["src/fraclim/_quadcore.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
