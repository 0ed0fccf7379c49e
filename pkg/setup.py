"""Builds the optional compiled kernel extension.

The package works without it (a pure-Python fallback is selected at import);
compiling just makes the hot grid kernels much faster. Set ARCSMITH_NO_EXT=1
to skip the extension entirely.
"""

import os

from setuptools import Extension, setup

PYX = "src/arcsmith/_fastkernels.pyx"

ext_modules = []
if os.environ.get("ARCSMITH_NO_EXT") != "1" and os.path.exists(PYX):
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "arcsmith._fastkernels",
            [PYX],
            extra_compile_args=["-O3"],
        )
        ext.optional = True  # a failed compile must not fail the install
        ext_modules = cythonize([ext], language_level=3)
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
