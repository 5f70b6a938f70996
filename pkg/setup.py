"""Builds the optional compiled transport kernel; the package works without it."""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("PAINLEVE_LAB_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("painleve_lab._transport", ["src/painleve_lab/_transport.pyx"])],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
