"""Build hook for the optional compiled word kernel.

The package is fully functional without the extension: pushcalc.words falls
back to the pure-Python twin at import time if pushcalc._speedups is absent.
Set PUSHCALC_SKIP_EXT=1 to skip building it.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PUSHCALC_SKIP_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "pushcalc._speedups",
                    ["src/pushcalc/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
