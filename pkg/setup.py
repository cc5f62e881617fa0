import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SRSKIT_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "srskit._kernel._speedups",
                    sources=["src/srskit/_kernel/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: the pure-Python kernel is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
