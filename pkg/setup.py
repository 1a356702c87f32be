"""Builds the optional compiled tally kernels.

The package works without the extension: `bellkit.backend` falls back to the
numpy kernels when the compiled module is missing.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bellkit._kernels",
                sources=["src/bellkit/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
        compiler_directives={"boundscheck": False, "wraparound": False},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
