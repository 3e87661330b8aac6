"""Build script for the optional compiled kernel extension.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes retrieval and feature hashing faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dsx.kernels._cyk",
                ["src/dsx/kernels/_cyk.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
