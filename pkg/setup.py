"""Builds the optional compiled kernel extension.

The package works without it (a numpy fallback is selected at import time),
so a missing Cython or C compiler only costs speed, never functionality.
"""

from setuptools import setup

ext_modules = []
try:
    from setuptools import Extension
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("glyphkit.kernels._ck", ["src/glyphkit/kernels/_ck.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
