"""Build the optional compiled kernel; fall back to pure Python when the
toolchain is unavailable."""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("nodalcount._kernels", ["src/nodalcount/_kernels.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3, "boundscheck": False,
                             "wraparound": False, "cdivision": True},
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write("nodalcount: compiled kernel skipped (%s); "
                     "pure-Python fallback will be used\n" % exc)

setup(ext_modules=ext_modules)
