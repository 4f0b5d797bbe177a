"""Build script for the optional compiled kernels.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any compiler or Cython failure downgrades the
install to pure Python instead of aborting it.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # compile/link error
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the compiled kernels failed ({exc}); "
            "falling back to the pure-Python kernels.",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("WARNING: Cython not available; installing pure-Python kernels only.",
              file=sys.stderr)
        return []
    ext = Extension(
        "nodal_morse._kernels_cy",
        ["src/nodal_morse/_kernels_cy.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
