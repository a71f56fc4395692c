"""Build script: compiles the optional scoring-kernel extension.

The package is fully functional without the compiled extension (a pure
Python fallback is selected at import time), so a failed compile only
degrades speed.  Set SPARCNET_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that downgrades compile failures to a warning."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing / broken toolchain
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "WARNING: building the sparcnet._kernels._speedups extension "
            f"failed ({exc!r}); falling back to the pure Python kernels."
        )


ext_modules = []
cmdclass = {}
if not os.environ.get("SPARCNET_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sparcnet._kernels._speedups",
                    ["src/sparcnet/_kernels/_speedups.pyx"],
                )
            ],
            language_level="3",
        )
        cmdclass = {"build_ext": optional_build_ext}
    except ImportError:
        print("WARNING: Cython not available; installing pure Python kernels only.")

setup(ext_modules=ext_modules, cmdclass=cmdclass)
