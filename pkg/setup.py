"""Build hook: compile the optional accelerator extension when possible.

The package is pure Python; qmetric._core is a Cython twin of
qmetric._core_py and is skipped silently when Cython or a C toolchain
is unavailable.  qmetric.backend picks whichever import works.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    if os.environ.get("QMETRIC_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/qmetric/_core.pyx"],
        language_level=3,
        compiler_directives={"boundscheck": False, "cdivision": True},
    )


class OptionalBuildExt(build_ext):
    """Never fail the install over the accelerator."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"qmetric: skipping compiled core ({exc!r})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"qmetric: skipping {ext.name} ({exc!r})")


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
