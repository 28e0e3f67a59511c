"""Builds the optional GMP-backed kernel extension.

The package works without it: ``nikishin_hp._backend`` falls back to the
pure-Python kernels when ``nikishin_hp._kernels`` cannot be imported. Set
``NIKISHIN_HP_NO_EXT=1`` to skip the build entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # no compiler, no Cython or no GMP
            print(f"warning: kernel extension not built ({exc}); using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using the pure-Python fallback")


def extensions():
    if os.environ.get("NIKISHIN_HP_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "nikishin_hp._kernels",
        ["src/nikishin_hp/_kernels.pyx"],
        libraries=["gmp"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], language_level=3, quiet=True)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
