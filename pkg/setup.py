"""Build script: compiles the hot-kernel extension, falling back to pure Python.

The package is fully functional without the extension (dustlab._pycore is a
line-for-line twin of dustlab._core); the extension only provides speed.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    import os
    if not os.path.exists("src/dustlab/_core.pyx"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("dustlab: Cython unavailable, installing with pure-Python kernels",
              file=sys.stderr)
        return []
    from setuptools import Extension

    ext = Extension(
        "dustlab._core",
        ["src/dustlab/_core.pyx"],
        # -ffp-contract=off: no FMA contraction, so kernel float semantics
        # match the pure-Python twin bit for bit.
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


class optional_build_ext(build_ext):
    """Let a failed extension build degrade to the pure-Python kernels."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"dustlab: extension build failed ({exc}); "
                  "pure-Python kernels will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"dustlab: building {ext.name} failed ({exc}); "
                  "pure-Python kernels will be used", file=sys.stderr)


setup(ext_modules=_extensions(), cmdclass={"build_ext": optional_build_ext})
