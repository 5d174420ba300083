"""Build hook: compile the table-scan kernels when Cython and a C compiler exist.

The package is fully functional without the extension; the pure-Python kernels
are selected at import when the compiled module is absent.  Set
EXCHANGE_KIT_NO_EXT=1 to skip the compile step entirely.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Let the install succeed even if the extension cannot be built."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc}); pure-Python fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); pure-Python fallback will be used")


ext_modules = []
if os.environ.get("EXCHANGE_KIT_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/exchange_kit/_kernels/_fast.pyx"],
            language_level="3",
        )
    except ImportError:
        print("warning: Cython not available; pure-Python kernels will be used")

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
