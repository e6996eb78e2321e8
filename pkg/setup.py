"""Build script: compiles the optional scan kernel extension.

The package is pure Python plus one optional Cython extension holding the
hot grid-evaluation loop. If Cython or a C compiler is unavailable the
install degrades to the pure-Python kernel selected at import time.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, fall back to pure Python otherwise."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            warnings.warn(f"scan kernel extension not built ({exc}); "
                          "falling back to the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"building {ext.name} failed ({exc}); "
                          "falling back to the pure-Python kernel")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension
    # The compiled kernel must perform the exact same IEEE operations as the
    # pure-Python twin so both give bit-identical scans: no FMA contraction,
    # and no fusing of sin/cos pairs into glibc sincos (which differs from
    # separate sin/cos by 1 ulp on some arguments).
    flags = ["-O3", "-ffp-contract=off",
             "-fno-builtin-sin", "-fno-builtin-cos", "-fno-builtin-sincos"]
    return cythonize(
        [Extension("spinsqueeze._scan_kernel",
                   ["src/spinsqueeze/_scan_kernel.pyx"],
                   extra_compile_args=flags)],
        language_level=3,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
