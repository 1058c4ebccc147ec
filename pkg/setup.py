"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a pure-Python
implementation of the same kernels is selected at import time), so any
build failure here downgrades to a warning instead of aborting the
install.
"""

import warnings

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "cycfit._kernels",
                ["src/cycfit/_kernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    warnings.warn(f"Cython kernels not built, falling back to pure Python: {exc}")
    extensions = []

setup(ext_modules=extensions)
