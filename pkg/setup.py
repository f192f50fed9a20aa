"""Build script: compiles the Cython kernel when possible.

The package works without the extension (``cyclecover._kernel_py`` is a
drop-in fallback selected at import time), so any build failure here only
costs speed, not functionality.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/cyclecover/_kernel_c.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"cyclecover: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
