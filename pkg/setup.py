"""Build script: compiles the optional enumeration kernel.

The package works without the extension (a pure-Python fallback is
selected at import time), so any Cython or compiler failure downgrades
to a plain build instead of aborting the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    import numpy as np
    from setuptools import Extension

    ext = Extension(
        "latsec._kernels._fast",
        sources=["src/latsec/_kernels/_fast.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    ext_modules = cythonize([ext], language_level=3)
except Exception as exc:  # pragma: no cover - depends on build host
    import sys

    print(f"skipping compiled kernel ({exc}); pure-Python fallback will be used",
          file=sys.stderr)

setup(ext_modules=ext_modules)
