"""Builds the optional compiled kernel extension.

The package works without it (a NumPy fallback is selected at import time).
Set INFOAGREE_SKIP_EXT=1 to force a pure-Python build; the build also falls
back automatically when Cython is not installed.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("INFOAGREE_SKIP_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("infoagree._ckernels", ["src/infoagree/_ckernels.pyx"])],
            language_level="3",
        )

setup(ext_modules=ext_modules)
