"""Builds the optional compiled distance kernels.

The package is fully functional without the extension; ``codeplane.kernels``
falls back to the numpy implementation when ``codeplane._distkern`` is not
importable. Set CODEPLANE_NO_EXT=1 to skip the build entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CODEPLANE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "codeplane._distkern",
                    ["src/codeplane/_distkern.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            language_level="3",
        )
    except ImportError:
        c_source = os.path.join("src", "codeplane", "_distkern.c")
        if os.path.exists(c_source):
            ext_modules = [Extension("codeplane._distkern", [c_source], optional=True)]

setup(ext_modules=ext_modules)
