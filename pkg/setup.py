"""Optional Cython build; the package falls back to pure Python without it."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SYMSUB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("symsub._ckernels", ["src/symsub/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
