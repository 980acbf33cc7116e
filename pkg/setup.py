"""Build the optional compiled PBW kernel.

The package works without it (a pure-Python kernel is selected at import),
so a missing compiler or Cython only skips the extension.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("jtwist._ckernel", ["src/jtwist/_ckernel.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:  # pragma: no cover
    pass

setup(ext_modules=ext_modules)
