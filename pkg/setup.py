"""Build glue for the optional compiled polynomial kernel.

The package is pure Python except for ``birzeta._fastpoly``, a Cython
translation of ``birzeta._pypoly``.  If Cython or a C compiler is missing
the extension is skipped and the pure-Python kernel is used at runtime.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("birzeta._fastpoly", ["src/birzeta/_fastpoly.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
