"""Build hook for the optional compiled kernels.

Without Cython or a C compiler the package still installs and runs on
the pure-Python kernels.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("pvifam.exactalg._kernels", ["src/pvifam/exactalg/_kernels.pyx"])],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
