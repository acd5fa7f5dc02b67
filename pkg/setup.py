"""Build script: compiles the optional Jacobi kernel when Cython is available."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "cayspec._kernels.jacobi",
                sources=["src/cayspec/_kernels/jacobi.pyx"],
                optional=True,
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
