"""Build script for the optional compiled cone-sum kernel.

The package is fully functional without the extension; heckezero.kernels
falls back to the pure-Python implementation if the import fails.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "heckezero._zcore",
                ["src/heckezero/_zcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
