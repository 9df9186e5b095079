import sys

from setuptools import setup

# The compiled kernels are optional: the package falls back to the numpy
# implementations in kerropo._fallback when the extension is absent.
ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "kerropo._kernels",
                sources=["src/kerropo/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError as exc:
    print(f"Cython/numpy unavailable ({exc}); building pure-python package", file=sys.stderr)

setup(ext_modules=ext_modules)
