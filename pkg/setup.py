from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "utgradings._speedups",
                ["src/utgradings/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # pure-Python fallback is selected at import time, so skip the extension
    ext_modules = []

setup(ext_modules=ext_modules)
