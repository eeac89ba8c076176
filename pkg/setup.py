# Build the optional Cython kernels. Falls back to a pure-Python install
# when Cython or a C compiler is unavailable.
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FPDETECT_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "fpdetect._ckernels",
                    ["src/fpdetect/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
