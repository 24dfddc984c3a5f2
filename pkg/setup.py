import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; tiltcount falls back to numpy kernels
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("TILTCOUNT_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "tiltcount._gfp",
                ["src/tiltcount/_gfp.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
