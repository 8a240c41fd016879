"""Build the optional compiled kernels.

The package still imports without them; ``isoclean._backend`` falls back to
the numpy/Python kernels. Set ISOCLEAN_NO_EXT=1 to skip the extension.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ISOCLEAN_NO_EXT"):
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "isoclean._core",
                ["src/isoclean/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
                language="c++",
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
