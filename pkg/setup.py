"""Build script for the optional compiled kernel extension.

Plain installs stay pure Python; compile the fast path with

    python setup.py build_ext --inplace

The package falls back to the NumPy kernels when the extension is absent.
"""

import sys

from setuptools import Extension, setup


def _extensions():
    import numpy as np
    from Cython.Build import cythonize

    ext = Extension(
        "nhlat._kernels_cy",
        ["src/nhlat/_kernels_cy.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


if "build_ext" in sys.argv:
    setup(ext_modules=_extensions())
else:
    setup()
