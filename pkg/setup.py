"""Build hook for the optional compiled kernel extension.

The package is fully functional without the extension (a pure-Python
kernel module is selected at import time); set PARTIALBYZ_NO_EXT=1 to
skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PARTIALBYZ_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "partialbyz._ckernels",
                    ["src/partialbyz/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
