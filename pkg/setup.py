# Builds the optional Cython stencil kernels. The package falls back to the
# numpy implementation in spinor_em/_kernels_py.py when the extension is absent.
import os

from setuptools import setup

ext_modules = []
if os.environ.get("SPINOR_EM_NO_EXT") != "1":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "spinor_em._kernels_ext",
                    ["src/spinor_em/_kernels_ext.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
