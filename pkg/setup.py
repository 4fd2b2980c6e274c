import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BLOCHLAB_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "blochlab.kernels._ckernels",
                    ["src/blochlab/kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    # operands are finite and bounded, so C99's inf/nan recovery in
                    # complex * and / is dead weight
                    extra_compile_args=["-O3", "-fcx-limited-range"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
