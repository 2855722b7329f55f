import os

from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to numpy
# implementations when the extension is absent (set ROTOBLOCH_NO_EXT=1
# to skip the build deliberately).
ext_modules = []
if not os.environ.get("ROTOBLOCH_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("rotobloch._kernels", ["src/rotobloch/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
