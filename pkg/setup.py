from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [Extension("gnpcrit._kernels", ["src/gnpcrit/_kernels.pyx"])],
        language_level=3,
    )
)
