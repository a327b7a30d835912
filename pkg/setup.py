"""Build hook: compile the convolution kernel extension when Cython and a C
toolchain are available; fall back to the pure-Python kernels otherwise."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qrr/_ckernel.pyx"], language_level=3, quiet=True
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
