from setuptools import setup

# The compiled kernel is an optional accelerator: the package falls back to
# the pure-Python implementation when the extension is unavailable.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/mrbleib/_kernels_cy.pyx"],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
