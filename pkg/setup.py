from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/wittlat/kernels/_speedups.pyx",
        language_level=3,
    )
except ImportError:
    # no Cython available: the pure-Python kernels are used instead
    pass

setup(ext_modules=ext_modules)
