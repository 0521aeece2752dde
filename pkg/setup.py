import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("FLIPFORGE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install; flipforge.kernels falls back
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("flipforge._ckernels", ["src/flipforge/_ckernels.pyx"])],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
