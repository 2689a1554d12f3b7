import os

from setuptools import setup

ext_modules = []
if not os.environ.get("MARKOV_ATLAS_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/markov_atlas/fiber/_kernel_c.pyx"],
            language_level=3,
        )
    except ImportError:
        # the package works without the extension (pure-Python fallback)
        ext_modules = []

setup(ext_modules=ext_modules)
