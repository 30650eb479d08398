import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PIVOTLAB_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("pivotlab._ckernels", ["src/pivotlab/_ckernels.pyx"])],
            language_level="3",
        )
    except ImportError:
        # No Cython available: the pure-Python kernel backend is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
