import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("BAYHG_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "bayhg._sepcore",
            ["src/bayhg/_sepcore.pyx"],
            extra_compile_args=["-O3"],
        )
        ext.optional = True  # pure-Python fallback is selected at import time
        ext_modules = cythonize(ext, compiler_directives={"language_level": "3"})
    except ImportError:
        pass

setup(ext_modules=ext_modules)
