from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [
            Extension(
                "hepgrover._gatekernels",
                ["src/hepgrover/_gatekernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
else:
    # pure-Python fallback kernels are selected at import time
    extensions = []

setup(ext_modules=extensions)
