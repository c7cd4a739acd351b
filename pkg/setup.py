"""Build script: compiles the optional model-set kernel extension.

The extension is a performance add-on; if Cython or a C compiler is
missing the install falls back to the pure-Python kernel.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "defpos._kernel._bitkern",
                ["src/defpos/_kernel/_bitkern.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
