from setuptools import setup

# The compiled kernel is optional: jetpoisson falls back to the pure-Python
# twin (jetpoisson._kernel_py) when the extension is absent or fails to build.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/jetpoisson/_kernel.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
