from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-Python install: psibar._kernel falls back to the interpreted sieve.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("psibar._sieve_fast", ["src/psibar/_sieve_fast.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
