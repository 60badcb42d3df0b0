from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # The package is fully functional without the compiled kernel; the pure
    # Python row reduction in equicohom._rowred_py is picked up at import.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("equicohom._rowred", ["src/equicohom/_rowred.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
