"""Build script for the optional compiled scan kernel.

The extension is a pure speedup; if Cython or a C compiler is missing the
package installs anyway and falls back to the Python kernel at import.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mpcskit._scan",
                ["src/mpcskit/_scan.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API",
                                "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:  # pragma: no cover
    pass

setup(ext_modules=ext_modules)
