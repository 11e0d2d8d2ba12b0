from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "pleatlab._kernel",
                ["src/pleatlab/_kernel.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    # Without Cython the package still works through the pure-Python kernel.
    extensions = []

setup(ext_modules=extensions)
