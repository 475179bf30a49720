from setuptools import setup, Extension
from Cython.Build import cythonize


ext_module = Extension(
    "gridpmu._mdscore",
    ["src/gridpmu/_mdscore.pyx"],
)


setup(
    ext_modules=cythonize(ext_module, language_level="3"),
)
