"""Optional compiled twin of the integer-matrix kernel.

The package is pure Python; if Cython and a C compiler are available,
src/prolim/_intkernel.py is additionally compiled (pure-Python mode) into
the extension module prolim._intkernel_c.  Import-time selection lives in
prolim._backend; a failed or skipped build changes nothing semantically.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    import shutil
    import os

    src = os.path.join("src", "prolim", "_intkernel.py")
    twin = os.path.join("src", "prolim", "_intkernel_c.py")
    # cythonize wants the module name to match the file name
    shutil.copyfile(src, twin)
    ext_modules = cythonize(
        [twin],
        language_level=3,
        compiler_directives={"binding": False},
        quiet=True,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
