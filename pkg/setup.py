"""Build script: compiles the optional Cython kernel core.

The compiled extension links against the GMP/MPFR/MPC libraries that ship
inside the gmpy2 wheel (or the system ones for a source install).  If
Cython, a C compiler, or the libraries are missing the build silently
falls back to the pure-Python kernels; the package is fully functional
either way.
"""

import glob
import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def _gmpy2_link_config():
    import gmpy2

    pkg_dir = os.path.dirname(gmpy2.__file__)
    include_dirs = [pkg_dir]
    libs_dir = os.path.join(os.path.dirname(pkg_dir), "gmpy2.libs")
    extra_link_args = []
    libraries = []
    if os.path.isdir(libs_dir):
        # manylinux wheel: bundled, name-mangled shared objects
        for pat in ("libmpc-*.so*", "libmpfr-*.so*", "libgmp-*.so*"):
            extra_link_args.extend(sorted(glob.glob(os.path.join(libs_dir, pat))))
        extra_link_args.append(f"-Wl,-rpath,{libs_dir}")
    else:
        libraries = ["mpc", "mpfr", "gmp"]
    return include_dirs, libraries, extra_link_args


class optional_build_ext(build_ext):
    """Never fail the install because the accelerator could not build."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"helmflow: skipping compiled kernels ({exc!r})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"helmflow: skipping {ext.name} ({exc!r})", file=sys.stderr)


def _extensions():
    try:
        from Cython.Build import cythonize

        include_dirs, libraries, extra_link_args = _gmpy2_link_config()
    except Exception as exc:  # noqa: BLE001
        print(f"helmflow: compiled kernels unavailable ({exc!r})", file=sys.stderr)
        return []
    ext = Extension(
        "helmflow.kernels._fast",
        ["src/helmflow/kernels/_fast.pyx"],
        include_dirs=include_dirs,
        libraries=libraries,
        extra_link_args=extra_link_args,
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
