"""Build script: compiles the optional Cython raster kernel.

The compiled extension is a pure accelerator. If Cython or a C compiler is
unavailable the install still succeeds and the package falls back to the
numpy kernel at import time (see holoviz.render.kernels).
"""

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Never fail the install over the accelerator extension."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any build failure is non-fatal
            print(f"warning: skipping compiled raster kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: skipping compiled raster kernel ({exc})")


def _extensions():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    # -ffp-contract=off keeps the C kernel bit-identical to the numpy
    # fallback (no FMA contraction of a*b+c).
    ext = Extension(
        "holoviz.render.kernels._rasterize",
        ["src/holoviz/render/kernels/_rasterize.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
