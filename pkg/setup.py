"""Build the optional compiled kernel.

If Cython or a C compiler is missing the package still installs and runs
on the pure-Python kernel.
"""
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc}); using the pure-Python kernel")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc}); using the pure-Python kernel")


def extensions():
    try:
        import numpy  # noqa: F401
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "tscalc._kernel._vm_c",
        ["src/tscalc/_kernel/_vm_c.pyx"],
        # no contraction into fused multiply-adds: results must match the Python kernel bit for bit
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
