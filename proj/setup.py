"""Builds the pybind11 extension through the project's CMake tree."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S",
                str(source_dir),
                "-B",
                str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DGRIDPLAN_INSTALL_PYTHON=ON",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_gridplan"],
            check=True,
        )

        module_dir = build_dir / "python" / "gridplan"
        built = sorted(module_dir.glob("_gridplan.*"))
        if not built:
            raise RuntimeError(f"no _gridplan module under {module_dir}")
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built[0], target)


setup(
    packages=["gridplan"],
    package_dir={"gridplan": "python/gridplan"},
    ext_modules=[CMakeExtension("gridplan._gridplan")],
    cmdclass={"build_ext": CMakeBuild},
)
