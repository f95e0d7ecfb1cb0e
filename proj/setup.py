"""Build the native module through the project's CMake tree.

setuptools drives the overall wheel; the extension itself is configured and
compiled by CMake (bindings/CMakeLists.txt), then the built library is
copied to wherever setuptools expects it.
"""

import glob
import os
import shutil
import subprocess
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = os.path.abspath(os.path.dirname(__file__))
        build_dir = os.path.abspath(self.build_temp)
        os.makedirs(build_dir, exist_ok=True)

        subprocess.run(
            [
                "cmake",
                "-S", source_dir,
                "-B", build_dir,
                "-DCMAKE_BUILD_TYPE=Release",
                "-DTCORE_BUILD_CLI=OFF",
                "-DTCORE_BUILD_TESTS=OFF",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", build_dir, "--target", "_core", "--parallel"],
            check=True,
        )

        built = glob.glob(os.path.join(build_dir, "python", "tcore", "_core*.so"))
        if not built:
            raise RuntimeError("CMake did not produce the _core module")
        target = self.get_ext_fullpath(ext.name)
        os.makedirs(os.path.dirname(target), exist_ok=True)
        shutil.copy2(built[0], target)


setup(
    ext_modules=[CMakeExtension("tcore._core")],
    cmdclass={"build_ext": CMakeBuild},
)
