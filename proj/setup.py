"""Builds the compiled extension for pip installs; CMake remains the primary
build for the C++ library, CLI, and test suites."""

from glob import glob

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup

ParallelCompile("NPY_NUM_BUILD_JOBS").install()

ext = Pybind11Extension(
    "fourier_smooth._core",
    sources=sorted(glob("src/*.cpp")) + ["python/fsmooth_module.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
