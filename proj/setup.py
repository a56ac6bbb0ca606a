from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

core_sources = [
    "src/panel.cpp",
    "src/correlation.cpp",
    "src/mst.cpp",
    "src/metrics.cpp",
    "src/phase.cpp",
    "src/scan.cpp",
    "src/synth.cpp",
    "src/series_io.cpp",
]

setup(
    ext_modules=[
        Pybind11Extension(
            "mstphase._core",
            sources=["python/mstphase/bindings.cpp"] + core_sources,
            include_dirs=["include", "vendor"],
            cxx_std=20,
        )
    ],
    cmdclass={"build_ext": build_ext},
)
