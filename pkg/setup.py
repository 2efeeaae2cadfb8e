from setuptools import setup

v_temp = {}
with open("gs_spectral/version.py") as fp:
    exec(fp.read(), v_temp)
version = ".".join((str(x) for x in v_temp["version"]))


setup(
    name="gs_spectral",
    version=version,
    packages=[
        "gs_spectral",
        "gs_spectral.fem",
        "gs_spectral.harness",
        "gs_spectral.mesh",
        "gs_spectral.models",
        "gs_spectral.spectral",
        "gs_spectral.stepping",
    ],
    license="BSD-3-Clause",
    install_requires=[
        "h5py",
        "numpy",
        "scipy",
    ],
    extras_require={
        "testing": ["hypothesis", "pytest", "sympy"],
    },
    entry_points={
        "console_scripts": ["gs-spectral=gs_spectral.cli:main"],
    },
    python_requires=">=3.8",
    long_description_content_type="text/markdown",
    long_description=open("README.md").read(),
    description="Spectral Galerkin finite elements with a two-stage explicit/implicit integrator for the Gray-Scott system",
    classifiers=[
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: MacOS :: MacOS X",
        "Operating System :: Microsoft :: Windows",
        "Operating System :: POSIX",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
