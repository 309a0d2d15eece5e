from setuptools import setup, find_packages

import drinfeld_rh

setup(
    name="drinfeld_rh",
    packages=find_packages(exclude=["test"]),
    install_requires=[
        "numpy",
        "galois",
        "caput @ git+https://github.com/radiocosmology/caput.git",
        "Click",
        "PyYAML",
    ],
    extras_require={
        "mpi": ["mpi4py"],
        "test": ["pytest", "hypothesis"],
    },
    python_requires=">=3.9",
    entry_points="""
        [console_scripts]
        drinfeld-rh=drinfeld_rh.processing.client:cli
    """,
    description="Drinfeld module arithmetic and Riemann hypothesis checks",
    version=drinfeld_rh.__version__,
    license="MIT",
)
