from setuptools import setup, find_packages

setup(
    name='stcsolver',
    version='1.0.0',
    packages=find_packages(exclude=["tests", "examples"]),
    install_requires=[
        "numpy",
        "pandas",
        "dask",
        "networkx",
        "setuptools",
    ],
    extras_require={
        "test": [
            "pytest",
            "hypothesis",
        ],
    },
    description='Exact solvers, kernels and instance generators for strong triadic closure and cluster deletion',
    entry_points={
        'console_scripts': [
            'stcsolver=stcsolver.cli:main',
            'stc-sweep=stcsolver.corpus_sweep:main',
        ],
    },
)
