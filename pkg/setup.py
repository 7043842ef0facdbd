from setuptools import setup, find_packages

setup(
    name="hopf-workbench",
    version="0.1.0",
    description="Exact computer algebra for finite-dimensional Hopf algebras and truncated free Hopf algebras.",
    packages=find_packages(exclude=["tests", "examples*"]),
    install_requires=[
        "click",
        "pydantic>=2",
        "sympy",
    ],
    entry_points={
        "console_scripts": [
            "hopf-lab=hopf.cli:cli",
        ],
    },
    python_requires=">=3.9",
    include_package_data=True,
)
