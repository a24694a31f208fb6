from setuptools import setup, find_packages

setup(
    name="artin-presentations",
    description="Presentations of surface mapping class groups as quotients of Artin "
                "groups, Garside normal forms in finite-type Artin groups and a checker "
                "for derivation scripts.",
    version="0.1.0",
    license="Apache 2.0",
    packages=find_packages(exclude=("artinpres.tests",)),
    keywords=["artin groups", "mapping class groups", "garside normal form",
              "group presentations"],
    entry_points={
        "console_scripts": ["artinpres=artinpres.__main__:main"],
    },
    python_requires=">=3.8",
    install_requires=["modelforge>=0.2.6-alpha", "numpy>=1.17,<2.0", "networkx>=2.4,<3.0",
                      "sympy>=1.6,<2.0", "clint>=0.5,<1.0"],
    package_data={"": ["LICENSE", "README.md"], "artinpres.tests": ["data/*"]},
    classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: POSIX",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Topic :: Scientific/Engineering :: Mathematics"
    ]
)
