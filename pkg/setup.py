"""Setup script for anticode"""

from setuptools import setup

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="anticode",
    version="1.0.0",
    description="Linear codes, decoders and key generation for the four-letter channel whose output never equals its input",
    long_description=long_description,
    long_description_content_type="text/markdown",
    py_modules=[
        "analysis", "catalog", "channel", "cli", "codes", "config", "decode", "errors",
        "gf4", "history", "parallel", "reports", "sim", "validator",
    ],
    python_requires=">=3.10",
    install_requires=[
        "typer>=0.9.0",
        "rich>=13.7.0",
        "tqdm>=4.66.1",
        "psutil>=5.9.0",
        "numpy>=1.24",
        "scipy>=1.10",
        "galois>=0.3.8",
    ],
    entry_points={
        "console_scripts": [
            "anticode=cli:main",
        ],
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
