"""
kbalance - balanced sequences with prescribed letter frequencies
Installs the package and the `kbalance` command
"""

import sys
from pathlib import Path

from setuptools import find_packages, setup

if sys.version_info < (3, 11):
    sys.exit(f"Python 3.11+ required. Current: {sys.version_info.major}.{sys.version_info.minor}")

ROOT = Path(__file__).parent
TEST_ONLY = {"pytest", "hypothesis"}


def read_requirements():
    """Runtime requirements from requirements.txt; test tools go to the `test` extra"""
    runtime, test = [], []
    for line in (ROOT / "requirements.txt").read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name = line.split(">")[0].split("=")[0].split("<")[0]
        (test if name in TEST_ONLY else runtime).append(line)
    return runtime, test


runtime_requires, test_requires = read_requirements()

setup(
    name="kbalance",
    version="1.0.0",
    description="Construct and measure k-balanced sequences with prescribed letter frequencies",
    long_description=(ROOT / "START_HERE.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    packages=find_packages(include=["kbalance", "kbalance.*"]),
    python_requires=">=3.11",
    install_requires=runtime_requires,
    extras_require={"test": test_requires},
    entry_points={"console_scripts": ["kbalance=kbalance.cli:console_main"]},
)
