"""
pointlev
Topological Levinson theorem for point interactions: boundary windings and wave-operator checks
"""
import sys
from setuptools import setup, find_packages

short_description = __doc__.split("\n")

# from https://github.com/pytest-dev/pytest-runner#conditional-requirement
needs_pytest = {'pytest', 'test', 'ptr'}.intersection(sys.argv)
pytest_runner = ['pytest-runner'] if needs_pytest else []

try:
    with open("README.md", "r") as handle:
        long_description = handle.read()
except OSError:
    long_description = "\n".join(short_description[2:])


setup(
    name='pointlev',
    description=short_description[1],
    long_description=long_description,
    long_description_content_type="text/markdown",
    version="0.1.0",
    license='BSD-3-Clause',

    packages=find_packages(exclude=["examples", "examples.*"]),

    # Reference tables ship with the package
    include_package_data=True,
    package_data={"pointlev": ["data/*.yaml"]},

    setup_requires=[] + pytest_runner,
    install_requires=["numpy",
                      "scipy",
                      "opt-einsum",
                      "pandas>=1.5",
                      "PyYAML"],
    tests_require=["pytest", "pytest-cov"],
    entry_points={"console_scripts": ["pointlev = pointlev.cli:main"]},
    python_requires=">=3.8",
    zip_safe=False,
)
