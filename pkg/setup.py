"""fdre setup script."""

import os
from setuptools import setup, find_packages

# Get the current version number from inside the module
with open(os.path.join('fdre', 'version.py')) as version_file:
    exec(version_file.read())

# Load the long description from the README
with open('README.rst') as readme_file:
    long_description = readme_file.read()

# Load the required dependencies from the requirements file
with open("requirements.txt") as requirements_file:
    install_requires = requirements_file.read().splitlines()

setup(
    name = 'fdre',
    version = __version__,
    description = 'Density ratio estimation with f-divergence losses',
    long_description = long_description,
    python_requires = '>=3.8',
    author = 'The fdre developers',
    packages = find_packages(),
    license = 'Apache License, 2.0',
    classifiers = [
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: Microsoft :: Windows',
        'Operating System :: MacOS',
        'Operating System :: POSIX',
        'Operating System :: Unix',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12'
        ],
    platforms = 'any',
    keywords = ['density-ratio-estimation', 'f-divergence', 'variational-estimation',
                'nearest-neighbors', 'neural-networks'],
    install_requires = install_requires,
    tests_require = ['pytest'],
    extras_require = {
        'plot' : ['matplotlib', 'seaborn'],
        'all'  : ['matplotlib', 'seaborn']
    },
    entry_points = {
        'console_scripts' : ['fdre = fdre.bench.cli:main']
    },
)
