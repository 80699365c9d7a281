# setup.py
# Author: hkntk developers

from setuptools import setup, find_packages
from codecs import open
from os import path

here = path.abspath(path.dirname(__file__))

# load configures
exec(open("./hkntk/config.py").read())

# Get the long description from the relevant file
with open(path.join(here, "README.md"), encoding='utf-8') as f:
    long_description = f.read()

reqs = ['numpy>=1.17.0', 'scipy>=1.4.0']

setup(
    name = "hkntk",

    version = VERSION,

    description = "hkntk - Noise intervention toolkit for HK opinion dynamics",
    long_description = long_description,
    long_description_content_type = "text/markdown",

    license='Apache-2.0',

    keywords=['opinion dynamics', 'Hegselmann-Krause', 'stopping time',
              'Monte Carlo'],

    packages = find_packages(exclude = ["tests"]),

    entry_points={
        'console_scripts': [
            'hkntk = hkntk.hkntk:main'
        ],
    },

    install_requires = reqs,

    extras_require = {
        'test': ['pytest>=6.0'],
    },

    python_requires = '>=3.7',

    # buid the distribution: python setup.py sdist
)
