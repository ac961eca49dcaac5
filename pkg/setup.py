#!/usr/bin/env python

try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup


install_requires = [
    'wrapt',
    'numpy>=1.17',
    'scipy'
]

setup(
    name='sdcam',
    version='0.1.0',
    author = "The sdcam Developers",
    description="Single-loop successive DC approximation for composite optimization.",
    keywords = "optimization nonconvex proximal composite penalty",
    packages=['sdcam'],
    install_requires=install_requires,
    entry_points={'console_scripts': ['sdcam=sdcam.cli:main']},
    test_suite='tests',
    classifiers = [
        'License :: OSI Approved :: Apache Software License',
        'Programming Language :: Python :: 3'
    ]
)
