#! /usr/bin/env python3
# coding: utf8

"""
File : setup.py
Author : lgbarrere
Brief : Build the library
"""

from setuptools import find_packages, setup

lib_name = 'fracop'

setup(
    name=lib_name,
    packages=find_packages(include=[lib_name, lib_name + '.*']),
    version='0.1.0',
    description='Operational calculus for 1st level general fractional derivatives',
    author='lgbarrere',
    license=None,
    install_requires=['numpy', 'scipy'],
    setup_requires=['pytest-runner'],
    tests_require=['pytest', 'hypothesis', 'mpmath'],
    test_suite='test',
    entry_points={'console_scripts': ['fracop = fracop.application:main']},
)
