#!/usr/bin/env python
# -*- coding: utf-8 -*-
import os

from setuptools import setup
from bath_entanglement import config

build_number = os.getenv('TRAVIS_BUILD_NUMBER', '')
branch = os.getenv('TRAVIS_BRANCH', '')
travis = any((build_number, branch,))
version = config.__version__.split('.')
develop_status = '3 - Alpha'
long_description = ''

if travis:
    version = version[0:3]
    if branch == 'master':
        develop_status = '4 - Beta'
        version.append(build_number)
    else:
        version.append('{}{}'.format('dev' if branch == 'develop' else branch, build_number))
else:
    if len(version) < 4:
        version.append('local')

version = '.'.join(version)
if version.endswith('.local'):
    version = version[:-len('.local')] + '+local'
if travis:
    with open('bath_entanglement/config.py', 'w', encoding="utf-8") as f:
        f.write("__version__ = '{}'\n".format(version))

if os.path.isfile('README.md'):
    try:
        import pypandoc

        print("Converting README...")
        long_description = pypandoc.convert_file('README.md', 'rst')
    except (IOError, ImportError, OSError, RuntimeError):
        print("Pandoc not found. Long_description conversion failure.")
        with open('README.md', encoding="utf-8") as f:
            long_description = f.read()

setup(
    name='bath-entanglement',
    version=version,
    description='Entanglement of two qudits dephasing through a common heat bath',
    license='MIT',
    long_description=long_description,
    classifiers=[
        'Development Status :: {}'.format(develop_status),
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
    ],
    keywords=[
        'decoherence',
        'entanglement',
        'partial transpose',
    ],
    packages=[
        'bath_entanglement',
    ],
    python_requires='>=3.8',
    setup_requires=[
        'wheel',
        'pypandoc',
    ],
    tests_require=[
        'pytest',
        'hypothesis',
    ],
    install_requires=[
        'numpy>=1.20',
        'scipy>=1.7',
        'pandas>=1.3',
    ],
    extras_require={
        'test': [
            'pytest',
            'hypothesis',
        ],
    },
    entry_points={
        'console_scripts': [
            'bath-entanglement=bath_entanglement.cli:main',
        ],
    },
)
