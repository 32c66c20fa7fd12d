#!/usr/bin/env python

# Licensed under a 3-clause BSD style license - see LICENSE.rst

# Metadata, dependencies and the console script live in setup.cfg.
from setuptools import setup

setup()
