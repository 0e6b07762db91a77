#!/usr/bin/env python3
"""
affhecke package main entry point.
Allows running the package as a module with: python -m affhecke
"""

import sys

from affhecke.utils.cli import main

if __name__ == '__main__':
    sys.exit(main())
