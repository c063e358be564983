"""Certified Seshadri constants of ample line bundles on hyperelliptic surfaces."""

__version__ = "0.1.0"
