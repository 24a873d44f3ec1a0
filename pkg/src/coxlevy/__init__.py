"""Simulation and verification toolkit for compound Cox processes and their Levy limits."""

__version__ = "0.1.0"
