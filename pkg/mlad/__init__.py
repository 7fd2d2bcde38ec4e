"""Simulator and verification harness for a momentum-ladder quantum computer."""

__version__ = '0.1.0'
