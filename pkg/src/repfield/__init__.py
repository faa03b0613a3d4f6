"""Spinor images of local orders and the fields they define."""

__version__ = "0.1.0"
