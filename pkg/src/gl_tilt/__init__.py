"""Exact toolkit for Geigle-Lenzing grid categories and tilting on GL orders."""

__version__ = "0.1.0"
