"""Monolith decomposition workbench: analysis engine, HTTP service, and CLI."""

__version__ = "0.1.0"
