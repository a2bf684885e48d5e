"""Obstructions to the Hasse norm principle from finite group data."""

__version__ = "0.1.0"
