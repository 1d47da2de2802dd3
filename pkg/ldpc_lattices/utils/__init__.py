"""Logging, seeds and constants shared by the package."""
