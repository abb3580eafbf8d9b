"""Utilities package for buffsim."""
