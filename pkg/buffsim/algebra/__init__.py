"""Transition profiles, the transition monoid and language inclusion."""
