"""Büchi automata: model, file formats and exact oracles."""
