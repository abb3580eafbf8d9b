"""Tiling systems and hardness-instance generators."""
