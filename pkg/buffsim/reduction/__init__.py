"""State-space reduction by simulation preorders."""
