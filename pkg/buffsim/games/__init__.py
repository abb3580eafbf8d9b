"""Game arenas, solvers, simulation games and quotient games."""
