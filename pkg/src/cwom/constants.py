"""Physical constants (SI). Kept here so unit conversions are auditable."""

HBAR = 1.054571817e-34  # J*s, reduced Planck constant
K_B = 1.380649e-23      # J/K, Boltzmann constant
