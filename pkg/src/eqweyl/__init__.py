"""Numerical and exact checks of equivariant stationary phase and Weyl-law asymptotics."""
__version__ = "0.1.0"
