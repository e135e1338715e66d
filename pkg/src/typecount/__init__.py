"""typecount: exact finite-level computations for supercuspidal types of
GL_n with n prime, and the global multiplicity bound they feed."""

__version__ = "0.1.0"
