"""Power sums, multizeta values and zeta-like tuples for F_q[t]."""

__version__ = "0.1.0"
