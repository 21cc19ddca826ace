"""Zero-side and prime-side oscillatory sums, explicit-formula checks, and
detection of Dirichlet L-function zeros from Riemann zeta zeros."""

__version__ = "0.1.0"
