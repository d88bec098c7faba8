"""Group-theoretic and intersection-number checks for a one-cusped ball quotient pair."""

__version__ = "0.1.0"
