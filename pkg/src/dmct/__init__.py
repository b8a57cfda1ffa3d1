"""Cuspidal divisors and harmonic cochains on Drinfeld modular curves X_0(p^r)."""

__version__ = "0.1.0"
