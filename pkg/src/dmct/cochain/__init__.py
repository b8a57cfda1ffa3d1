"""Harmonic cochains on the Bruhat-Tits tree: evaluation, Fourier data, Hecke operators."""

from .engine import delta_value, delta_value_reference
from .fourier import (
    EtaCharacter,
    FourierCochain,
    b_shift,
    cochain_from_selector,
    delta_cochain,
    eisenstein_En,
    eta,
    eval_cochain,
    fourier_from_values,
    g_of_Cprime,
    g_of_Cprime_eval,
)
from .hecke import hecke_apply, hecke_cosets, hecke_operator, up_cosets

__all__ = [
    "EtaCharacter",
    "FourierCochain",
    "b_shift",
    "cochain_from_selector",
    "delta_cochain",
    "delta_value",
    "delta_value_reference",
    "eisenstein_En",
    "eta",
    "eval_cochain",
    "fourier_from_values",
    "g_of_Cprime",
    "g_of_Cprime_eval",
    "hecke_apply",
    "hecke_cosets",
    "hecke_operator",
    "up_cosets",
]
