"""Atomic and fundamental constants for the rubidium D1 storage system."""

from dataclasses import dataclass

from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import hbar as HBAR
from scipy.constants import k as BOLTZMANN

# Bohr magneton expressed as a frequency per magnetic field, mu_B / h in Hz/G.
MU_B_OVER_H = 1.40e6

# Mass of one 87Rb atom in kg.
RB87_MASS = 1.4447e-25

# D1 probe/control wavelength in m.
D1_WAVELENGTH = 795e-9


@dataclass(frozen=True)
class AtomicConstants:
    """Constants entering Faraday rotation, recoil and thermal estimates.

    Frequencies are angular (rad/s) unless a name says otherwise; ``mu_b_over_h``
    is an ordinary frequency per gauss, so omega_F carries an explicit 2*pi.
    """

    g_f: float = 0.5            # Lande factor of the storage ground states
    delta_mf: float = 2.0       # Zeeman-number difference of the two spin states
    mu_b_over_h: float = MU_B_OVER_H   # Hz/G
    hbar: float = HBAR          # J s
    mass: float = RB87_MASS     # kg
    k_b: float = BOLTZMANN      # J/K
    c: float = SPEED_OF_LIGHT   # m/s
    lambda_p: float = D1_WAVELENGTH  # m

    def __post_init__(self):
        for name in ("g_f", "delta_mf", "mu_b_over_h", "hbar", "mass", "k_b",
                     "c", "lambda_p"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")


RB87_D1 = AtomicConstants()
