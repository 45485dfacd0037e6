"""Slow-light optics of the condensate: susceptibility to transparency window.

Starting from the atom number and Thomas-Fermi radii, this chain evaluates
the optical depth of the probe line, the group index and velocity, the
slow-light delay, the EIT transparency window, and the structure of the
probe susceptibility on and off the single-photon resonance.
"""

import math

from becmemory import (ControlField, MediumParams, check_compression_condition,
                       chi0, group_index, group_velocity, im_chi_maxima,
                       optical_depth, pulse_delay, susceptibility,
                       susceptibility_approx, transparency_width)

TWO_PI = 2.0 * math.pi

medium = MediumParams(atom_number=1.2e6, r_x=7e-6, r_y=25e-6, r_z=25e-6,
                      gamma_total=1.0 / 26e-9, branching_ratio=1.0 / 12.0,
                      lambda_p=795e-9)
omega_c = TWO_PI * 15e6

print(f"peak density: {medium.peak_density:.3e} m^-3")
d_p = optical_depth(medium)
print(f"on-axis optical depth: {d_p:.1f}")
print(f"optical depth 3 um off axis: {optical_depth(medium, x=3e-6):.1f}")

n_gr = group_index(omega_c, medium.peak_density, medium)
print(f"\ngroup index at 2 pi x 15 MHz control: {n_gr:.3e}")
print(f"group velocity: {group_velocity(n_gr):.1f} m/s")
print(f"chi0 scale: {chi0(omega_c, medium, medium.peak_density):.3f}")

tau_d = pulse_delay(omega_c, d_p, medium.gamma_total)
width = transparency_width(omega_c, medium.gamma_total, d_p)
print(f"slow-light delay through the cloud: {tau_d * 1e9:.0f} ns")
print(f"transparency window: 2 pi x {width / TWO_PI / 1e6:.2f} MHz")
print(f"delay x width = sqrt(d_p): {tau_d * width:.3f} vs "
      f"{math.sqrt(d_p):.3f}")

check = check_compression_condition(tau_d, 94e-9, d_p)
print(f"compression check for a 94 ns pulse: ratio {check.delay_ratio:.2f},"
      f" compressible {check.compressible}, low absorption "
      f"{check.low_absorption}")

# Absorption structure: on resonance the two maxima sit at +-Omega_c/2;
# at 70 MHz detuning the near maximum collapses to Omega_c^2/(4 Delta_c),
# squeezing the usable frequency range.
chi_scale = chi0(omega_c, medium, medium.peak_density)
for delta_c_mhz in (0.0, 70.0):
    field = ControlField(TWO_PI * 20e6, TWO_PI * delta_c_mhz * 1e6)
    lo, hi = im_chi_maxima(field)
    print(f"\nabsorption maxima at Delta_c = {delta_c_mhz:.0f} MHz: "
          f"{lo / TWO_PI / 1e6:+.2f} and {hi / TWO_PI / 1e6:+.2f} MHz")
    for delta2_mhz in (0.1, 1.0):
        delta2 = TWO_PI * delta2_mhz * 1e6
        exact = susceptibility(delta2, field, chi_scale,
                               medium.gamma_total)
        approx = susceptibility_approx(delta2, field.omega_c, chi_scale,
                                       medium.gamma_total)
        print(f"  delta2 = {delta2_mhz:4.1f} MHz: Re chi {exact.re:+.5f} "
              f"(expansion {approx.re:+.5f}), Im chi {exact.im:.6f}")
