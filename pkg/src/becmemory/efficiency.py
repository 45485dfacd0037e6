"""Write-read efficiency estimate and its decay with storage time.

The efficiency of one storage cycle is modeled as the product of a
compression factor (fraction of the pulse inside the medium when the control
beam switches off) and a transmission factor (fraction of the pulse spectrum
passing the EIT window).  Both depend on the control Rabi frequency through
the slow-light delay and the transparency width, producing a pronounced
optimum.  Averaging over the transverse beam profile accounts for the
inhomogeneous optical depth of the cloud.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erf, i0e

from .constants import SPEED_OF_LIGHT, AtomicConstants, RB87_D1
from .eit import (CompressionCheck, ControlField, MediumParams,
                  check_compression_condition, optical_depth, pulse_delay,
                  transparency_width)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class PulseParams:
    """Incoming probe pulse: Gaussian intensity envelope and beam waist."""

    tau_p: float            # temporal rms width of the intensity, s
    t0: float               # control switch-off time after the peak entered, s
    i0: float = 1.0         # peak intensity, arbitrary units
    waist: float = 8e-6     # 1/e^2 intensity radius, m

    def __post_init__(self):
        if self.tau_p <= 0:
            raise ValueError("tau_p must be > 0")
        if self.waist <= 0:
            raise ValueError("waist must be > 0")


@dataclass(frozen=True)
class EfficiencyResult:
    """Compression and transmission factors and their product."""

    eta_comp: float
    eta_trans: float
    eta_total: float
    compression: CompressionCheck | None


def pulse_intensity(t: float, z: float, pulse: PulseParams, tau_d_z: float,
                    dispersion_broadening: bool = False,
                    omega_p: float | None = None) -> float:
    """Intensity of the delayed pulse at time t and position z.

    The envelope stays Gaussian, centered at tau_d(z) + z/c.  The optional
    dispersion broadening tau_p^2(z) = tau_p^2 + (tau_d(z)/(tau_p omega_p))^2
    is negligible for realistic parameters but kept for completeness.
    """
    tau2 = pulse.tau_p**2
    if dispersion_broadening:
        if omega_p is None:
            raise ValueError("dispersion broadening requires omega_p")
        tau2 = tau2 + (tau_d_z / (pulse.tau_p * omega_p))**2
    arg = t - tau_d_z - z / SPEED_OF_LIGHT
    return pulse.i0 * math.exp(-arg**2 / (2.0 * tau2))


def eta_comp(t0: float, tau_p: float, tau_d: float,
             transit: float = 0.0) -> float:
    """Fraction of the pulse inside the medium at control switch-off.

    Equals the integral of the normalized Gaussian envelope over the
    in-medium window (t0 - tau_d - transit, t0), written with error
    functions; ``transit`` is the vacuum flight time L/c through the medium.
    """
    if tau_p <= 0:
        raise ValueError("tau_p must be > 0")
    a = t0 / (SQRT2 * tau_p)
    b = (t0 - tau_d - transit) / (SQRT2 * tau_p)
    return 0.5 * float(erf(a) - erf(b))


def eta_trans(tau_p: float, delta_omega_trans: float) -> float:
    """Pulse energy fraction transmitted through the Gaussian EIT window."""
    if tau_p <= 0 or delta_omega_trans <= 0:
        raise ValueError("tau_p and delta_omega_trans must be > 0")
    return (1.0 + 2.0 / (tau_p * delta_omega_trans)**2)**-0.5


def _eta_on_depth(d_p, omega_c: float, t0, tau_p: float, gamma: float,
                  transit=0.0, broadened: bool = False):
    """Vectorized eta_comp * eta_trans as a function of optical depth.

    ``d_p``, ``t0`` and ``transit`` broadcast against each other; entries
    with d_p <= 0 yield 0 (no medium, nothing stored).
    """
    d_p, t0, transit = np.broadcast_arrays(
        np.asarray(d_p, float), np.asarray(t0, float),
        np.asarray(transit, float))
    pos = d_p > 0
    dp_safe = np.where(pos, d_p, 1.0)
    tau_d = gamma * dp_safe / omega_c**2
    inv_width = gamma * np.sqrt(dp_safe) / omega_c**2   # 1 / transparency width
    e_t = (1.0 + 2.0 * (inv_width / tau_p)**2)**-0.5
    tau_eff = tau_p
    if broadened:
        # rms width after the Gaussian transmission window:
        # tau_p^2(L) = tau_p^2 + 2/width^2, so eta_trans = tau_p(0)/tau_p(L)
        tau_eff = np.sqrt(tau_p**2 + 2.0 * inv_width**2)
    e_c = 0.5 * (erf(t0 / (SQRT2 * tau_eff))
                 - erf((t0 - tau_d - transit) / (SQRT2 * tau_eff)))
    return np.where(pos, e_c * e_t, 0.0)


def eta_total(omega_c, pulse: PulseParams, medium: MediumParams,
              x: float = 0.0, y: float = 0.0, include_transit: bool = True,
              broadened: bool = False) -> EfficiencyResult:
    """Single-cycle efficiency for the probe line through (x, y).

    ``omega_c`` may be a plain Rabi frequency in rad/s or a ControlField.
    Outside the cloud the efficiency is zero by definition.
    """
    if isinstance(omega_c, ControlField):
        omega_c = omega_c.omega_c
    d_p = optical_depth(medium, x, y)
    if d_p <= 0:
        return EfficiencyResult(0.0, 1.0, 0.0, None)
    gamma = medium.gamma_total
    tau_d = pulse_delay(omega_c, d_p, gamma)
    width = transparency_width(omega_c, gamma, d_p)
    transit = medium.chord_length(x, y) / SPEED_OF_LIGHT if include_transit \
        else 0.0
    tau_eff = math.sqrt(pulse.tau_p**2 + 2.0 / width**2) if broadened \
        else pulse.tau_p
    e_c = eta_comp(pulse.t0, tau_eff, tau_d, transit)
    e_t = eta_trans(pulse.tau_p, width)
    return EfficiencyResult(
        e_c, e_t, e_c * e_t,
        check_compression_condition(tau_d, pulse.tau_p, d_p))


def _radial_weight(r, r_x: float, r_y: float, waist: float):
    """Angular integral of the Gaussian beam weight on the scaled ellipse.

    With x = Rx r cos(phi), y = Ry r sin(phi) the azimuthal integral of
    (2/pi w^2) exp(-2(x^2+y^2)/w^2) is analytic and leaves
    (4 Rx Ry / w^2) r exp(-(a+b)/2) I0((a-b)/2), a = 2 Rx^2 r^2/w^2,
    b = 2 Ry^2 r^2/w^2; the exponentially scaled Bessel function keeps the
    product well-conditioned for strongly unequal radii.
    """
    r = np.asarray(r, float)
    a = 2.0 * (r_x * r / waist)**2
    b = 2.0 * (r_y * r / waist)**2
    half_diff = 0.5 * (a - b)
    return (4.0 * r_x * r_y / waist**2) * r \
        * np.exp(-0.5 * (a + b) + np.abs(half_diff)) * i0e(half_diff)


def transverse_average_eta(omega_c, pulse: PulseParams, medium: MediumParams,
                           waist: float | None = None,
                           t0: float | None = None,
                           include_transit: bool = True,
                           broadened: bool = False,
                           n_radial: int | None = None) -> float:
    """Efficiency averaged over the transverse probe intensity profile.

    The weighted average reduces to a single radial integral after the
    analytic angular reduction; by default it is evaluated with adaptive
    quadrature.  ``n_radial`` switches to fixed-order Gauss-Legendre nodes,
    which is faster inside sweeps and optimizers.  The probe weight falling
    outside the cloud contributes zero efficiency.
    """
    if isinstance(omega_c, ControlField):
        omega_c = omega_c.omega_c
    w = pulse.waist if waist is None else waist
    if w <= 0:
        raise ValueError("waist must be > 0")
    t0 = pulse.t0 if t0 is None else t0
    dp0 = optical_depth(medium)
    gamma = medium.gamma_total

    def integrand(r):
        rest = 1.0 - np.asarray(r, float)**2
        d_p = dp0 * np.maximum(rest, 0.0)**1.5
        transit = 2.0 * medium.r_z * np.sqrt(np.maximum(rest, 0.0)) \
            / SPEED_OF_LIGHT if include_transit else 0.0
        return _radial_weight(r, medium.r_x, medium.r_y, w) * _eta_on_depth(
            d_p, omega_c, t0, pulse.tau_p, gamma, transit, broadened)

    if n_radial is not None:
        nodes, weights = np.polynomial.legendre.leggauss(n_radial)
        r = 0.5 * (nodes + 1.0)
        return float(0.5 * np.sum(weights * integrand(r)))
    value, _ = quad(integrand, 0.0, 1.0, epsabs=1e-13, epsrel=1e-10,
                    limit=200)
    return float(value)


@dataclass(frozen=True)
class OptimizeEtaResult:
    """Location and value of the efficiency optimum."""

    omega_c: float
    t0: float
    eta: float
    on_boundary: bool


DEFAULT_OMEGA_BOUNDS = (2.0 * math.pi * 1e6, 2.0 * math.pi * 100e6)


def optimize_eta(medium: MediumParams, pulse: PulseParams,
                 omega_bounds: tuple[float, float] = DEFAULT_OMEGA_BOUNDS,
                 t0_bounds: tuple[float, float] | None = None,
                 waist: float | None = None, x: float = 0.0, y: float = 0.0,
                 grid_shape: tuple[int, int] = (200, 200),
                 refine_tol: float = 1e-4, include_transit: bool = True,
                 n_radial: int = 96) -> OptimizeEtaResult:
    """Maximize the efficiency over control Rabi frequency and switch-off time.

    A log-linear grid search (log in omega_c, linear in t0) locates the
    basin; a deterministic shrinking-stencil refinement then resolves the
    optimum to better than ``refine_tol`` relative in eta.  With ``waist``
    set, the transverse-averaged efficiency is optimized; otherwise the
    on-axis (or offset (x, y)) value.  The default t0 range is
    [0, 5 tau_p + tau_d(omega_min)].

    A maximum sitting on the search boundary is flagged.
    """
    om_lo, om_hi = omega_bounds
    if om_lo <= 0 or om_hi < om_lo:
        raise ValueError("invalid omega_c bounds")
    if t0_bounds is None:
        dp_ref = optical_depth(medium) if waist is not None \
            else optical_depth(medium, x, y)
        t0_bounds = (0.0, 5.0 * pulse.tau_p
                     + pulse_delay(om_lo, dp_ref, medium.gamma_total))
    t0_lo, t0_hi = t0_bounds
    if t0_hi < t0_lo:
        raise ValueError("invalid t0 bounds")

    if waist is not None:
        dp0 = optical_depth(medium)
        nodes, gl_weights = np.polynomial.legendre.leggauss(n_radial)
        r = 0.5 * (nodes + 1.0)
        rest = 1.0 - r**2
        dp_nodes = dp0 * rest**1.5
        transit_nodes = 2.0 * medium.r_z * np.sqrt(rest) / SPEED_OF_LIGHT \
            if include_transit else np.zeros_like(r)
        weight_nodes = 0.5 * gl_weights * _radial_weight(
            r, medium.r_x, medium.r_y, waist)

        def objective(omegas, t0s):
            out = np.empty((len(omegas), len(t0s)))
            for i, om in enumerate(omegas):
                grid = _eta_on_depth(dp_nodes[None, :], om, t0s[:, None],
                                     pulse.tau_p, medium.gamma_total,
                                     transit_nodes[None, :])
                out[i] = grid @ weight_nodes
            return out
    else:
        d_p = optical_depth(medium, x, y)
        transit = medium.chord_length(x, y) / SPEED_OF_LIGHT \
            if include_transit else 0.0

        def objective(omegas, t0s):
            return np.stack([
                _eta_on_depth(d_p, om, t0s, pulse.tau_p, medium.gamma_total,
                              transit) for om in omegas])

    n_om, n_t0 = grid_shape
    omegas = np.geomspace(om_lo, om_hi, max(n_om, 1))
    t0s = np.linspace(t0_lo, t0_hi, max(n_t0, 1))
    values = objective(omegas, t0s)
    i, j = np.unravel_index(np.argmax(values), values.shape)
    best_log_om, best_t0, best = math.log(omegas[i]), t0s[j], values[i, j]

    # Shrinking-stencil refinement in (log omega_c, t0).  Each pass evaluates
    # a 5x5 stencil around the incumbent; when the incumbent stays put the
    # stencil is halved, so 60 passes resolve the optimum far below
    # refine_tol in eta for any smooth objective.
    log_lo, log_hi = math.log(om_lo), math.log(om_hi)
    span_log = (log_hi - log_lo) / max(len(omegas) - 1, 1)
    span_t0 = (t0_hi - t0_lo) / max(len(t0s) - 1, 1)
    offsets = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    stale = 0
    for _ in range(60):
        cand_log = np.unique(np.clip(best_log_om + span_log * offsets,
                                     log_lo, log_hi))
        cand_t0 = np.unique(np.clip(best_t0 + span_t0 * offsets,
                                    t0_lo, t0_hi))
        local = objective(np.exp(cand_log), cand_t0)
        ii, jj = np.unravel_index(np.argmax(local), local.shape)
        improvement = local[ii, jj] - best
        if improvement > 0:
            best_log_om, best_t0, best = cand_log[ii], cand_t0[jj], \
                local[ii, jj]
        else:
            span_log *= 0.5
            span_t0 *= 0.5
        stale = stale + 1 if improvement <= refine_tol * best else 0
        if stale >= 10:
            break

    omega_best = math.exp(best_log_om)
    edge = (
        (om_hi > om_lo and (best_log_om - log_lo < 1e-9
                            or log_hi - best_log_om < 1e-9))
        or (t0_hi > t0_lo and (best_t0 - t0_lo < 1e-12
                               or t0_hi - best_t0 < 1e-12)))
    return OptimizeEtaResult(omega_best, best_t0, float(best), bool(edge))


def recoil_sigma_eta(consts: AtomicConstants, waist: float,
                     lambda_c: float) -> float:
    """Storage lifetime set by the control-photon recoil, m w / (sqrt(2) hbar k_c)."""
    if waist <= 0 or lambda_c <= 0:
        raise ValueError("waist and lambda_c must be > 0")
    k_c = 2.0 * math.pi / lambda_c
    return consts.mass * waist / (SQRT2 * consts.hbar * k_c)


def eta_decay(t_store, eta0: float, sigma_eta: float):
    """Gaussian decay of the efficiency with storage time."""
    if sigma_eta <= 0:
        raise ValueError("sigma_eta must be > 0")
    return eta0 * np.exp(-np.asarray(t_store, float)**2
                         / (2.0 * sigma_eta**2))


def thermal_decay_time(temperature: float,
                       consts: AtomicConstants = RB87_D1,
                       lambda_p: float | None = None,
                       lambda_c: float | None = None,
                       angle_deg: float = 90.0) -> float:
    """Coarse storage-time scale of the uncondensed fraction.

    The thermal de-Broglie wavelength divided by the recoil velocity
    hbar |k_p - k_c| / m; probe and control propagate at ``angle_deg``
    (perpendicular for this level scheme).
    """
    if temperature <= 0:
        raise ValueError("temperature must be > 0")
    lambda_p = consts.lambda_p if lambda_p is None else lambda_p
    lambda_c = consts.lambda_p if lambda_c is None else lambda_c
    lambda_db = math.sqrt(2.0 * math.pi * consts.hbar**2
                          / (consts.mass * consts.k_b * temperature))
    k_p = 2.0 * math.pi / lambda_p
    k_c = 2.0 * math.pi / lambda_c
    dk = math.sqrt(k_p**2 + k_c**2
                   - 2.0 * k_p * k_c * math.cos(math.radians(angle_deg)))
    v_rel = consts.hbar * dk / consts.mass
    return lambda_db / v_rel


def bimodal_eta(t_store, condensate_fraction: float, sigma_bec: float,
                thermal_time: float):
    """Two-component decay, normalized to 1 at zero storage time.

    The condensed fraction decays on the recoil time scale sigma_bec, the
    thermal fraction on the much faster ``thermal_time``; at intermediate
    times the efficiency settles on a plateau at the condensate fraction.
    """
    if not 0.0 <= condensate_fraction <= 1.0:
        raise ValueError("condensate_fraction must lie in [0, 1]")
    if sigma_bec <= 0 or thermal_time <= 0:
        raise ValueError("decay times must be > 0")
    t2 = np.asarray(t_store, float)**2
    return condensate_fraction * np.exp(-t2 / (2.0 * sigma_bec**2)) \
        + (1.0 - condensate_fraction) * np.exp(-t2 / (2.0 * thermal_time**2))
