"""Steady and transient tissue temperature elevation from wave heating.

Solves the one-dimensional perfused-tissue heat equation

    rho c dT/dt = k d2T/dz2 - h_b (T - T_blood) + Q_m + S(z)

where S is the volumetric wave heating and h_b the perfusion heat
transfer coefficient.  The exposure-induced elevation theta = T - T_baseline
obeys the source-only steady equation k theta'' - h_b theta + S = 0, since
the pre-exposure baseline already balances Q_m, the blood supply and the
air interface.

Three solution routes are provided:

- a per-layer closed form.  With S(z) a sum of two real exponentials and
  one oscillatory term, a particular solution is available per component:
  substituting A*exp(-2*alpha*z) into k theta'' - h_b theta = -S gives
  A = -sigma |E+|^2 / (2 (4 alpha^2 k - h_b)), the growing exponential
  maps the same way, and the interference term sigma (u cos 2 beta z
  + v sin 2 beta z) yields amplitude sigma/(4 beta^2 k + h_b) for each
  quadrature.  Homogeneous coefficients then satisfy a small linear
  system from the surface flux condition, interface continuity of
  temperature and heat flux, and a zero elevation enforced at the bottom
  of the thermal domain.
- a finite-difference discretization of the identical boundary value
  problem, second order, kept deliberately independent of the closed form
  so each route checks the other.
- implicit time stepping of the transient equation on the same grid.

The homogeneous basis is stored as exp(-m z) and exp(-m (d - z)) per layer
(m = sqrt(h_b/k)) so matrix entries never exceed one regardless of layer
thickness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .dielectrics import Tissue, TissueThermalRecord, load_tissue_thermal
from .errors import DomainError, SolverError, StackError
from .multilayer import LayerFieldSolution, LayerStack
from .multilayer import ModelPreset, build_preset_stack, naked_counterpart
from .multilayer import PlaneWaveExcitation, clothing_power_sweep, solve_layer_fields

T_BLOOD_C = 37.0
T_AIR_C = 23.0
SURFACE_H_AIR = 7.0       # [W/m^2/degC] skin surface open to air
SURFACE_H_CLOTHED = 0.0   # clothing treated as a perfect thermal insulator

# Relative guard for the exponential particular-solution denominator.
_RESONANCE_RTOL = 1e-6


def heat_transfer_coefficient(
    layer: TissueThermalRecord,
    rho_blood: float | None = None,
    c_blood: float | None = None,
) -> float:
    """Perfusion heat transfer coefficient h_b [W/m^3/degC] for a tissue.

    Converts the tabulated perfusion (mL of blood per kg of tissue per
    minute) into a volumetric rate using the host tissue density, then
    scales by the volumetric heat capacity of blood:

        h_b = rho_blood * c_blood * (w * 1e-6 / 60) * rho_tissue
    """
    if rho_blood is None or c_blood is None:
        blood = load_tissue_thermal()[Tissue.BLOOD]
        rho_blood = blood.rho if rho_blood is None else rho_blood
        c_blood = blood.c if c_blood is None else c_blood
    return rho_blood * c_blood * (layer.w * 1e-6 / 60.0) * layer.rho


@dataclass(frozen=True)
class ThermalLayer:
    """One tissue slab of the thermal domain with its heating source.

    The source parameters come from the wave solution in the same slab:
    S(z) = (sigma/2) (ep2 e^{-2 alpha z} + em2 e^{2 alpha z}
                      + 2 u cos 2 beta z + 2 v sin 2 beta z).
    """

    label: str
    k: float             # thermal conductivity [W/m/degC]
    h_b: float           # perfusion coefficient [W/m^3/degC]
    rho: float
    c: float
    q_m: float
    thickness_m: float
    sigma: float
    alpha: float
    beta: float
    ep2: float           # |E+|^2 at the slab's upstream face
    em2: float           # |E-|^2 at the same reference
    u: float
    v: float

    def source_at(self, z_local) -> np.ndarray:
        z = np.asarray(z_local, dtype=float)
        if self.sigma == 0.0:
            return np.zeros(z.shape)
        return 0.5 * self.sigma * (
            self.ep2 * np.exp(-2.0 * self.alpha * z)
            + self.em2 * np.exp(2.0 * self.alpha * z)
            + 2.0 * self.u * np.cos(2.0 * self.beta * z)
            + 2.0 * self.v * np.sin(2.0 * self.beta * z)
        )


@dataclass(frozen=True)
class ThermalStack:
    layers: tuple[ThermalLayer, ...]
    surface_h: float

    def __post_init__(self):
        if not self.layers:
            raise StackError("thermal stack needs at least one layer")

    @property
    def total_depth_m(self) -> float:
        return sum(lay.thickness_m for lay in self.layers)

    @property
    def boundaries_m(self) -> np.ndarray:
        """Global depths of every face, surface first, bottom last."""
        return np.concatenate([[0.0], np.cumsum([l.thickness_m for l in self.layers])])


def build_thermal_stack(
    stack: LayerStack,
    solution: LayerFieldSolution,
    surface_h: float | None = None,
) -> ThermalStack:
    """Derive the thermal domain from a solved stack.

    Clothing is electromagnetically present but thermally absent: it is
    dropped here and accounted for through a zero surface heat transfer
    coefficient.  The semi-infinite backing layer is truncated to its
    tabulated thermal thickness, where the elevation is pinned to zero.
    Zero-thickness slabs are dropped (they carry no heat).
    """
    if len(stack.layers) != len(solution.layers):
        raise StackError("field solution does not match the stack")
    if surface_h is None:
        surface_h = SURFACE_H_CLOTHED if stack.has_clothing else SURFACE_H_AIR
    layers = []
    for lay, fld in zip(stack.layers, solution.layers):
        if lay.thermal is None:
            if lay.label != Tissue.CLOTHING.value:
                raise StackError(f"layer {lay.label!r} has no thermal properties")
            continue
        d = lay.thickness_m if lay.thickness_m is not None else lay.thermal.thickness_m
        if d is None:
            raise StackError(f"no thermal thickness for layer {lay.label!r}")
        if d == 0.0:
            continue
        w = fld.e_plus * fld.e_minus.conjugate()
        layers.append(
            ThermalLayer(
                label=lay.label,
                k=lay.thermal.k_thermal,
                h_b=heat_transfer_coefficient(lay.thermal),
                rho=lay.thermal.rho,
                c=lay.thermal.c,
                q_m=lay.thermal.q_m,
                thickness_m=d,
                sigma=fld.sigma,
                alpha=fld.alpha,
                beta=fld.beta,
                ep2=abs(fld.e_plus) ** 2,
                em2=abs(fld.e_minus) ** 2,
                u=w.real,
                v=w.imag,
            )
        )
    return ThermalStack(layers=tuple(layers), surface_h=surface_h)


# --------------------------------------------------------------------------- #
# Closed-form steady solution
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class _LayerTheta:
    """Closed-form pieces for one layer, in the layer's local coordinate."""

    m: float
    d: float
    coeff_a: float       # multiplies exp(-m z), or 1 when m == 0
    coeff_b: float       # multiplies exp(-m (d - z)), or z when m == 0
    amp_plus: float      # particular amplitude on exp(-2 alpha z)
    amp_minus: float     # particular amplitude on exp(+2 alpha z)
    psi_u: float         # particular amplitude on cos(2 beta z)
    psi_v: float         # particular amplitude on sin(2 beta z)
    alpha: float
    beta: float

    def particular(self, z):
        z = np.asarray(z, dtype=float)
        return (
            self.amp_plus * np.exp(-2.0 * self.alpha * z)
            + self.amp_minus * np.exp(2.0 * self.alpha * z)
            + self.psi_u * np.cos(2.0 * self.beta * z)
            + self.psi_v * np.sin(2.0 * self.beta * z)
        )

    def particular_deriv(self, z):
        z = np.asarray(z, dtype=float)
        return (
            -2.0 * self.alpha * self.amp_plus * np.exp(-2.0 * self.alpha * z)
            + 2.0 * self.alpha * self.amp_minus * np.exp(2.0 * self.alpha * z)
            + 2.0 * self.beta * (
                -self.psi_u * np.sin(2.0 * self.beta * z)
                + self.psi_v * np.cos(2.0 * self.beta * z)
            )
        )

    def homogeneous(self, z):
        z = np.asarray(z, dtype=float)
        if self.m == 0.0:
            return self.coeff_a + self.coeff_b * z
        return self.coeff_a * np.exp(-self.m * z) + self.coeff_b * np.exp(
            -self.m * (self.d - z)
        )

    def homogeneous_deriv(self, z):
        z = np.asarray(z, dtype=float)
        if self.m == 0.0:
            return np.full(z.shape, self.coeff_b)
        return -self.m * self.coeff_a * np.exp(-self.m * z) + self.m * self.coeff_b * np.exp(
            -self.m * (self.d - z)
        )

    def theta(self, z):
        return self.homogeneous(z) + self.particular(z)

    def theta_deriv(self, z):
        return self.homogeneous_deriv(z) + self.particular_deriv(z)


@dataclass(frozen=True)
class ThermalSolution:
    """Evaluable closed-form elevation profile over the thermal domain."""

    stack: ThermalStack
    pieces: tuple[_LayerTheta, ...]

    @property
    def boundaries_m(self) -> np.ndarray:
        return self.stack.boundaries_m

    def theta_at(self, z_m) -> np.ndarray | float:
        """Elevation [degC] at one depth or an array of depths in [0, bottom]."""
        z = np.asarray(z_m, dtype=float)
        scalar = z.ndim == 0
        z = np.atleast_1d(z)
        bounds = self.boundaries_m
        if np.any(z < -1e-15) or np.any(z > bounds[-1] + 1e-15):
            raise DomainError("depth outside the thermal domain")
        out = np.empty(z.shape)
        for i, piece in enumerate(self.pieces):
            lo, hi = bounds[i], bounds[i + 1]
            mask = (z >= lo) & (z < hi) if i < len(self.pieces) - 1 else (z >= lo)
            if np.any(mask):
                out[mask] = piece.theta(np.clip(z[mask] - lo, 0.0, piece.d))
        if scalar:
            return float(out[0])
        return out

    @property
    def theta_surface(self) -> float:
        return float(self.theta_at(0.0))


def _particular_pieces(lay: ThermalLayer) -> tuple[float, float, float, float]:
    """Particular-solution amplitudes for one layer's heating source."""
    denom_exp = 4.0 * lay.alpha**2 * lay.k - lay.h_b
    scale = max(4.0 * lay.alpha**2 * lay.k, lay.h_b, 1.0)
    if lay.sigma != 0.0 and (lay.ep2 or lay.em2) and abs(denom_exp) < _RESONANCE_RTOL * scale:
        raise SolverError(
            "exponential source resonates with the perfusion length scale; "
            "use the finite-difference solver for this parameter set"
        )
    if lay.sigma == 0.0:
        return 0.0, 0.0, 0.0, 0.0
    amp_plus = -lay.sigma * lay.ep2 / (2.0 * denom_exp) if lay.ep2 else 0.0
    amp_minus = -lay.sigma * lay.em2 / (2.0 * denom_exp) if lay.em2 else 0.0
    denom_osc = 4.0 * lay.beta**2 * lay.k + lay.h_b
    psi_u = lay.sigma * lay.u / denom_osc
    psi_v = lay.sigma * lay.v / denom_osc
    return amp_plus, amp_minus, psi_u, psi_v


def solve_steady_theta(thermal: ThermalStack) -> ThermalSolution:
    """Closed-form steady elevation for the whole thermal domain.

    Builds the per-layer particular solutions, then determines the two
    homogeneous coefficients of every layer from the surface condition
    k theta'(0) = h theta(0), temperature and flux continuity at interior
    interfaces, and theta = 0 at the bottom face.
    """
    lays = thermal.layers
    n = len(lays)
    protos = []
    for lay in lays:
        amp_plus, amp_minus, psi_u, psi_v = _particular_pieces(lay)
        protos.append(
            _LayerTheta(
                m=math.sqrt(lay.h_b / lay.k),
                d=lay.thickness_m,
                coeff_a=1.0,
                coeff_b=0.0,
                amp_plus=amp_plus,
                amp_minus=amp_minus,
                psi_u=psi_u,
                psi_v=psi_v,
                alpha=lay.alpha,
                beta=lay.beta,
            )
        )

    def basis(piece: _LayerTheta, z: float) -> tuple[float, float]:
        if piece.m == 0.0:
            return 1.0, z
        return math.exp(-piece.m * z), math.exp(-piece.m * (piece.d - z))

    def basis_deriv(piece: _LayerTheta, z: float) -> tuple[float, float]:
        if piece.m == 0.0:
            return 0.0, 1.0
        return (
            -piece.m * math.exp(-piece.m * z),
            piece.m * math.exp(-piece.m * (piece.d - z)),
        )

    size = 2 * n
    a = np.zeros((size, size))
    b = np.zeros(size)

    # Surface: k theta'(0) - h theta(0) = 0.
    p0 = protos[0]
    h = thermal.surface_h
    k0 = lays[0].k
    b1, b2 = basis(p0, 0.0)
    db1, db2 = basis_deriv(p0, 0.0)
    a[0, 0] = k0 * db1 - h * b1
    a[0, 1] = k0 * db2 - h * b2
    b[0] = h * float(p0.particular(0.0)) - k0 * float(p0.particular_deriv(0.0))

    r = 1
    for i in range(n - 1):
        pi, pj = protos[i], protos[i + 1]
        ki, kj = lays[i].k, lays[i + 1].k
        di = pi.d
        bi1, bi2 = basis(pi, di)
        dbi1, dbi2 = basis_deriv(pi, di)
        bj1, bj2 = basis(pj, 0.0)
        dbj1, dbj2 = basis_deriv(pj, 0.0)
        ci, cj = 2 * i, 2 * (i + 1)
        # temperature continuity
        a[r, ci], a[r, ci + 1] = bi1, bi2
        a[r, cj], a[r, cj + 1] = -bj1, -bj2
        b[r] = float(pj.particular(0.0)) - float(pi.particular(di))
        r += 1
        # heat flux continuity
        a[r, ci], a[r, ci + 1] = ki * dbi1, ki * dbi2
        a[r, cj], a[r, cj + 1] = -kj * dbj1, -kj * dbj2
        b[r] = kj * float(pj.particular_deriv(0.0)) - ki * float(pi.particular_deriv(di))
        r += 1

    pn = protos[-1]
    bn1, bn2 = basis(pn, pn.d)
    a[r, 2 * (n - 1)], a[r, 2 * (n - 1) + 1] = bn1, bn2
    b[r] = -float(pn.particular(pn.d))

    try:
        coeffs = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"closed-form coefficient system is singular: {exc}") from exc

    pieces = tuple(
        _LayerTheta(
            m=p.m,
            d=p.d,
            coeff_a=float(coeffs[2 * i]),
            coeff_b=float(coeffs[2 * i + 1]),
            amp_plus=p.amp_plus,
            amp_minus=p.amp_minus,
            psi_u=p.psi_u,
            psi_v=p.psi_v,
            alpha=p.alpha,
            beta=p.beta,
        )
        for i, p in enumerate(protos)
    )
    return ThermalSolution(stack=thermal, pieces=pieces)


# --------------------------------------------------------------------------- #
# Finite-difference route
# --------------------------------------------------------------------------- #

MAX_FD_STEP_M = 50e-6


@dataclass(frozen=True)
class FDSolution:
    z_m: np.ndarray
    theta: np.ndarray

    def theta_at(self, z_m) -> np.ndarray | float:
        return np.interp(z_m, self.z_m, self.theta)

    @property
    def theta_surface(self) -> float:
        return float(self.theta[0])


def _grid(thermal: ThermalStack, grid_step: float):
    """Per-layer uniform grids whose nodes land exactly on interfaces."""
    if grid_step > MAX_FD_STEP_M:
        raise DomainError(
            f"grid step {grid_step} m too coarse; need <= {MAX_FD_STEP_M} m"
        )
    if grid_step <= 0:
        raise DomainError("grid step must be positive")
    counts = [max(1, round(lay.thickness_m / grid_step)) for lay in thermal.layers]
    steps = [lay.thickness_m / nc for lay, nc in zip(thermal.layers, counts)]
    return counts, steps


def _assemble_fd(
    thermal: ThermalStack,
    grid_step: float,
    source_values: list[np.ndarray],
    robin_offset: float = 0.0,
):
    """Banded steady system L theta = rhs plus node metadata.

    Interior rows are central differences of k theta'' - h_b theta + S.
    The surface row eliminates a ghost node against the flux condition
    k theta'(0) = h theta(0) + robin_offset.  Interface rows are control
    volume balances over the two half cells meeting there.  The bottom row
    pins theta to zero.  Also returns the per-node heat capacity for time
    stepping (zero on the constrained bottom row).
    """
    counts, steps = _grid(thermal, grid_step)
    lays = thermal.layers
    ntot = sum(counts) + 1
    lo = np.zeros(ntot)
    di = np.zeros(ntot)
    up = np.zeros(ntot)
    rhs = np.zeros(ntot)
    capacity = np.zeros(ntot)
    z_nodes = np.empty(ntot)

    base = 0.0
    idx = 0
    for si, (lay, nc, h) in enumerate(zip(lays, counts, steps)):
        src = source_values[si]
        for j in range(nc + 1):
            g = idx + j
            z_nodes[g] = base + j * h
            if j == 0:
                if si == 0:
                    di[g] = -2.0 * lay.k / h**2 - 2.0 * thermal.surface_h / h - lay.h_b
                    up[g] = 2.0 * lay.k / h**2
                    rhs[g] = -src[0] + 2.0 * robin_offset / h
                    capacity[g] = lay.rho * lay.c
                else:
                    prev = lays[si - 1]
                    hp = steps[si - 1]
                    w = 0.5 * (hp + h)
                    lo[g] = prev.k / hp / w
                    di[g] = (
                        -(prev.k / hp + lay.k / h) / w
                        - (prev.h_b * hp + lay.h_b * h) / (2.0 * w)
                    )
                    up[g] = lay.k / h / w
                    rhs[g] = -(
                        source_values[si - 1][-1] * hp + src[0] * h
                    ) / (2.0 * w)
                    capacity[g] = (prev.rho * prev.c * hp + lay.rho * lay.c * h) / (2.0 * w)
            elif j == nc and si == len(lays) - 1:
                di[g] = 1.0
                rhs[g] = 0.0
            elif j < nc:
                lo[g] = lay.k / h**2
                di[g] = -2.0 * lay.k / h**2 - lay.h_b
                up[g] = lay.k / h**2
                rhs[g] = -src[j]
                capacity[g] = lay.rho * lay.c
        idx += nc
        base += lay.thickness_m

    ab = np.zeros((3, ntot))
    ab[0, 1:] = up[:-1]
    ab[1, :] = di
    ab[2, :-1] = lo[1:]
    return ab, rhs, z_nodes, capacity, counts, steps


def _wave_source_values(thermal: ThermalStack, counts, steps) -> list[np.ndarray]:
    return [
        lay.source_at(np.arange(nc + 1) * h)
        for lay, nc, h in zip(thermal.layers, counts, steps)
    ]


def solve_steady_theta_fd(thermal: ThermalStack, grid_step: float) -> FDSolution:
    """Finite-difference steady elevation on an interface-aligned grid."""
    counts, steps = _grid(thermal, grid_step)
    sources = _wave_source_values(thermal, counts, steps)
    ab, rhs, z_nodes, _, _, _ = _assemble_fd(thermal, grid_step, sources)
    try:
        theta = solve_banded((1, 1), ab, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"finite-difference system is singular: {exc}") from exc
    if not np.all(np.isfinite(theta)):
        raise SolverError("finite-difference solve produced non-finite values")
    return FDSolution(z_m=z_nodes, theta=theta)


def baseline_temperature_fd(thermal: ThermalStack, grid_step: float) -> FDSolution:
    """Absolute pre-exposure steady temperature profile [degC].

    Solves the same boundary value problem with the metabolic heat as the
    only source, the surface exchanging with air at its actual temperature
    and the bottom pinned to blood temperature.
    """
    counts, steps = _grid(thermal, grid_step)
    sources = [np.full(nc + 1, lay.q_m) for lay, nc in zip(thermal.layers, counts)]
    offset = -thermal.surface_h * (T_AIR_C - T_BLOOD_C)
    ab, rhs, z_nodes, _, _, _ = _assemble_fd(thermal, grid_step, sources, robin_offset=offset)
    try:
        u = solve_banded((1, 1), ab, rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"baseline system is singular: {exc}") from exc
    return FDSolution(z_m=z_nodes, theta=u + T_BLOOD_C)


@dataclass(frozen=True)
class TransientSolution:
    times_s: np.ndarray
    z_m: np.ndarray
    theta: np.ndarray            # elevation profiles, one row per sample time
    temperature: np.ndarray | None = None  # absolute profiles when requested

    def surface_history(self) -> np.ndarray:
        return self.theta[:, 0]


def solve_transient_theta(
    thermal: ThermalStack,
    duration_s: float,
    time_step_s: float,
    grid_step: float = 20e-6,
    n_samples: int = 25,
    include_baseline: bool = False,
) -> TransientSolution:
    """Implicit time stepping of the elevation from a cold start.

    Backward Euler on the same spatial operator as the steady solver, so
    the long-time limit is the steady profile by construction.  Profiles
    are sampled at n_samples evenly spaced times including the end.  With
    include_baseline the pre-exposure absolute temperature is added to
    each sample.
    """
    if duration_s <= 0 or time_step_s <= 0:
        raise DomainError("duration and time step must be positive")
    n_steps = int(math.ceil(duration_s / time_step_s))
    if n_steps > 2_000_000:
        raise DomainError("time stepping configuration needs too many steps")
    counts, steps = _grid(thermal, grid_step)
    sources = _wave_source_values(thermal, counts, steps)
    ab, rhs, z_nodes, capacity, _, _ = _assemble_fd(thermal, grid_step, sources)

    # (C/dt - L) theta_new = C/dt theta_old - rhs, C zero on the pinned row.
    lhs = -ab.copy()
    lhs[1, :] += capacity / time_step_s
    sample_idx = sorted(
        {max(1, round(s)) for s in np.linspace(1, n_steps, min(n_samples, n_steps))}
    )
    theta = np.zeros(z_nodes.shape)
    out_times = []
    out_profiles = []
    for step in range(1, n_steps + 1):
        b = capacity / time_step_s * theta - rhs
        theta = solve_banded((1, 1), lhs, b)
        if step in sample_idx:
            out_times.append(step * time_step_s)
            out_profiles.append(theta.copy())
    times = np.array(out_times)
    profiles = np.array(out_profiles)
    temperature = None
    if include_baseline:
        baseline = baseline_temperature_fd(thermal, grid_step)
        temperature = profiles + baseline.theta[np.newaxis, :]
    return TransientSolution(
        times_s=times, z_m=z_nodes, theta=profiles, temperature=temperature
    )


# --------------------------------------------------------------------------- #
# Scenario helpers
# --------------------------------------------------------------------------- #


def solve_preset_theta(
    preset: ModelPreset,
    frequency_hz: float,
    power_density: float,
    clothing_thickness_m: float | None = None,
) -> ThermalSolution:
    """Fields plus closed-form elevation for a preset in one call."""
    kwargs = {}
    if clothing_thickness_m is not None:
        kwargs["clothing_thickness_m"] = clothing_thickness_m
    stack = build_preset_stack(ModelPreset(preset), frequency_hz, **kwargs)
    fields = solve_layer_fields(stack, PlaneWaveExcitation(frequency_hz, power_density))
    return solve_steady_theta(build_thermal_stack(stack, fields))


@dataclass(frozen=True)
class ClothingThetaPoint:
    thickness_m: float
    theta_surface: float
    into_skin_fraction: float
    t_air_clothing: float
    t_clothing_skin: float


def clothing_thickness_temperature_sweep(
    preset: ModelPreset,
    thicknesses_m,
    frequency_hz: float,
    power_density: float,
) -> list[ClothingThetaPoint]:
    """Surface elevation and transmitted power versus clothing thickness.

    Zero thickness solves the naked counterpart (surface open to air), so
    the first point of a from-zero sweep doubles as the no-clothing
    reference.
    """
    preset = ModelPreset(preset)
    em_points = clothing_power_sweep(preset, thicknesses_m, frequency_hz, power_density)
    out = []
    for pt in em_points:
        if pt.thickness_m == 0.0:
            target = naked_counterpart(preset)
            stack = build_preset_stack(target, frequency_hz)
        else:
            stack = build_preset_stack(
                preset, frequency_hz, clothing_thickness_m=pt.thickness_m
            )
        fields = solve_layer_fields(
            stack, PlaneWaveExcitation(frequency_hz, power_density)
        )
        theta = solve_steady_theta(build_thermal_stack(stack, fields))
        out.append(
            ClothingThetaPoint(
                thickness_m=pt.thickness_m,
                theta_surface=theta.theta_surface,
                into_skin_fraction=pt.into_skin_fraction,
                t_air_clothing=pt.t_air_clothing,
                t_clothing_skin=pt.t_clothing_skin,
            )
        )
    return out
