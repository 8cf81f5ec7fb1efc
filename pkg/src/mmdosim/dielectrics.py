"""Tissue and skin dielectric data with conductivity/loss-factor conversions.

Bundles three measurement tables used throughout the package:

- six skin permittivity models at 28, 60 and 73 GHz, attributed to the
  measurement studies of Gandhi, Gabriel, Chahat (palm and wrist/forearm)
  and Alekseev (palm and forearm);
- relative permittivity and conductivity for skin, SAT (subcutaneous
  adipose tissue), muscle and bone at 40, 60, 80 and 100 GHz;
- thermal properties (density, specific heat, conductivity, perfusion,
  metabolic heat, layer thickness) for the same tissues plus blood.

Sign convention, fixed package-wide: eps* = eps' - j*eps'' with exp(+j*w*t)
time dependence, eps'' >= 0 for passive media.  Clothing is modelled as a
frequency-independent eps* = 1.6 - j*0.06 (denim, measured near 40 GHz).

Values are loaded from CSV files shipped in ``mmdosim/data``; callers may
pass a path to an override file with the same header to substitute their
own measurements.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib.resources import files

from .constants import EPS_0
from .errors import DomainError, FrequencyRangeError

# --------------------------------------------------------------------------- #
# Identifiers and bundled coverage
# --------------------------------------------------------------------------- #


class SkinModel(str, Enum):
    """Skin permittivity models named after the measuring researchers."""

    GANDHI = "gandhi"
    GABRIEL = "gabriel"
    CHAHAT_PALM = "chahat_palm"
    CHAHAT_WRIST_FOREARM = "chahat_wrist_forearm"
    ALEKSEEV_PALM = "alekseev_palm"
    ALEKSEEV_FOREARM = "alekseev_forearm"


class Tissue(str, Enum):
    SKIN = "skin"
    SAT = "sat"
    MUSCLE = "muscle"
    BONE = "bone"
    BLOOD = "blood"
    CLOTHING = "clothing"


SKIN_MODEL_FREQS_GHZ = (28.0, 60.0, 73.0)
TISSUE_FREQS_GHZ = (40.0, 60.0, 80.0, 100.0)

# Denim-like clothing, loss factor stored non-negative per the sign convention.
CLOTHING_EPS_REAL = 1.6
CLOTHING_EPS_IMAG = 0.06

# Frequency match tolerance for "exactly tabulated" lookups [GHz].
_FREQ_TOL_GHZ = 1e-6


# --------------------------------------------------------------------------- #
# Record types
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ComplexPermittivity:
    """Relative complex permittivity eps* = eps_real - j*eps_imag.

    Parameters
    ----------
    eps_real : float
        Real part, must be positive.
    eps_imag : float
        Loss factor, stored non-negative.
    interpolated : bool
        True when the value came from interpolation between tabulated
        frequencies rather than a direct table row.
    """

    eps_real: float
    eps_imag: float
    interpolated: bool = False

    def __post_init__(self):
        if not self.eps_real > 0:
            raise DomainError(f"eps_real must be positive, got {self.eps_real}")
        if self.eps_imag < 0:
            raise DomainError(f"eps_imag must be non-negative, got {self.eps_imag}")

    @property
    def as_complex(self) -> complex:
        return complex(self.eps_real, -self.eps_imag)

    def conductivity(self, frequency_hz: float) -> float:
        """Equivalent conductivity [S/m] at the given frequency."""
        return eps_imag_to_sigma(self.eps_imag, frequency_hz)


@dataclass(frozen=True)
class SkinModelRecord:
    model: SkinModel
    frequency_ghz: float
    permittivity: ComplexPermittivity


@dataclass(frozen=True)
class TissueDielectricRecord:
    tissue: Tissue
    frequency_ghz: float
    eps_real: float
    sigma: float  # [S/m]


@dataclass(frozen=True)
class TissueThermalRecord:
    tissue: Tissue
    rho: float          # mass density [kg/m^3]
    c: float            # specific heat [J/kg/degC]
    k_thermal: float    # thermal conductivity [W/m/degC]
    w: float            # blood perfusion [mL/kg/min]
    q_m: float          # metabolic heat [W/m^3]
    thickness_m: float | None  # None where no layer thickness applies (blood)


# --------------------------------------------------------------------------- #
# Conductivity conversions
# --------------------------------------------------------------------------- #


def sigma_to_eps_imag(sigma: float, frequency_hz: float) -> float:
    """Convert conductivity [S/m] to the dimensionless loss factor eps''.

    Uses eps'' = sigma / (2 pi f eps_0) with the package's rounded eps_0.

    Parameters
    ----------
    sigma : float
        Conductivity in S/m, non-negative.
    frequency_hz : float
        Frequency in Hz, positive.
    """
    if frequency_hz <= 0:
        raise DomainError(f"frequency must be positive, got {frequency_hz}")
    if sigma < 0:
        raise DomainError(f"conductivity must be non-negative, got {sigma}")
    return sigma / (2.0 * math.pi * frequency_hz * EPS_0)


def eps_imag_to_sigma(eps_imag: float, frequency_hz: float) -> float:
    """Exact inverse of :func:`sigma_to_eps_imag`."""
    if frequency_hz <= 0:
        raise DomainError(f"frequency must be positive, got {frequency_hz}")
    if eps_imag < 0:
        raise DomainError(f"eps_imag must be non-negative, got {eps_imag}")
    return eps_imag * 2.0 * math.pi * frequency_hz * EPS_0


# --------------------------------------------------------------------------- #
# Bundled table loading
# --------------------------------------------------------------------------- #


def _read_data_text(name: str, path: str | None) -> str:
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    return _bundled_text(name)


@lru_cache(maxsize=None)
def _bundled_text(name: str) -> str:
    return (files("mmdosim.data") / name).read_text(encoding="utf-8")


def load_skin_models(path: str | None = None) -> dict[tuple[SkinModel, float], SkinModelRecord]:
    """Load the skin model permittivity table, keyed by (model, frequency_GHz)."""
    text = _read_data_text("skin_models.csv", path)
    out: dict[tuple[SkinModel, float], SkinModelRecord] = {}
    for row in csv.DictReader(io.StringIO(text)):
        model = SkinModel(row["model"])
        f_ghz = float(row["frequency_GHz"])
        perm = ComplexPermittivity(float(row["eps_real"]), float(row["eps_imag"]))
        out[(model, f_ghz)] = SkinModelRecord(model, f_ghz, perm)
    return out


def load_tissue_dielectrics(path: str | None = None) -> dict[tuple[Tissue, float], TissueDielectricRecord]:
    """Load the tissue permittivity/conductivity table, keyed by (tissue, frequency_GHz)."""
    text = _read_data_text("tissue_dielectrics.csv", path)
    out: dict[tuple[Tissue, float], TissueDielectricRecord] = {}
    for row in csv.DictReader(io.StringIO(text)):
        tissue = Tissue(row["tissue"])
        f_ghz = float(row["frequency_GHz"])
        out[(tissue, f_ghz)] = TissueDielectricRecord(
            tissue, f_ghz, float(row["eps_real"]), float(row["sigma_S_per_m"])
        )
    return out


def load_tissue_thermal(path: str | None = None) -> dict[Tissue, TissueThermalRecord]:
    """Load the tissue thermal property table, keyed by tissue."""
    text = _read_data_text("tissue_thermal.csv", path)
    out: dict[Tissue, TissueThermalRecord] = {}
    for row in csv.DictReader(io.StringIO(text)):
        tissue = Tissue(row["tissue"])
        thick = row["thickness_mm"].strip()
        out[tissue] = TissueThermalRecord(
            tissue=tissue,
            rho=float(row["rho_kg_per_m3"]),
            c=float(row["c_J_per_kg_degC"]),
            k_thermal=float(row["k_W_per_m_degC"]),
            w=float(row["w_mL_per_kg_min"]),
            q_m=float(row["q_m_W_per_m3"]),
            thickness_m=float(thick) * 1e-3 if thick else None,
        )
    return out


# --------------------------------------------------------------------------- #
# Lookups
# --------------------------------------------------------------------------- #


def lookup_skin_model(
    model: SkinModel,
    frequency_hz: float,
    table: dict[tuple[SkinModel, float], SkinModelRecord] | None = None,
) -> ComplexPermittivity:
    """Permittivity of a skin model at a frequency in the 28-73 GHz band.

    Returns the tabulated value at 28, 60 or 73 GHz.  At intermediate
    frequencies eps' and eps'' are linearly interpolated per component and
    the result carries ``interpolated=True``.  No extrapolation: outside
    [28, 73] GHz a :class:`FrequencyRangeError` is raised.
    """
    model = SkinModel(model)
    if table is None:
        table = load_skin_models()
    f_ghz = frequency_hz / 1e9
    for f_tab in SKIN_MODEL_FREQS_GHZ:
        if abs(f_ghz - f_tab) <= _FREQ_TOL_GHZ:
            return table[(model, f_tab)].permittivity
    lo, hi = SKIN_MODEL_FREQS_GHZ[0], SKIN_MODEL_FREQS_GHZ[-1]
    if not lo <= f_ghz <= hi:
        raise FrequencyRangeError(
            f"skin models cover {lo:g}-{hi:g} GHz, got {f_ghz:g} GHz"
        )
    for f_lo, f_hi in zip(SKIN_MODEL_FREQS_GHZ, SKIN_MODEL_FREQS_GHZ[1:]):
        if f_lo <= f_ghz <= f_hi:
            a = table[(model, f_lo)].permittivity
            b = table[(model, f_hi)].permittivity
            t = (f_ghz - f_lo) / (f_hi - f_lo)
            return ComplexPermittivity(
                eps_real=a.eps_real + t * (b.eps_real - a.eps_real),
                eps_imag=a.eps_imag + t * (b.eps_imag - a.eps_imag),
                interpolated=True,
            )
    raise FrequencyRangeError(f"no bracketing interval for {f_ghz:g} GHz")


def lookup_tissue_dielectric(
    tissue: Tissue,
    frequency_hz: float,
    table: dict[tuple[Tissue, float], TissueDielectricRecord] | None = None,
) -> TissueDielectricRecord:
    """Tabulated (eps', sigma) for a tissue at an exactly covered frequency.

    The tissue table is not interpolated; frequencies other than
    40/60/80/100 GHz raise :class:`FrequencyRangeError`.
    """
    tissue = Tissue(tissue)
    if tissue in (Tissue.BLOOD, Tissue.CLOTHING):
        raise DomainError(f"no tabulated dielectric row for {tissue.value}")
    if table is None:
        table = load_tissue_dielectrics()
    f_ghz = frequency_hz / 1e9
    for f_tab in TISSUE_FREQS_GHZ:
        if abs(f_ghz - f_tab) <= _FREQ_TOL_GHZ:
            return table[(tissue, f_tab)]
    raise FrequencyRangeError(
        f"tissue dielectrics are tabulated at {TISSUE_FREQS_GHZ} GHz only, got {f_ghz:g} GHz"
    )


def tissue_permittivity(
    tissue: Tissue,
    frequency_hz: float,
    table: dict[tuple[Tissue, float], TissueDielectricRecord] | None = None,
) -> ComplexPermittivity:
    """Complex permittivity of a tissue (or clothing) at a frequency.

    Tissues convert their tabulated conductivity to a loss factor at the
    requested frequency.  Clothing returns the frequency-independent
    eps* = 1.6 - j*0.06 at any positive frequency.
    """
    tissue = Tissue(tissue)
    if tissue is Tissue.CLOTHING:
        if frequency_hz <= 0:
            raise DomainError(f"frequency must be positive, got {frequency_hz}")
        return ComplexPermittivity(CLOTHING_EPS_REAL, CLOTHING_EPS_IMAG)
    rec = lookup_tissue_dielectric(tissue, frequency_hz, table)
    return ComplexPermittivity(rec.eps_real, sigma_to_eps_imag(rec.sigma, frequency_hz))


def thermal_record(
    tissue: Tissue,
    table: dict[Tissue, TissueThermalRecord] | None = None,
) -> TissueThermalRecord:
    """Thermal properties of a tissue (clothing carries none)."""
    tissue = Tissue(tissue)
    if tissue is Tissue.CLOTHING:
        raise DomainError("clothing has no thermal record; it is outside the heat domain")
    if table is None:
        table = load_tissue_thermal()
    return table[tissue]
