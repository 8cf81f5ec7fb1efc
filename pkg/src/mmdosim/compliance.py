"""Exposure limit catalog, far-field estimates and compliance verdicts.

The regulatory content lives in ``data/exposure_limits.json`` as piecewise
band records, one entry per standard, population and peak/basic selection,
each carrying the clause text it was transcribed from.  This module only
evaluates those records; changing a limit never means changing code.

A verdict is refused closer than max(5 cm, Fraunhofer distance) from the
radiator, where the plane-wave power density estimate stops being
meaningful.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources

from .constants import C_0
from .errors import (
    DomainError,
    FrequencyRangeError,
    LimitNotDefinedError,
    NearFieldError,
)

MIN_MEASUREMENT_DISTANCE_M = 0.05


class Standard(str, Enum):
    ICNIRP = "icnirp"
    FCC_MPE = "fcc_mpe"
    IEEE_1992_PEAK = "ieee_1992_peak"
    IEEE_2005 = "ieee_2005"


class Population(str, Enum):
    GENERAL_PUBLIC = "general"       # aka uncontrolled environment
    OCCUPATIONAL = "occupational"    # aka controlled environment


class Verdict(str, Enum):
    COMPLIANT = "Compliant"
    NON_COMPLIANT = "NonCompliant"
    NEAR_FIELD_INDETERMINATE = "NearFieldIndeterminate"


@dataclass(frozen=True)
class ExposureContext:
    standard: Standard
    population: Population
    frequency_hz: float
    localized_peak: bool = False

    def __post_init__(self):
        if self.frequency_hz <= 0:
            raise DomainError("frequency must be positive")


@dataclass(frozen=True)
class LimitRecord:
    """A resolved limit at one frequency, with its averaging rules."""

    standard: Standard
    population: Population
    frequency_hz: float
    localized_peak: bool
    pd_limit: float                    # [W/m^2]
    averaging_area_m2: float | None    # None when the rule is not an area in m^2
    averaging_area_label: str
    averaging_time_min: float
    source_clause: str

    def __post_init__(self):
        if self.pd_limit <= 0:
            raise DomainError("limit must be positive")
        if self.averaging_time_min <= 0:
            raise DomainError("averaging time must be positive")


@dataclass(frozen=True)
class DeviceFarFieldDescriptor:
    """Radiator model for the inverse-square far-field estimate."""

    radiated_power_w: float
    antenna_gain: float          # linear
    largest_dimension_m: float
    distance_m: float
    frequency_hz: float | None = None

    def __post_init__(self):
        for name in ("radiated_power_w", "antenna_gain", "largest_dimension_m", "distance_m"):
            if getattr(self, name) <= 0:
                raise DomainError(f"{name} must be positive")


@dataclass(frozen=True)
class ComplianceReport:
    context: ExposureContext
    device: DeviceFarFieldDescriptor
    limits: tuple[LimitRecord, ...]   # governing record first
    power_density: float | None       # None when the verdict is refused
    verdict: Verdict
    margin_db: float | None           # +: below the limit, -: above
    near_field_boundary_m: float

    @property
    def governing_limit(self) -> LimitRecord:
        return self.limits[0]


@lru_cache(maxsize=4)
def _bundled_catalog() -> dict:
    text = (resources.files("mmdosim.data") / "exposure_limits.json").read_text()
    return json.loads(text)


def load_limit_catalog(path=None) -> dict:
    """Parsed limit catalog, from the bundled data file or an override."""
    if path is None:
        return _bundled_catalog()
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _eval_record(rec: dict, f_ghz: float) -> float:
    if rec["form"] == "constant":
        return rec["value"]
    if rec["form"] == "power_law":
        return rec["scale"] * (f_ghz / rec["f_divisor_GHz"]) ** rec["exponent"]
    raise DomainError(f"unknown record form {rec['form']!r}")


def _pick_band(records: list[dict], f_ghz: float) -> dict:
    """Band lists are ordered, half open on the right except the last."""
    for i, rec in enumerate(records):
        lo, hi = rec["band_GHz"]
        if lo <= f_ghz < hi or (i == len(records) - 1 and f_ghz == hi):
            return rec
    raise FrequencyRangeError(
        f"{f_ghz} GHz outside the bands "
        f"{records[0]['band_GHz'][0]}-{records[-1]['band_GHz'][1]} GHz"
    )


def _eval_area(records, f_ghz: float) -> tuple[float | None, str]:
    if records is None:
        return None, "not specified"
    rec = _pick_band(records, f_ghz)
    if rec["form"] == "area_cm2":
        return rec["value"] * 1e-4, f"{rec['value']:g} cm^2"
    if rec["form"] == "whole_body_projected":
        return None, "whole-body projected area"
    if rec["form"] == "area_lambda2_cm2":
        lambda_cm = C_0 / (f_ghz * 1e9) * 100.0
        area_cm2 = rec["scale"] * lambda_cm**2
        return area_cm2 * 1e-4, f"{rec['scale']:g} lambda^2 = {area_cm2:.4g} cm^2"
    raise DomainError(f"unknown area form {rec['form']!r}")


def limit_for(context: ExposureContext, catalog: dict | None = None) -> LimitRecord:
    """Resolve the applicable power density limit for an exposure context.

    Standards whose catalog entries are peak-only relaxations answer any
    query within band (the peak flag is implied).  A peak query against a
    standard that defines no peak limit is an error carrying the guidance
    text, not a silent fallback to the basic limit.
    """
    catalog = catalog if catalog is not None else load_limit_catalog()
    std = catalog[Standard(context.standard).value]
    f_ghz = context.frequency_hz / 1e9
    lo, hi = std["band_GHz"]
    if not (lo <= f_ghz <= hi):
        raise FrequencyRangeError(
            f"{std['name']}: {f_ghz:g} GHz outside the {lo:g}-{hi:g} GHz band"
        )
    selection = std["selection"]
    want_peak = context.localized_peak
    if selection == "basic_only" and want_peak:
        raise LimitNotDefinedError(std["peak_guidance"])
    entry = None
    for cand in std["entries"]:
        if cand["population"] != Population(context.population).value:
            continue
        if selection == "basic_and_peak" and cand["localized_peak"] != want_peak:
            continue
        entry = cand
        break
    if entry is None:
        raise LimitNotDefinedError(
            f"{std['name']}: no entry for population {context.population}"
        )
    pd_limit = _eval_record(_pick_band(entry["limit"], f_ghz), f_ghz)
    area_m2, area_label = _eval_area(entry["averaging_area"], f_ghz)
    time_min = _eval_record(_pick_band(entry["averaging_time"], f_ghz), f_ghz)
    return LimitRecord(
        standard=Standard(context.standard),
        population=Population(context.population),
        frequency_hz=context.frequency_hz,
        localized_peak=bool(entry["localized_peak"]),
        pd_limit=pd_limit,
        averaging_area_m2=area_m2,
        averaging_area_label=area_label,
        averaging_time_min=time_min,
        source_clause=entry["clause"],
    )


def fraunhofer_distance(largest_dimension_m: float, frequency_hz: float) -> float:
    """Far-field boundary 2 D^2 / lambda for a radiator of size D."""
    if largest_dimension_m <= 0 or frequency_hz <= 0:
        raise DomainError("dimension and frequency must be positive")
    wavelength = C_0 / frequency_hz
    return 2.0 * largest_dimension_m**2 / wavelength


def far_field_pd(
    device: DeviceFarFieldDescriptor, frequency_hz: float | None = None
) -> float:
    """Inverse-square power density G P / (4 pi d^2) at the device distance.

    When a frequency is known (argument or descriptor field) the distance
    is checked against the Fraunhofer boundary first; inside it the
    estimate is invalid and a near-field refusal is raised instead.
    """
    freq = frequency_hz if frequency_hz is not None else device.frequency_hz
    if freq is not None:
        boundary = fraunhofer_distance(device.largest_dimension_m, freq)
        if device.distance_m < boundary:
            raise NearFieldError(device.distance_m, boundary)
    return device.antenna_gain * device.radiated_power_w / (
        4.0 * math.pi * device.distance_m**2
    )


def gain_db_to_linear(gain_db: float) -> float:
    return 10.0 ** (gain_db / 10.0)


def evaluate(
    device: DeviceFarFieldDescriptor,
    context: ExposureContext,
    catalog: dict | None = None,
) -> ComplianceReport:
    """Compare the far-field estimate at the device distance to the limit.

    Closer than max(5 cm, Fraunhofer distance) no verdict is issued: the
    report comes back NearFieldIndeterminate with the resolved limits but
    no power density or margin.  The margin is 10 log10(limit / PD),
    positive when the exposure is below the limit.
    """
    governing = limit_for(context, catalog)
    limits = [governing]
    cat = catalog if catalog is not None else load_limit_catalog()
    if cat[Standard(context.standard).value]["selection"] == "basic_and_peak" and not context.localized_peak:
        peak_ctx = ExposureContext(
            standard=context.standard,
            population=context.population,
            frequency_hz=context.frequency_hz,
            localized_peak=True,
        )
        limits.append(limit_for(peak_ctx, catalog))
    boundary = max(
        MIN_MEASUREMENT_DISTANCE_M,
        fraunhofer_distance(device.largest_dimension_m, context.frequency_hz),
    )
    if device.distance_m < boundary:
        return ComplianceReport(
            context=context,
            device=device,
            limits=tuple(limits),
            power_density=None,
            verdict=Verdict.NEAR_FIELD_INDETERMINATE,
            margin_db=None,
            near_field_boundary_m=boundary,
        )
    pd = far_field_pd(device, context.frequency_hz)
    margin = 10.0 * math.log10(governing.pd_limit / pd)
    verdict = Verdict.COMPLIANT if pd <= governing.pd_limit else Verdict.NON_COMPLIANT
    return ComplianceReport(
        context=context,
        device=device,
        limits=tuple(limits),
        power_density=pd,
        verdict=verdict,
        margin_db=margin,
        near_field_boundary_m=boundary,
    )
