"""Command line front end: scenario runs, CSV export, PNG figures.

Every subcommand computes with the library modules, writes one CSV
(stdout, or the ``--output`` path) and, when an output path is given,
renders a PNG next to it unless ``--no-figure``.  A YAML config file can
preload any flag of the chosen subcommand; explicit flags win.

Exit codes: 0 success or compliant, 1 input or numeric error,
2 non-compliant, 3 near-field indeterminate.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import yaml

from . import bioheat, compliance, dielectrics, multilayer, planewave
from .dielectrics import ComplexPermittivity, SkinModel, Tissue
from .errors import (
    DomainError,
    LimitNotDefinedError,
    LosslessMediumError,
    NearFieldError,
    SolverError,
    StackError,
)
from .multilayer import ModelPreset, PlaneWaveExcitation

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NON_COMPLIANT = 2
EXIT_NEAR_FIELD = 3

_POPULATION_ALIASES = {
    "general": compliance.Population.GENERAL_PUBLIC,
    "uncontrolled": compliance.Population.GENERAL_PUBLIC,
    "occupational": compliance.Population.OCCUPATIONAL,
    "controlled": compliance.Population.OCCUPATIONAL,
}


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _parse_values(text: str) -> list[float]:
    """Comma list ("40,60") or inclusive range ("0:10:0.05")."""
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3:
            raise DomainError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = parts
        if step <= 0 or stop < start:
            raise DomainError(f"bad range {text!r}")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(n)]
    try:
        return [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise DomainError(f"cannot parse values {text!r}: {exc}") from exc


def _write_csv(output: str | None, header: list[str], rows: list[list[str]]):
    if output is None:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return
    with open(output, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _figure_path(output: str) -> str:
    return str(Path(output).with_suffix(".png"))


def _want_figure(args) -> bool:
    return args.output is not None and not args.no_figure


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated inputs shared by the scenario subcommands."""

    preset: ModelPreset
    frequency_hz: float
    power_density: float
    clothing_thickness_m: float

    @classmethod
    def from_args(cls, args) -> "ScenarioConfig":
        if args.power_density < 0:
            raise DomainError("power density must be >= 0")
        if args.clothing_thickness_mm < 0:
            raise DomainError("clothing thickness must be >= 0")
        return cls(
            preset=ModelPreset(args.preset),
            frequency_hz=args.frequency_ghz * 1e9,
            power_density=args.power_density,
            clothing_thickness_m=args.clothing_thickness_mm * 1e-3,
        )

    def build(self):
        stack = multilayer.build_preset_stack(
            self.preset, self.frequency_hz,
            clothing_thickness_m=self.clothing_thickness_m,
        )
        fields = multilayer.solve_layer_fields(
            stack, PlaneWaveExcitation(self.frequency_hz, self.power_density)
        )
        return stack, fields


def _resolve_reflect_inputs(args) -> dict[str, ComplexPermittivity]:
    if args.eps_real is not None or args.eps_imag is not None:
        if args.eps_real is None or args.eps_imag is None:
            raise DomainError("custom permittivity needs both --eps-real and --eps-imag")
        return {"custom": ComplexPermittivity(args.eps_real, args.eps_imag)}
    models = list(SkinModel) if args.model == "all" else [SkinModel(args.model)]
    return {
        m.value: dielectrics.lookup_skin_model(m, args.frequency_ghz * 1e9)
        for m in models
    }


def cmd_reflect(args) -> int:
    """Angle sweep of the two power reflection coefficients per model."""
    table = _resolve_reflect_inputs(args)
    angles_deg = _parse_values(args.angles)
    for a in angles_deg:
        if not 0.0 <= a < 90.0:
            raise DomainError(f"incidence angle {a} deg outside [0, 90)")
    header = ["model", "theta_deg", "r_parallel", "r_perpendicular"]
    rows = []
    curves = {}
    for label, eps in table.items():
        r_par, r_perp = [], []
        for a in angles_deg:
            th = math.radians(a)
            rp, _ = planewave.power_coefficients(eps, th, planewave.Polarization.PARALLEL)
            rs, _ = planewave.power_coefficients(eps, th, planewave.Polarization.PERPENDICULAR)
            r_par.append(rp)
            r_perp.append(rs)
            rows.append([label, _fmt(a), _fmt(rp), _fmt(rs)])
        curves[label] = (r_par, r_perp)
    _write_csv(args.output, header, rows)
    if _want_figure(args):
        from . import plotting

        plotting.save_reflectance_figure(
            angles_deg, curves, _figure_path(args.output), args.frequency_ghz
        )
    return EXIT_OK


def cmd_depth(args) -> int:
    """Penetration depth table across tissues and frequencies."""
    header = ["tissue", "frequency_GHz", "depth_mm", "depth_90pc_mm", "note"]
    freqs = _parse_values(args.frequencies_ghz)
    if args.eps_real is not None or args.eps_imag is not None:
        if args.eps_real is None or args.eps_imag is None:
            raise DomainError("custom permittivity needs both --eps-real and --eps-imag")
        entries = [("custom", None)]
    else:
        tissues = (
            [Tissue.SKIN, Tissue.SAT, Tissue.MUSCLE, Tissue.BONE]
            if args.tissue == "all"
            else [Tissue(args.tissue)]
        )
        entries = [(t.value, t) for t in tissues]
    rows = []
    plot_rows = []
    for label, tissue in entries:
        for f_ghz in freqs:
            f_hz = f_ghz * 1e9
            eps = (
                ComplexPermittivity(args.eps_real, args.eps_imag)
                if tissue is None
                else dielectrics.tissue_permittivity(tissue, f_hz)
            )
            try:
                d_mm = planewave.penetration_depth(eps, f_hz) * 1e3
                d90_mm = planewave.ninety_percent_absorption_depth(eps, f_hz) * 1e3
                rows.append([label, _fmt(f_ghz), _fmt(d_mm), _fmt(d90_mm), ""])
                plot_rows.append((label, f_ghz, d_mm, d90_mm))
            except LosslessMediumError:
                rows.append([label, _fmt(f_ghz), "inf", "inf", "lossless medium: no absorption"])
    _write_csv(args.output, header, rows)
    if _want_figure(args) and plot_rows:
        from . import plotting

        plotting.save_depth_figure(plot_rows, _figure_path(args.output))
    return EXIT_OK


def cmd_fields(args) -> int:
    """Field magnitude and volumetric heating against depth."""
    scenario = ScenarioConfig.from_args(args)
    header = ["z_mm", "layer", "e_abs_V_per_m", "sar_rho_W_per_m3"]
    z_mm = _parse_values(f"0:{args.z_max_mm}:{args.z_step_um * 1e-3}")
    rows = []
    sar = []
    if scenario.power_density == 0.0:
        stack = multilayer.build_preset_stack(
            scenario.preset, scenario.frequency_hz,
            clothing_thickness_m=scenario.clothing_thickness_m,
        )
        labels = [
            stack.layers[_locate_static(stack, z * 1e-3)].label for z in z_mm
        ]
        rows = [[_fmt(z), lab, "0", "0"] for z, lab in zip(z_mm, labels)]
        sar = [0.0] * len(z_mm)
        boundaries = _boundaries_mm(stack)
    else:
        stack, fields = scenario.build()
        for z in z_mm:
            i, _ = fields.locate(z * 1e-3)
            rows.append([
                _fmt(z),
                stack.layers[i].label,
                _fmt(abs(fields.e_field_at(z * 1e-3))),
                _fmt(fields.sar_rho_at(z * 1e-3)),
            ])
            sar.append(fields.sar_rho_at(z * 1e-3))
        boundaries = _boundaries_mm(stack)
    _write_csv(args.output, header, rows)
    if _want_figure(args):
        from . import plotting

        plotting.save_profile_figure(
            z_mm, sar, "volumetric heating [W/m^3]", _figure_path(args.output),
            boundaries_mm=boundaries,
        )
    return EXIT_OK


def _boundaries_mm(stack) -> list[float]:
    out = []
    z = 0.0
    for lay in stack.layers[:-1]:
        z += lay.thickness_m
        out.append(z * 1e3)
    return out


def _locate_static(stack, z_m: float) -> int:
    z0 = 0.0
    for i, lay in enumerate(stack.layers):
        if lay.thickness_m is None or z_m < z0 + lay.thickness_m:
            return i
        z0 += lay.thickness_m
    return len(stack.layers) - 1


def cmd_temp(args) -> int:
    """Steady temperature elevation profile, optionally FD cross-checked."""
    scenario = ScenarioConfig.from_args(args)
    header = ["z_mm", "theta_degC"]
    if args.fd_check:
        header.append("theta_fd_degC")
    if scenario.power_density == 0.0:
        z_mm = _parse_values(f"0:35:{args.z_step_um * 1e-3}")
        rows = [[_fmt(z)] + ["0"] * (len(header) - 1) for z in z_mm]
        thetas = [0.0] * len(z_mm)
        boundaries = []
    else:
        stack, fields = scenario.build()
        thermal = bioheat.build_thermal_stack(stack, fields)
        solution = bioheat.solve_steady_theta(thermal)
        depth_mm = thermal.total_depth_m * 1e3
        z_mm = _parse_values(f"0:{depth_mm}:{args.z_step_um * 1e-3}")
        thetas = [float(solution.theta_at(z * 1e-3)) for z in z_mm]
        fd_interp = None
        if args.fd_check:
            fd = bioheat.solve_steady_theta_fd(thermal, args.grid_step_um * 1e-6)
            fd_interp = [float(fd.theta_at(z * 1e-3)) for z in z_mm]
        rows = []
        for j, z in enumerate(z_mm):
            row = [_fmt(z), _fmt(thetas[j])]
            if fd_interp is not None:
                row.append(_fmt(fd_interp[j]))
            rows.append(row)
        boundaries = [b * 1e3 for b in solution.boundaries_m[1:-1]]
    _write_csv(args.output, header, rows)
    if _want_figure(args):
        from . import plotting

        plotting.save_profile_figure(
            z_mm, thetas, "temperature elevation [degC]", _figure_path(args.output),
            boundaries_mm=boundaries,
        )
    return EXIT_OK


def cmd_sweep_clothing(args) -> int:
    """Clothing thickness sweep: transmitted power and surface elevation."""
    preset = ModelPreset(args.preset)
    if preset not in (ModelPreset.CLOTHED_SKIN, ModelPreset.HAT_ON_FOREHEAD):
        raise DomainError(f"sweep needs a clothed preset, got {preset.value}")
    thicknesses_mm = _parse_values(args.thickness_range_mm)
    if any(t < 0 for t in thicknesses_mm):
        raise DomainError("clothing thickness must be >= 0")
    points = bioheat.clothing_thickness_temperature_sweep(
        preset,
        [t * 1e-3 for t in thicknesses_mm],
        args.frequency_ghz * 1e9,
        args.power_density,
    )
    header = [
        "thickness_mm",
        "into_skin_fraction",
        "t_air_clothing",
        "t_clothing_skin",
        "theta_surface_degC",
    ]
    rows = [
        [
            _fmt(p.thickness_m * 1e3),
            _fmt(p.into_skin_fraction),
            _fmt(p.t_air_clothing),
            _fmt(p.t_clothing_skin),
            _fmt(p.theta_surface),
        ]
        for p in points
    ]
    _write_csv(args.output, header, rows)
    if _want_figure(args):
        from . import plotting

        plotting.save_clothing_sweep_figure(
            [p.thickness_m * 1e3 for p in points],
            [p.into_skin_fraction for p in points],
            [p.theta_surface for p in points],
            _figure_path(args.output),
        )
    return EXIT_OK


def _device_from_args(args) -> compliance.DeviceFarFieldDescriptor:
    if (args.gain_db is None) == (args.gain_linear is None):
        raise DomainError("give exactly one of --gain-db or --gain-linear")
    gain = (
        compliance.gain_db_to_linear(args.gain_db)
        if args.gain_db is not None
        else args.gain_linear
    )
    return compliance.DeviceFarFieldDescriptor(
        radiated_power_w=args.power_w,
        antenna_gain=gain,
        largest_dimension_m=args.largest_dimension_mm * 1e-3,
        distance_m=args.distance_m,
        frequency_hz=args.frequency_ghz * 1e9,
    )


def cmd_compliance(args) -> int:
    """Far-field exposure check against one standard; text report."""
    device = _device_from_args(args)
    context = compliance.ExposureContext(
        standard=compliance.Standard(args.standard),
        population=_POPULATION_ALIASES[args.population],
        frequency_hz=args.frequency_ghz * 1e9,
        localized_peak=args.localized_peak,
    )
    report = compliance.evaluate(device, context)
    gov = report.governing_limit
    lines = [
        f"standard:        {gov.standard.value}",
        f"population:      {gov.population.value}",
        f"frequency:       {args.frequency_ghz:g} GHz",
        f"distance:        {device.distance_m * 1e3:g} mm",
        f"near-field boundary: {report.near_field_boundary_m * 1e3:g} mm",
        f"limit:           {_fmt(gov.pd_limit)} W/m^2 "
        f"(averaged over {gov.averaging_area_label}, {_fmt(gov.averaging_time_min)} min)",
    ]
    if report.power_density is None:
        lines.append("power density:   indeterminate (inside near-field boundary)")
    else:
        lines.append(f"power density:   {_fmt(report.power_density)} W/m^2")
        lines.append(f"margin:          {report.margin_db:+.2f} dB")
    lines.append(f"verdict:         {report.verdict.value}")
    lines.append(f"clause:          {gov.source_clause}")
    print("\n".join(lines))
    if report.verdict is compliance.Verdict.COMPLIANT:
        return EXIT_OK
    if report.verdict is compliance.Verdict.NON_COMPLIANT:
        return EXIT_NON_COMPLIANT
    return EXIT_NEAR_FIELD


def cmd_farfield(args) -> int:
    """Inverse-square power density at a list of distances."""
    if (args.gain_db is None) == (args.gain_linear is None):
        raise DomainError("give exactly one of --gain-db or --gain-linear")
    header = ["distance_mm", "pd_W_per_m2", "note"]
    distances = _parse_values(args.distances_m)
    rows = []
    plot_pts = []
    any_near = False
    for d in distances:
        device = compliance.DeviceFarFieldDescriptor(
            radiated_power_w=args.power_w,
            antenna_gain=(
                compliance.gain_db_to_linear(args.gain_db)
                if args.gain_db is not None
                else args.gain_linear
            ),
            largest_dimension_m=args.largest_dimension_mm * 1e-3,
            distance_m=d,
            frequency_hz=args.frequency_ghz * 1e9,
        )
        try:
            pd = compliance.far_field_pd(device)
            rows.append([_fmt(d * 1e3), _fmt(pd), ""])
            plot_pts.append((d * 1e3, pd))
        except NearFieldError as exc:
            any_near = True
            rows.append([
                _fmt(d * 1e3),
                "",
                f"near field: boundary {exc.boundary_m * 1e3:.4g} mm",
            ])
    _write_csv(args.output, header, rows)
    if _want_figure(args) and plot_pts:
        from . import plotting

        plotting.save_profile_figure(
            [p[0] for p in plot_pts],
            [p[1] for p in plot_pts],
            "power density [W/m^2]",
            _figure_path(args.output),
        )
    return EXIT_NEAR_FIELD if any_near else EXIT_OK


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="YAML file preloading this subcommand's flags")
    p.add_argument("--output", help="CSV path (default: stdout)")
    p.add_argument("--no-figure", action="store_true",
                   help="skip the PNG even when --output is given")


def _add_scenario(p: argparse.ArgumentParser, presets):
    p.add_argument("--preset", choices=presets, default=presets[0])
    p.add_argument("--frequency-ghz", type=float, default=60.0)
    p.add_argument("--power-density", type=float, default=10.0,
                   help="incident power density [W/m^2]")
    p.add_argument("--clothing-thickness-mm", type=float, default=1.0)


def _add_device(p: argparse.ArgumentParser):
    p.add_argument("--power-w", type=float, required=True, help="radiated power [W]")
    p.add_argument("--gain-db", type=float)
    p.add_argument("--gain-linear", type=float)
    p.add_argument("--largest-dimension-mm", type=float, required=True)
    p.add_argument("--frequency-ghz", type=float, required=True)


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; 2 means non-compliant here."""

    def error(self, message):
        raise DomainError(message)


def build_parser() -> tuple[argparse.ArgumentParser, dict]:
    parser = _Parser(
        prog="mmdosim",
        description="Millimeter-wave skin exposure: reflection, heating, compliance.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    registry = {}

    all_presets = [p.value for p in ModelPreset]
    clothed = [ModelPreset.CLOTHED_SKIN.value, ModelPreset.HAT_ON_FOREHEAD.value]

    p = subs.add_parser("reflect", help="reflection coefficients vs angle")
    p.add_argument("--model", default="all",
                   choices=["all"] + [m.value for m in SkinModel])
    p.add_argument("--frequency-ghz", type=float, default=60.0)
    p.add_argument("--angles", default="0:89:1", help="deg, list or start:stop:step")
    p.add_argument("--eps-real", type=float, help="override: custom eps'")
    p.add_argument("--eps-imag", type=float, help="override: custom eps''")
    _add_common(p)
    p.set_defaults(func=cmd_reflect)
    registry["reflect"] = p

    p = subs.add_parser("depth", help="penetration depth vs frequency")
    p.add_argument("--tissue", default="skin",
                   choices=["all", "skin", "sat", "muscle", "bone"])
    p.add_argument("--frequencies-ghz", default="40,60,80,100")
    p.add_argument("--eps-real", type=float)
    p.add_argument("--eps-imag", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_depth)
    registry["depth"] = p

    p = subs.add_parser("fields", help="field and heating profile vs depth")
    _add_scenario(p, all_presets)
    p.add_argument("--z-max-mm", type=float, default=10.0)
    p.add_argument("--z-step-um", type=float, default=10.0)
    _add_common(p)
    p.set_defaults(func=cmd_fields)
    registry["fields"] = p

    p = subs.add_parser("temp", help="steady temperature elevation profile")
    _add_scenario(p, all_presets)
    p.add_argument("--z-step-um", type=float, default=50.0)
    p.add_argument("--fd-check", action="store_true",
                   help="add a finite-difference column")
    p.add_argument("--grid-step-um", type=float, default=10.0)
    _add_common(p)
    p.set_defaults(func=cmd_temp)
    registry["temp"] = p

    p = subs.add_parser("sweep-clothing", help="clothing thickness sweep")
    _add_scenario(p, clothed)
    p.add_argument("--thickness-range-mm", default="0:10:0.05")
    _add_common(p)
    p.set_defaults(func=cmd_sweep_clothing)
    registry["sweep-clothing"] = p

    p = subs.add_parser("compliance", help="exposure verdict for one scenario")
    _add_device(p)
    p.add_argument("--distance-m", type=float, required=True)
    p.add_argument("--standard", required=True,
                   choices=[s.value for s in compliance.Standard])
    p.add_argument("--population", default="general",
                   choices=sorted(_POPULATION_ALIASES))
    p.add_argument("--localized-peak", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_compliance)
    registry["compliance"] = p

    p = subs.add_parser("farfield", help="far-field power density vs distance")
    _add_device(p)
    p.add_argument("--distances-m", default="1,0.1,0.05")
    _add_common(p)
    p.set_defaults(func=cmd_farfield)
    registry["farfield"] = p

    return parser, registry


def _apply_config(parser, registry, argv, args):
    """Reload the subcommand's defaults from YAML, then reparse so flags win."""
    with open(args.config, encoding="utf-8") as fh:
        cfg = yaml.safe_load(fh) or {}
    if not isinstance(cfg, dict):
        raise DomainError("config must be a mapping of flag names to values")
    sub = registry[args.command]
    known = {a.dest for a in sub._actions}
    unknown = {k for k in cfg if k.replace("-", "_") not in known}
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    sub.set_defaults(**{k.replace("-", "_"): v for k, v in cfg.items()})
    return parser.parse_args(argv)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser, registry = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "config", None):
            args = _apply_config(parser, registry, argv, args)
        return args.func(args)
    except (DomainError, StackError, SolverError, LimitNotDefinedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
