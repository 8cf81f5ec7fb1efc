"""Stratified plane-wave solver: fields, heating profiles, clothing sweeps.

Reference numbers were frozen from an independent oracle that assembles
the same boundary conditions but solves them through an impedance
recursion instead of the banded linear system.
"""

import numpy as np
import pytest

import mmdosim as m
from mmdosim.dielectrics import ComplexPermittivity, Tissue, tissue_permittivity
from mmdosim.errors import DomainError, StackError
from mmdosim.multilayer import (
    DEFAULT_CLOTHING_THICKNESS_M,
    ClothingSweepPoint,
    LayerStack,
    ModelPreset,
    TissueLayer,
    clothing_power_sweep,
    clothing_transmission,
    naked_counterpart,
)

REFLECTANCE_60GHZ = {
    ModelPreset.NAKED_SKIN: 0.378503,
    ModelPreset.NAKED_FOREHEAD: 0.378462,
    ModelPreset.CLOTHED_SKIN: 0.173173,
    ModelPreset.HAT_ON_FOREHEAD: 0.173143,
}

ABSORBED_60GHZ_10WM2 = {
    ModelPreset.NAKED_SKIN: 6.214969,
    ModelPreset.NAKED_FOREHEAD: 6.215377,
    ModelPreset.CLOTHED_SKIN: 8.268269,
    ModelPreset.HAT_ON_FOREHEAD: 8.268565,
}

ALL_FREQS = (40e9, 60e9, 80e9, 100e9)


def test_incident_amplitude():
    # peak field of a 10 W/m^2 plane wave in air
    assert m.incident_amplitude(10.0) == pytest.approx(86.8124, abs=1e-4)
    assert m.incident_amplitude(0.0) == 0.0
    with pytest.raises(DomainError):
        m.incident_amplitude(-1.0)


class TestPresetStacks:
    def test_layer_sequences(self):
        st = m.build_preset_stack(ModelPreset.NAKED_SKIN, 60e9)
        assert [lay.label for lay in st.layers] == ["skin", "sat", "muscle"]
        st = m.build_preset_stack(ModelPreset.HAT_ON_FOREHEAD, 60e9)
        assert [lay.label for lay in st.layers] == ["clothing", "skin", "sat", "bone"]
        assert st.layers[0].thickness_m == DEFAULT_CLOTHING_THICKNESS_M
        assert st.layers[1].thickness_m == 1e-3
        assert st.layers[2].thickness_m == 3e-3
        assert st.layers[3].thickness_m is None

    def test_naked_counterpart(self):
        assert naked_counterpart(ModelPreset.CLOTHED_SKIN) is ModelPreset.NAKED_SKIN
        assert naked_counterpart(ModelPreset.HAT_ON_FOREHEAD) is ModelPreset.NAKED_FOREHEAD
        assert naked_counterpart(ModelPreset.NAKED_SKIN) is ModelPreset.NAKED_SKIN

    def test_has_clothing(self):
        assert not m.build_preset_stack(ModelPreset.NAKED_SKIN, 60e9).has_clothing
        assert m.build_preset_stack(ModelPreset.CLOTHED_SKIN, 60e9).has_clothing
        zero = m.build_preset_stack(ModelPreset.CLOTHED_SKIN, 60e9, clothing_thickness_m=0.0)
        assert not zero.has_clothing

    def test_stack_validation(self):
        eps = tissue_permittivity(Tissue.SKIN, 60e9)
        with pytest.raises(StackError):
            LayerStack(layers=())
        with pytest.raises(StackError):
            LayerStack(layers=(TissueLayer("skin", eps, 1e-3),))
        with pytest.raises(StackError):
            LayerStack(
                layers=(
                    TissueLayer("skin", eps, None),
                    TissueLayer("muscle", eps, None),
                )
            )


class TestFieldSolve:
    @pytest.mark.parametrize("preset", list(ModelPreset))
    def test_reflectance(self, preset, solved_presets):
        _, sol = solved_presets[preset]
        assert sol.reflectance == pytest.approx(REFLECTANCE_60GHZ[preset], abs=1e-6)

    @pytest.mark.parametrize("preset", list(ModelPreset))
    def test_absorbed_power(self, preset, solved_presets):
        _, sol = solved_presets[preset]
        assert sol.absorbed_total() == pytest.approx(ABSORBED_60GHZ_10WM2[preset], abs=1e-6)

    @pytest.mark.parametrize("preset", list(ModelPreset))
    @pytest.mark.parametrize("f_hz", ALL_FREQS)
    def test_energy_balance_everywhere(self, preset, f_hz):
        st = m.build_preset_stack(preset, f_hz)
        sol = m.solve_layer_fields(st, m.PlaneWaveExcitation(f_hz, 10.0))
        assert sol.energy_balance_error() < 1e-9

    def test_surface_field_continuity(self, solved_presets):
        _, sol = solved_presets[ModelPreset.NAKED_SKIN]
        e_air = sol.e0_plus + sol.e0_minus
        assert sol.e_field_at(0.0) == pytest.approx(e_air, rel=1e-10)

    def test_field_continuity_at_interfaces(self, solved_presets):
        st, sol = solved_presets[ModelPreset.HAT_ON_FOREHEAD]
        z = 0.0
        for lay in st.layers[:-1]:
            z += lay.thickness_m
            below = sol.e_field_at(z - 1e-12)
            above = sol.e_field_at(z + 1e-12)
            assert abs(below - above) < 1e-6 * abs(below)

    def test_zero_thickness_clothing_matches_naked(self):
        naked = m.build_preset_stack(ModelPreset.NAKED_SKIN, 60e9)
        zero = m.build_preset_stack(ModelPreset.CLOTHED_SKIN, 60e9, clothing_thickness_m=0.0)
        exc = m.PlaneWaveExcitation(60e9, 10.0)
        a = m.solve_layer_fields(naked, exc)
        b = m.solve_layer_fields(zero, exc)
        assert b.reflectance == pytest.approx(a.reflectance, abs=1e-12)
        assert b.absorbed_total() == pytest.approx(a.absorbed_total(), abs=1e-12)

    def test_absorption_concentrates_in_skin(self, solved_presets):
        _, sol = solved_presets[ModelPreset.NAKED_SKIN]
        per_layer = sol.absorbed_per_layer()
        assert per_layer[0] > 0.85 * sol.absorbed_total()

    def test_power_into_layer(self, solved_presets):
        _, sol = solved_presets[ModelPreset.NAKED_SKIN]
        into_first = sol.power_into_layer(0)
        assert into_first == pytest.approx(10.0 - sol.reflected_power, rel=1e-12)
        into_last = sol.power_into_layer(len(sol.layers) - 1)
        assert into_last == pytest.approx(sol.absorbed_per_layer()[-1], rel=1e-9)
        with pytest.raises(DomainError):
            sol.power_into_layer(99)

    def test_sar_rho_nonnegative_and_decaying(self, solved_presets):
        _, sol = solved_presets[ModelPreset.NAKED_SKIN]
        z = np.linspace(0.0, 8e-3, 400)
        sar = m.sar_rho_profile(sol, z)
        assert np.all(sar >= 0.0)
        # bulk decay: deep muscle heating far below the skin surface value
        assert sar[-1] < 1e-3 * sar[0]

    def test_sar_integral_matches_analytic_absorption(self, solved_presets):
        _, sol = solved_presets[ModelPreset.NAKED_SKIN]
        z = np.linspace(0.0, 1e-3, 20001)
        sar = m.sar_rho_profile(sol, z)
        integral = np.trapezoid(sar, z)
        # tolerance limited by the trapezoid rule, not the analytic integral
        assert integral == pytest.approx(sol.absorbed_per_layer()[0], rel=1e-5)

    def test_locate_rejects_negative_depth(self, solved_presets):
        _, sol = solved_presets[ModelPreset.NAKED_SKIN]
        with pytest.raises(DomainError):
            sol.locate(-1e-6)

    def test_excitation_validation(self):
        with pytest.raises(DomainError):
            m.PlaneWaveExcitation(60e9, 0.0)
        with pytest.raises(DomainError):
            m.PlaneWaveExcitation(0.0, 10.0)


class TestClothing:
    def test_two_interface_estimates(self):
        st = m.build_preset_stack(ModelPreset.CLOTHED_SKIN, 60e9)
        t7, t8 = clothing_transmission(st, 60e9)
        assert t7 == pytest.approx(0.986191, abs=1e-5)
        assert t8 == pytest.approx(0.6625, abs=5e-4)

    def test_transmission_requires_clothed_stack(self):
        st = m.build_preset_stack(ModelPreset.NAKED_SKIN, 60e9)
        with pytest.raises(StackError):
            clothing_transmission(st, 60e9)

    def test_sweep_zero_thickness_is_naked(self, solved_presets):
        pts = clothing_power_sweep(ModelPreset.CLOTHED_SKIN, [0.0], 60e9, 10.0)
        assert isinstance(pts[0], ClothingSweepPoint)
        _, naked = solved_presets[ModelPreset.NAKED_SKIN]
        naked_frac = (naked.power_density - naked.reflected_power) / naked.power_density
        assert pts[0].into_skin_fraction == pytest.approx(naked_frac, abs=1e-9)
        assert pts[0].into_skin_fraction == pytest.approx(0.6215, abs=5e-5)

    def test_sweep_default_thickness_point(self):
        pts = clothing_power_sweep(ModelPreset.CLOTHED_SKIN, [1e-3], 60e9, 10.0)
        assert pts[0].into_skin_fraction == pytest.approx(0.7319, abs=5e-5)
        assert pts[0].t_clothing_skin == pytest.approx(0.6625, abs=5e-4)

    def test_estimate_columns_continuous_at_zero(self):
        pts = clothing_power_sweep(
            ModelPreset.CLOTHED_SKIN, [0.0, 1e-6], 60e9, 10.0
        )
        assert pts[0].t_air_clothing == pytest.approx(pts[1].t_air_clothing, rel=1e-6)
        assert pts[0].t_clothing_skin == pytest.approx(pts[1].t_clothing_skin, rel=1e-4)

    def test_enhancement_window_below_one_mm(self):
        thicknesses = np.arange(0.0, 1.0001e-3, 0.05e-3)
        pts = clothing_power_sweep(ModelPreset.CLOTHED_SKIN, thicknesses, 60e9, 10.0)
        naked = pts[0].into_skin_fraction
        assert max(p.into_skin_fraction for p in pts[1:]) > naked


def test_custom_stack_single_halfspace_matches_fresnel():
    """One semi-infinite layer reduces to the half-space reflectance."""
    from mmdosim.planewave import Polarization, power_coefficients

    eps = tissue_permittivity(Tissue.SKIN, 60e9)
    st = LayerStack(layers=(TissueLayer("skin", eps, None),))
    sol = m.solve_layer_fields(st, m.PlaneWaveExcitation(60e9, 10.0))
    r_half, _ = power_coefficients(eps, 0.0, Polarization.PARALLEL)
    assert sol.reflectance == pytest.approx(r_half, rel=1e-12)
    assert sol.absorbed_total() == pytest.approx(10.0 * (1 - r_half), rel=1e-12)


def test_lossless_custom_layer_passes_power_through():
    """A lossless slab absorbs nothing; balance still closes."""
    eps_glass = ComplexPermittivity(2.25, 0.0)
    eps_skin = tissue_permittivity(Tissue.SKIN, 60e9)
    st = LayerStack(
        layers=(
            TissueLayer("window", eps_glass, 2e-3),
            TissueLayer("skin", eps_skin, None),
        )
    )
    sol = m.solve_layer_fields(st, m.PlaneWaveExcitation(60e9, 10.0))
    assert sol.absorbed_per_layer()[0] == pytest.approx(0.0, abs=1e-12)
    assert sol.energy_balance_error() < 1e-9
