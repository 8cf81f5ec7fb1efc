import pytest

import mmdosim as m
from mmdosim import bioheat

PRESETS = tuple(m.ModelPreset)


@pytest.fixture(scope="session")
def solved_presets():
    """(stack, fields) per preset at 60 GHz, 10 W/m^2; shared, never mutated."""
    out = {}
    for preset in PRESETS:
        stack = m.build_preset_stack(preset, 60e9)
        fields = m.solve_layer_fields(stack, m.PlaneWaveExcitation(60e9, 10.0))
        out[preset] = (stack, fields)
    return out


@pytest.fixture(scope="session")
def thermal_presets(solved_presets):
    return {
        preset: bioheat.build_thermal_stack(stack, fields)
        for preset, (stack, fields) in solved_presets.items()
    }


@pytest.fixture(scope="session")
def theta_presets(thermal_presets):
    return {
        preset: bioheat.solve_steady_theta(thermal)
        for preset, thermal in thermal_presets.items()
    }
