"""Feasibility simulator for optically gated donor spins in diamond.

Results come back as plain Python containers; curves are dicts of lists.
"""

import json
import os
from datetime import datetime, timezone
from pathlib import Path

_packaged = Path(__file__).with_name("data") / "donor_presets.json"
if not os.environ.get("SFG_PRESETS") and _packaged.exists():
    os.environ["SFG_PRESETS"] = str(_packaged)

from . import _core  # noqa: E402
from ._core import (  # noqa: E402,F401
    SimulatorError,
    binomial_distribution,
    count_sites,
    effective_coupling,
    mean_resolvable_count,
    scenario_presets,
    shell_sizes,
)


def donor_from_ionization(binding_ev, dielectric=5.7, central_cell_ev=0.0):
    return json.loads(_core.donor_from_ionization(binding_ev, dielectric, central_cell_ev))


def donor_presets():
    return json.loads(_core.donor_presets())


def exchange_curve(control, qubit, r_angstrom):
    return json.loads(_core.exchange_curve(control, qubit, list(r_angstrom)))


def transfer_splitting_curve(control, r_angstrom):
    return json.loads(_core.transfer_splitting_curve(control, list(r_angstrom)))


def sfg_gate(j1, j2):
    return json.loads(_core.sfg_gate(j1, j2))


def preset_scenario(name):
    return json.loads(_core.preset_scenario(name))


def run_feasibility(scenario, generated_at=None):
    """Run a scenario given as a dict, JSON text, or preset name."""
    if isinstance(scenario, dict):
        text = json.dumps(scenario)
    elif scenario in scenario_presets():
        text = _core.preset_scenario(scenario)
    else:
        text = scenario
    stamp = generated_at or datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    return json.loads(_core.run_scenario(text, stamp))
