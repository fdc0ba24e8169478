import math

import pytest

import sfgsim


def test_lattice_and_binomial():
    assert sfgsim.count_sites(10.0) == 729
    shells = sfgsim.shell_sizes(5)
    assert [s[2] for s in shells] == [4, 12, 12, 6, 12]
    p = sfgsim.binomial_distribution(46, 0.01)
    assert math.isclose(sum(p), 1.0, rel_tol=1e-12)


def test_donor_models():
    full = sfgsim.donor_from_ionization(0.6)
    soft = sfgsim.donor_from_ionization(0.6, central_cell_ev=0.2)
    assert abs(full["effective_bohr_radius"] - 2.10) < 0.01
    assert abs(soft["effective_bohr_radius"] / full["effective_bohr_radius"] - 1.5) < 1e-9
    names = [s["species_name"] for s in sfgsim.donor_presets()["species"]]
    assert "P-control" in names and "N-qubit" in names


def test_exchange_curve_columns():
    curve = sfgsim.exchange_curve("P-control", "N-qubit", [8.0, 12.0, 16.0])
    assert set(curve) == {"R_angstrom", "J_ground_meV", "J_excited_meV"}
    assert curve["J_excited_meV"][0] > curve["J_excited_meV"][-1] > 0


def test_gates():
    assert math.isclose(sfgsim.effective_coupling(32.3, 10.5, 600.0), 32.3 * 10.5 / 600.0)
    clean = sfgsim.sfg_gate(20.0, 20.0)
    assert clean["status"] == "clean"
    assert clean["entangling_power"] > 0
    assert sfgsim.sfg_gate(32.3, 10.5)["status"] == "no_clean_gate"


def test_table1_report_is_deterministic():
    a = sfgsim.run_feasibility("table1", generated_at="T")
    b = sfgsim.run_feasibility(sfgsim.preset_scenario("table1"), generated_at="T")
    assert a == b
    assert a["summary"]["resolvable_gate_count"] == 2
    assert len(a["couplings"]) == 6


def test_errors_carry_stage():
    with pytest.raises(sfgsim.SimulatorError, match=r"\[scenario\]"):
        sfgsim.run_feasibility({"schema_version": 1, "species": [], "colour": 1})
    with pytest.raises(sfgsim.SimulatorError, match=r"\[donor-model\]"):
        sfgsim.donor_from_ionization(-1.0)
