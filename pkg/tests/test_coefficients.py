import json
import math

import numpy as np
import pytest

from giantatoms.coefficients import (
    coefficients_closed_form,
    coefficients_for,
    coefficients_from_layout,
)
from giantatoms.layouts import (
    ATOMS,
    ConnectionLayout,
    layout_from_dict,
    load_layout,
    preset_layout,
)

ALL_FIELDS = ("g_ab", "g_cd", "gamma_ab", "gamma_cd")


def max_component_diff(lhs, rhs):
    worst = 0.0
    for atom in ATOMS:
        worst = max(worst, abs(lhs.lamb_shift[atom] - rhs.lamb_shift[atom]),
                    abs(lhs.gamma_individual[atom] - rhs.gamma_individual[atom]))
    for name in ALL_FIELDS:
        worst = max(worst, abs(getattr(lhs, name) - getattr(rhs, name)))
    return worst


class TestPresetLayouts:
    def test_small(self):
        lay = preset_layout("small")
        assert lay.points == {"a": (0.0,), "b": (1.0,), "c": (0.0,), "d": (1.0,)}

    def test_braided(self):
        lay = preset_layout("braided")
        assert lay.points["a"] == (0.0, 2.0)
        assert lay.points["b"] == (1.0, 3.0)

    def test_nested(self):
        lay = preset_layout("nested")
        assert lay.points["a"] == (0.0, 3.0)
        assert lay.points["b"] == (1.0, 2.0)

    def test_separated(self):
        lay = preset_layout("separated")
        assert lay.points["a"] == (0.0, 1.0)
        assert lay.points["b"] == (2.0, 3.0)

    def test_custom_rejected(self):
        with pytest.raises(ValueError, match="named preset"):
            preset_layout("custom")


class TestLayoutEngine:
    def test_braided_half_pi(self):
        coeffs = coefficients_from_layout(preset_layout("braided"), math.pi / 2, 1.0)
        for atom in ATOMS:
            assert abs(coeffs.lamb_shift[atom]) < 1e-15
            assert abs(coeffs.gamma_individual[atom]) < 1e-15
        assert coeffs.g_ab == pytest.approx(1.0, abs=1e-15)
        assert coeffs.g_cd == pytest.approx(1.0, abs=1e-15)
        assert abs(coeffs.gamma_ab) < 1e-15
        assert abs(coeffs.gamma_cd) < 1e-15

    def test_separated_pi_all_zero(self):
        coeffs = coefficients_from_layout(preset_layout("separated"), math.pi, 1.0)
        for atom in ATOMS:
            assert abs(coeffs.lamb_shift[atom]) < 1e-15
            assert abs(coeffs.gamma_individual[atom]) < 1e-15
        assert abs(coeffs.g_ab) < 1e-15
        assert abs(coeffs.gamma_ab) < 1e-15

    def test_small_zero_phase(self):
        coeffs = coefficients_from_layout(preset_layout("small"), 0.0, 1.0)
        for atom in ATOMS:
            assert coeffs.lamb_shift[atom] == 0.0
            assert coeffs.gamma_individual[atom] == 1.0
        assert coeffs.g_ab == 0.0
        assert coeffs.gamma_ab == 1.0

    def test_gamma_scaling(self):
        base = coefficients_from_layout(preset_layout("braided"), 0.7, 1.0)
        scaled = coefficients_from_layout(preset_layout("braided"), 0.7, 2.5)
        assert scaled.g_ab == pytest.approx(2.5 * base.g_ab, rel=1e-14)
        assert scaled.gamma_individual["a"] == pytest.approx(
            2.5 * base.gamma_individual["a"], rel=1e-14)

    def test_rejects_bad_inputs(self):
        lay = preset_layout("small")
        with pytest.raises(ValueError):
            coefficients_from_layout(lay, math.nan, 1.0)
        with pytest.raises(ValueError):
            coefficients_from_layout(lay, 0.0, 0.0)
        with pytest.raises(ValueError):
            coefficients_from_layout(lay, 0.0, -1.0)


class TestClosedForms:
    def test_nested_pi(self):
        coeffs = coefficients_closed_form("nested", math.pi, 1.0)
        for atom in ATOMS:
            assert abs(coeffs.gamma_individual[atom]) < 1e-15
        assert abs(coeffs.g_ab) < 1e-15
        assert coeffs.gamma_ab == pytest.approx(0.0, abs=1e-15)

    def test_separated_zero(self):
        coeffs = coefficients_closed_form("separated", 0.0, 1.0)
        for atom in ATOMS:
            assert coeffs.gamma_individual[atom] == 4.0
        assert coeffs.gamma_ab == 4.0
        assert coeffs.g_ab == 0.0

    def test_small_half_pi(self):
        coeffs = coefficients_closed_form("small", math.pi / 2, 1.0)
        assert coeffs.g_ab == pytest.approx(0.5, abs=1e-15)
        assert abs(coeffs.gamma_ab) < 1e-15
        assert coeffs.gamma_individual["a"] == 1.0

    def test_custom_rejected(self):
        with pytest.raises(ValueError):
            coefficients_closed_form("custom", 0.0, 1.0)


class TestAgreementAndSymmetry:
    def test_layout_matches_closed_form(self):
        rng = np.random.default_rng(7)
        for preset in ("small", "separated", "braided", "nested"):
            for _ in range(200):
                phi = rng.uniform(0.0, 2.0 * math.pi)
                gamma = rng.uniform(0.1, 2.0)
                lhs = coefficients_from_layout(preset_layout(preset), phi, gamma)
                rhs = coefficients_closed_form(preset, phi, gamma)
                assert max_component_diff(lhs, rhs) < 1e-12

    def test_identical_atoms_for_symmetric_presets(self):
        rng = np.random.default_rng(11)
        for preset in ("small", "separated", "braided"):
            for phi in rng.uniform(0.0, 2.0 * math.pi, 20):
                coeffs = coefficients_for(preset, phi)
                shifts = set(coeffs.lamb_shift.values())
                rates = set(coeffs.gamma_individual.values())
                assert len(shifts) == 1 and len(rates) == 1
                assert coeffs.g_ab == coeffs.g_cd
                assert coeffs.gamma_ab == coeffs.gamma_cd

    def test_nested_pairwise_symmetry(self):
        coeffs = coefficients_for("nested", 1.234)
        assert coeffs.lamb_shift["a"] == coeffs.lamb_shift["c"]
        assert coeffs.lamb_shift["b"] == coeffs.lamb_shift["d"]
        assert coeffs.gamma_individual["a"] == coeffs.gamma_individual["c"]
        assert coeffs.gamma_individual["b"] == coeffs.gamma_individual["d"]
        # outer and inner atoms genuinely differ away from special phases
        assert coeffs.lamb_shift["a"] != coeffs.lamb_shift["b"]

    def test_two_pi_periodicity(self):
        rng = np.random.default_rng(13)
        for preset in ("small", "separated", "braided", "nested"):
            for phi in rng.uniform(0.0, 2.0 * math.pi, 20):
                base = coefficients_for(preset, phi)
                moved = coefficients_for(preset, phi + 2.0 * math.pi)
                assert max_component_diff(base, moved) < 1e-12

    def test_small_individual_decay_constant(self):
        for phi in np.linspace(0.0, 2.0 * math.pi, 17):
            coeffs = coefficients_for("small", float(phi), 1.3)
            for atom in ATOMS:
                assert coeffs.gamma_individual[atom] == pytest.approx(1.3, abs=1e-15)


class TestCustomLayouts:
    def test_three_point_atom_accepted(self):
        lay = ConnectionLayout(points={
            "a": (0.0, 1.0, 2.0), "b": (3.0,), "c": (0.0, 1.0, 2.0), "d": (3.0,)})
        coeffs = coefficients_from_layout(lay, 2.0, 1.0)
        # individual decay is |sum_n exp(i phi p_n)|^2, never negative
        total = sum(np.exp(2.0j * p) for p in (0.0, 1.0, 2.0))
        assert coeffs.gamma_individual["a"] == pytest.approx(abs(total) ** 2, rel=1e-12)

    def test_individual_decays_nonnegative_random_layouts(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            pts = {atom: tuple(rng.uniform(0.0, 5.0, rng.integers(1, 4)))
                   for atom in ATOMS}
            coeffs = coefficients_from_layout(ConnectionLayout(points=pts),
                                              rng.uniform(0.0, 2.0 * math.pi))
            assert min(coeffs.gamma_individual.values()) >= -1e-12

    def test_layout_validation(self):
        with pytest.raises(ValueError, match="at least one"):
            ConnectionLayout(points={"a": (), "b": (1.0,), "c": (0.0,), "d": (1.0,)})
        with pytest.raises(ValueError, match="non-finite"):
            ConnectionLayout(points={"a": (math.inf,), "b": (1.0,),
                                     "c": (0.0,), "d": (1.0,)})
        with pytest.raises(ValueError, match="missing"):
            layout_from_dict({"a": [0.0], "b": [1.0], "c": [0.0]})

    def test_layout_json_roundtrip(self, tmp_path):
        data = {"a": [0.0, 2.5], "b": [1.0], "c": [0.5], "d": [1.5, 3.0]}
        path = tmp_path / "layout.json"
        path.write_text(json.dumps(data))
        lay = load_layout(str(path))
        assert lay.points["d"] == (1.5, 3.0)
        coeffs = coefficients_for("custom", 0.4, layout=lay)
        assert math.isfinite(coeffs.g_ab)

    def test_custom_requires_layout(self):
        with pytest.raises(ValueError, match="layout"):
            coefficients_for("custom", 0.0)
