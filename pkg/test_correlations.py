#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
相関計算のテスト (閉形式・トレース計算・選択付き期待値・スキャン)

実行:
    pytest test_correlations.py
"""

import math

import numpy as np
import pytest
from sympy.utilities.iterables import multiset_partitions

from correlations import (
    Direction,
    all_sign_patterns,
    as_directions,
    check_density_operator,
    closed_form_agreement,
    closed_form_E,
    condensed_expectation,
    density_operator,
    directions_from_angles,
    general_singlet,
    joint_probability,
    kron,
    parity_expectation,
    parity_expectation_from_probabilities,
    parity_probabilities,
    projector,
    random_unitary,
    rotation_invariance_check,
    rotation_unitary,
    scan,
    scan_to_csv,
    selected_expectation_candidates,
    selected_expectation_closed_form,
    selected_expectation_ghzm,
    singlet_vector,
    two_particle_singlet,
)
from singlet_builder import singlet_basis, to_dense_vector
from singlet_constants import SCAN_COLUMNS

E1 = np.array([1.0, 0.0])


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def _random_dirs(rng, n=4, equatorial=False, theta_only=False):
    thetas = [math.pi / 2] * n if equatorial else rng.uniform(0.0, math.pi, size=n)
    phis = None if theta_only else rng.uniform(0.0, 2.0 * math.pi, size=n)
    return directions_from_angles(thetas, phis)


# ---------------------------------------------------------------------------
# 状態ベクトル
# ---------------------------------------------------------------------------

def test_singlet_vectors_are_normalized_and_orthogonal():
    psi1, psi2 = singlet_vector(1), singlet_vector(2)
    assert np.vdot(psi1, psi1).real == pytest.approx(1.0)
    assert np.vdot(psi2, psi2).real == pytest.approx(1.0)
    assert abs(np.vdot(psi1, psi2)) == pytest.approx(0.0, abs=1e-15)
    for tau in (0.3, 1.7, 4.0):
        v = general_singlet(tau)
        assert np.vdot(v, v).real == pytest.approx(1.0)


def test_singlet_vectors_match_exact_basis():
    basis = singlet_basis(4, "1/2")
    assert np.allclose(to_dense_vector(basis[0]), singlet_vector(1), atol=1e-15)
    assert np.allclose(to_dense_vector(basis[1]), singlet_vector(2), atol=1e-15)
    assert np.allclose(to_dense_vector(singlet_basis(2, "1/2")[0]), two_particle_singlet(), atol=1e-15)


def test_general_singlet_endpoints():
    assert np.allclose(general_singlet(0.0), singlet_vector(2))
    assert np.allclose(general_singlet(math.pi / 2), singlet_vector(1))


def test_singlet_vector_rejects_unknown_index():
    with pytest.raises(ValueError):
        singlet_vector(3)


def test_density_operator_checks():
    rho = density_operator(general_singlet(0.8))
    assert check_density_operator(rho)
    assert not check_density_operator(2 * rho)
    mixed = 0.5 * (density_operator(singlet_vector(1)) + density_operator(singlet_vector(2)))
    assert check_density_operator(mixed, pure=False)
    assert not check_density_operator(mixed)


# ---------------------------------------------------------------------------
# 射影測定
# ---------------------------------------------------------------------------

def test_projectors_resolve_identity(rng):
    dirs = _random_dirs(rng)
    total = sum(projector(signs, dirs) for signs in all_sign_patterns(4))
    assert np.allclose(total, np.eye(16), atol=1e-12)


def test_probabilities_sum_to_one(rng):
    rho = density_operator(general_singlet(1.1))
    dirs = _random_dirs(rng)
    probabilities = [joint_probability(rho, signs, dirs) for signs in all_sign_patterns(4)]
    assert math.fsum(probabilities) == pytest.approx(1.0, abs=1e-12)
    assert min(probabilities) >= -1e-12


def test_expectation_from_probabilities_matches_trace(rng):
    rho = density_operator(singlet_vector(1))
    for _ in range(20):
        dirs = _random_dirs(rng)
        assert parity_expectation_from_probabilities(rho, dirs) == pytest.approx(
            parity_expectation(rho, dirs), abs=1e-12)


def test_parity_probabilities():
    assert parity_probabilities(1.0) == (1.0, 0.0)
    assert parity_probabilities(-0.5) == (0.25, 0.75)


def test_projector_argument_errors():
    with pytest.raises(ValueError):
        projector((1, 1), [0.0])
    with pytest.raises(ValueError):
        projector((2,), [0.0])


def test_as_directions_accepts_mixed_inputs():
    dirs = as_directions([0.5, (1.0, 2.0), Direction(0.1, 0.2)])
    assert dirs == (Direction(0.5, 0.0), Direction(1.0, 2.0), Direction(0.1, 0.2))
    with pytest.raises(ValueError):
        directions_from_angles([0.1, 0.2], [0.0])


# ---------------------------------------------------------------------------
# 閉形式
# ---------------------------------------------------------------------------

def test_all_closed_forms_agree_with_trace():
    table = closed_form_agreement(draws=1000, seed=7)
    assert list(table.columns) == ['form', 'max_abs_deviation', 'agrees']
    assert len(table) == 10
    assert table['agrees'].all(), table


def test_closed_form_agreement_rejects_zero_draws():
    with pytest.raises(ValueError):
        closed_form_agreement(draws=0)


def test_two_particle_correlation(rng):
    rho = density_operator(two_particle_singlet())
    for _ in range(20):
        dirs = _random_dirs(rng, n=2)
        assert parity_expectation(rho, dirs) == pytest.approx(closed_form_E('twopartite_full', dirs), abs=1e-12)
    assert closed_form_E('twopartite_theta', [0.0, 0.0]) == pytest.approx(-1.0)
    assert closed_form_E('twopartite_equatorial', [(math.pi / 2, 0.0), (math.pi / 2, math.pi)]) == pytest.approx(1.0)


@pytest.mark.parametrize('tau, reduced', [(0.0, 'Psi242'), (math.pi / 2, 'Psi241')])
def test_tau_forms_reduce_to_fixed_singlets(rng, tau, reduced):
    for _ in range(20):
        theta_dirs = _random_dirs(rng, theta_only=True)
        full_dirs = _random_dirs(rng)
        assert closed_form_E('tau_theta', theta_dirs, tau) == pytest.approx(
            closed_form_E(f'{reduced}_theta', theta_dirs), abs=1e-12)
        assert closed_form_E('tau_full', full_dirs, tau) == pytest.approx(
            closed_form_E(f'{reduced}_full', full_dirs), abs=1e-12)


def test_full_forms_reduce_to_restricted_forms(rng):
    for _ in range(20):
        theta_dirs = _random_dirs(rng, theta_only=True)
        equatorial_dirs = _random_dirs(rng, equatorial=True)
        assert closed_form_E('Psi241_full', theta_dirs) == pytest.approx(
            closed_form_E('Psi241_theta', theta_dirs), abs=1e-12)
        assert closed_form_E('Psi241_full', equatorial_dirs) == pytest.approx(
            closed_form_E('Psi241_equatorial', equatorial_dirs), abs=1e-12)


def test_closed_form_known_values():
    zeros = [0.0] * 4
    assert closed_form_E('Psi241_theta', zeros) == pytest.approx(1.0)
    assert closed_form_E('Psi242_theta', zeros) == pytest.approx(1.0)
    assert closed_form_E('Psi242_theta', [math.pi / 2, 0.0, 0.0, 0.0]) == pytest.approx(0.0, abs=1e-15)
    # (2 cos π + cos π)/3 = -1
    assert closed_form_E('Psi241_theta', [math.pi, 0.0, 0.0, 0.0]) == pytest.approx(-1.0)


@pytest.mark.parametrize('which, dirs, tau', [
    ('unknown', [0.0] * 4, None),
    ('Psi241_theta', [0.0] * 2, None),
    ('twopartite_full', [0.0] * 4, None),
    ('tau_theta', [0.0] * 4, None),
    ('Psi241_theta', [0.0] * 4, 0.5),
    ('Psi242_theta', [(0.0, 0.1), 0.0, 0.0, 0.0], None),
    ('Psi241_equatorial', [0.3] * 4, None),
])
def test_closed_form_rejects_bad_arguments(which, dirs, tau):
    with pytest.raises(ValueError):
        closed_form_E(which, dirs, tau)


# ---------------------------------------------------------------------------
# 回転不変性・凝縮観測量
# ---------------------------------------------------------------------------

def test_singlets_are_rotation_invariant(rng):
    vectors = [singlet_vector(1), singlet_vector(2), general_singlet(0.9), two_particle_singlet()]
    for _ in range(100):
        u = random_unitary(rng)
        assert np.linalg.det(u) == pytest.approx(1.0)
        for v in vectors:
            assert rotation_invariance_check(v, u) < 1e-12
    for theta, phi in [(0.3, 1.2), (math.pi, 0.0), (2.0, 5.0)]:
        u = rotation_unitary(theta, phi)
        assert np.allclose(u @ u.conj().T, np.eye(2))
        assert rotation_invariance_check(singlet_vector(1), u) < 1e-12


def test_product_state_is_not_rotation_invariant():
    state = kron(E1, E1).astype(complex)
    assert rotation_invariance_check(state, rotation_unitary(math.pi / 2, 0.0)) > 0.1


def test_condensed_expectation_is_independent_of_grouping(rng):
    rho = density_operator(general_singlet(0.4))
    dirs = _random_dirs(rng)
    expected = parity_expectation(rho, dirs)
    partitions = list(multiset_partitions([1, 2, 3, 4]))
    assert len(partitions) == 15
    for partition in partitions:
        assert condensed_expectation(rho, dirs, partition) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize('partition', [[[1, 2], [3]], [[1, 2], [2, 3, 4]], [[1, 2, 3, 4], []]])
def test_condensed_expectation_rejects_non_partitions(partition):
    rho = density_operator(singlet_vector(2))
    with pytest.raises(ValueError):
        condensed_expectation(rho, [0.0] * 4, partition)


# ---------------------------------------------------------------------------
# 選択付き期待値
# ---------------------------------------------------------------------------

def test_selected_closed_form_known_values():
    zeros = [0.0] * 4
    assert selected_expectation_closed_form('pm4', {4: 1}, zeros) == pytest.approx(7 / 12)
    assert selected_expectation_closed_form('pm4', {4: -1}, zeros) == pytest.approx(1 / 12 - 1 / 2)
    assert selected_expectation_closed_form('pm3pm4_theta', {3: 1, 4: 1}, zeros) == pytest.approx(1 / 3)
    assert selected_expectation_closed_form('pm2pm4_theta', {2: 1, 4: 1}, zeros) == pytest.approx(1 / 12)


def test_candidates_for_non_zigzag_singlet():
    rho = density_operator(singlet_vector(1))
    result = selected_expectation_candidates(rho, [0.0] * 4, {4: 1})
    assert result['selection_probability'] == pytest.approx(0.5)
    assert result['a'] == pytest.approx(0.5)
    assert result['c'] == pytest.approx(0.5)
    assert result['b'] == pytest.approx(1.0)
    assert result['d'] == pytest.approx(1.0)


def test_candidates_for_pair_singlets():
    rho = density_operator(singlet_vector(2))
    both_up = selected_expectation_candidates(rho, [0.0] * 4, {3: 1, 4: 1})
    assert both_up['selection_probability'] == pytest.approx(0.0)
    assert both_up['a'] == pytest.approx(0.0)
    assert math.isnan(both_up['b']) and math.isnan(both_up['d'])
    mixed = selected_expectation_candidates(rho, [0.0] * 4, {3: 1, 4: -1})
    assert mixed['a'] == pytest.approx(0.5)
    assert mixed['b'] == pytest.approx(1.0)
    assert mixed['c'] == pytest.approx(-0.5)
    assert mixed['d'] == pytest.approx(-1.0)


def test_candidates_for_product_state():
    rho = density_operator(kron(E1, E1, E1, E1))
    result = selected_expectation_candidates(rho, [0.0] * 4, {4: 1})
    for key in ('a', 'b', 'c', 'd', 'selection_probability'):
        assert result[key] == pytest.approx(1.0)
    never = selected_expectation_candidates(rho, [0.0] * 4, {4: -1})
    assert never['selection_probability'] == pytest.approx(0.0)
    assert math.isnan(never['b']) and math.isnan(never['d'])


def test_candidates_reject_bad_selection():
    rho = density_operator(singlet_vector(1))
    with pytest.raises(ValueError):
        selected_expectation_candidates(rho, [0.0] * 4, {1: 1, 2: 1, 3: 1})
    with pytest.raises(ValueError):
        selected_expectation_candidates(rho, [0.0] * 4, {5: 1})
    with pytest.raises(ValueError):
        selected_expectation_candidates(rho, [0.0] * 3, {4: 1})


@pytest.mark.parametrize('which, signs, dirs', [
    ('pm5', {4: 1}, [0.0] * 4),
    ('pm4', {3: 1}, [0.0] * 4),
    ('pm4', {4: 0}, [0.0] * 4),
    ('pm3pm4_theta', {3: 1, 4: 1}, [(0.1, 0.2)] * 4),
    ('pm3pm4_full', {3: 1, 4: 1}, [0.0] * 3),
])
def test_selected_closed_form_rejects_bad_arguments(which, signs, dirs):
    with pytest.raises(ValueError):
        selected_expectation_closed_form(which, signs, dirs)


def test_ghzm_selected_expectation():
    assert selected_expectation_ghzm(1, [0.0] * 3) == pytest.approx(0.5)
    equatorial = [(math.pi / 2, 0.0)] * 3
    assert selected_expectation_ghzm(1, equatorial) == pytest.approx(0.5)
    assert selected_expectation_ghzm(-1, equatorial) == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        selected_expectation_ghzm(0, equatorial)
    with pytest.raises(ValueError):
        selected_expectation_ghzm(1, [0.0] * 4)


# ---------------------------------------------------------------------------
# スキャン
# ---------------------------------------------------------------------------

def test_scan_curve_a_endpoints():
    frame = scan('a', 3)
    assert list(frame.columns) == SCAN_COLUMNS
    assert frame['expectation'].tolist() == pytest.approx([1.0, -1.0, 1.0], abs=1e-12)
    assert frame['theta'].tolist() == pytest.approx([0.0, math.pi, 2 * math.pi])
    assert (frame['p_even'] + frame['p_odd']).tolist() == pytest.approx([1.0] * 3)


@pytest.mark.parametrize('curve, form, tau, thetas', [
    ('a', 'Psi242_theta', None, lambda t: (t, 0.0, 0.0, 0.0)),
    ('b', 'Psi242_theta', None, lambda t: (t, 0.0, 0.0, math.pi)),
    ('c', 'Psi241_theta', None, lambda t: (t, t, -t, t)),
    ('d', 'Psi241_theta', None, lambda t: (t, math.pi / 4, -t, t)),
    ('e', 'tau_theta', math.pi / 4, lambda t: (t, math.pi / 4, -t, t)),
    ('f', 'tau_theta', math.pi / 4, lambda t: (t, 0.0, -t, t)),
])
def test_scan_matches_closed_forms(curve, form, tau, thetas):
    frame = scan(curve, 37)
    for theta, expectation in zip(frame['theta'], frame['expectation']):
        assert expectation == pytest.approx(closed_form_E(form, thetas(theta), tau), abs=1e-12)


def test_scan_rejects_bad_arguments():
    with pytest.raises(ValueError):
        scan('g', 10)
    with pytest.raises(ValueError):
        scan('a', 1)


def test_scan_to_csv():
    text = scan_to_csv(scan('a', 3))
    lines = text.split('\n')
    assert lines[0] == 'theta,p_even,p_odd,expectation'
    assert len(lines) == 5 and lines[-1] == ''
    assert [float(v) for v in lines[1].split(',')] == pytest.approx([0.0, 1.0, 0.0, 1.0], abs=1e-12)
    assert text.endswith('\n') and '\r' not in text
