#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
検証スイートのテスト

実行:
    pytest test_singlet_verifier.py
"""

import pytest

from singlet_builder import CapacityError, build_layers
from singlet_verifier import (
    RESULT_COLUMNS,
    check_annihilation,
    check_catalan,
    check_closure,
    check_correlations,
    check_counts,
    check_parity,
    run_verification,
)

CORRELATION_CONFIG = {'random_draws': 50, 'seed': 11, 'tolerance': 1e-10}


def test_spin_half_all_checks_pass():
    frame = run_verification("1/2", 6, correlation_config=CORRELATION_CONFIG)
    assert list(frame.columns) == RESULT_COLUMNS
    assert frame['check'].tolist() == [
        'counts', 'completeness', 'catalan', 'm_sector', 'orthonormality',
        'annihilation', 'parity', 'closure', 'correlations',
    ]
    assert frame['passed'].all(), frame


def test_spin_one_all_checks_pass():
    frame = run_verification(1, 6, correlation_config=CORRELATION_CONFIG)
    assert 'correlations' not in frame['check'].tolist()
    assert len(frame) == 8
    assert frame['passed'].all(), frame


def test_correlation_check_is_optional():
    frame = run_verification("1/2", 4)
    assert 'correlations' not in frame['check'].tolist()


def test_individual_checks_on_spin_half_layers():
    layers = build_layers(6, "1/2")
    for check in (check_counts, check_catalan, check_annihilation, check_parity, check_closure):
        result = check(layers)
        assert result.passed, result
    assert '3 個' in check_closure(layers).detail


def test_catalan_check_skips_spin_one():
    result = check_catalan(build_layers(3, 1))
    assert result.passed
    assert 'スピン 1/2 以外' in result.detail


def test_check_correlations_reports_failure():
    result = check_correlations(draws=5, seed=1, tol=-1.0)
    assert result.check == 'correlations'
    assert not result.passed


def test_capacity_is_checked_before_building():
    with pytest.raises(CapacityError):
        run_verification(1, 12, budget=1000)
