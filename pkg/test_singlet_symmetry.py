#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
対称性解析のテスト (パリティ・置換・ヤング図形)

実行:
    pytest test_singlet_symmetry.py
"""

import math

import pytest

from exactnum import ONE
from singlet_builder import build_layers, singlet_basis, zigzag_state
from singlet_symmetry import (
    Parity,
    Partition,
    adjacent_transposition,
    cell_parity_table,
    check_coxeter_relations,
    commutant_dimension,
    flip_magnetic,
    hook_length_dimension,
    observed_cell_parity,
    parity_of,
    partitions_of,
    predicted_parity,
    singlet_partition,
    singlet_space_closure_check,
    transposition_matrices,
    young_dimension,
)


# ---------------------------------------------------------------------------
# パリティ
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('n, spin, expected', [
    (2, "1/2", Parity.ODD),
    (4, "1/2", Parity.EVEN),
    (6, "1/2", Parity.ODD),
    (2, 1, Parity.EVEN),
    (3, 1, Parity.ODD),
    (4, 1, Parity.EVEN),
])
def test_singlet_parity(n, spin, expected):
    assert predicted_parity(n, 0, spin) == expected
    for state in singlet_basis(n, spin):
        assert parity_of(state) == expected


def test_single_particle_is_even():
    assert predicted_parity(1, "1/2", "1/2") == Parity.EVEN
    assert predicted_parity(1, 1, 1) == Parity.EVEN


def test_flip_magnetic_negates_words():
    state = singlet_basis(4, "1/2")[0]
    flipped = flip_magnetic(state)
    assert flipped.m == -state.m
    assert flipped.amplitude((-1, -1, 1, 1)) == state.amplitude((1, 1, -1, -1))
    assert flip_magnetic(flipped).amps == state.amps


def test_parity_against_partner_and_non_eigenstate():
    layer = build_layers(3, "1/2")[2]
    top = layer.cell("3/2", "3/2")[0]
    bottom = layer.cell("3/2", "-3/2")[0]
    assert parity_of(top, bottom) == Parity.EVEN
    assert parity_of(top) == Parity.NOT_EIGENSTATE

    # 一重項と三重項 m=0 はパリティが逆
    mixed_layer = build_layers(2, "1/2")[1]
    singlet = mixed_layer.cell(0, 0)[0]
    triplet = mixed_layer.cell(1, 0)[0]
    assert parity_of(singlet) == Parity.ODD
    assert parity_of(triplet) == Parity.EVEN
    assert parity_of(singlet, triplet) == Parity.NOT_EIGENSTATE


def test_predicted_parity_errors():
    with pytest.raises(ValueError):
        predicted_parity(3, 0, "1/2")
    with pytest.raises(ValueError):
        predicted_parity(0, 0, "1/2")


@pytest.mark.parametrize('spin, n_max', [("1/2", 8), (1, 6)])
def test_observed_parity_agrees_with_prediction(spin, n_max):
    layers = build_layers(n_max, spin)
    table = cell_parity_table(layers)
    assert list(table.columns) == ['h', 'j', 'observed', 'predicted', 'agrees']
    assert table['agrees'].all()
    assert (table['observed'] != Parity.NOT_EIGENSTATE.value).all()
    assert len(table) == sum(len(layer.j_values()) for layer in layers)


def test_observed_cell_parity_spin_one_pair():
    layer = build_layers(2, 1)[1]
    assert observed_cell_parity(layer, 2) == Parity.EVEN
    assert observed_cell_parity(layer, 1) == Parity.ODD
    assert observed_cell_parity(layer, 0) == Parity.EVEN


# ---------------------------------------------------------------------------
# 置換
# ---------------------------------------------------------------------------

def test_adjacent_transposition_swaps_sites():
    state = singlet_basis(2, "1/2")[0]
    swapped = adjacent_transposition(state, 1)
    assert swapped.amps == {w: -v for w, v in state.amps.items()}
    with pytest.raises(ValueError):
        adjacent_transposition(state, 0)
    with pytest.raises(ValueError):
        adjacent_transposition(state, 2)


@pytest.mark.parametrize('n, spin', [(2, "1/2"), (4, "1/2"), (6, "1/2"), (3, 1), (4, 1)])
def test_singlet_space_closed_under_transpositions(n, spin):
    assert singlet_space_closure_check(singlet_basis(n, spin))


@pytest.mark.parametrize('n', [2, 4, 6])
def test_spin_half_singlet_space_dimension(n):
    basis = singlet_basis(n, "1/2")
    assert len(basis) == young_dimension(singlet_partition(n))


@pytest.mark.parametrize('n, spin', [(4, "1/2"), (6, "1/2"), (4, 1)])
def test_transposition_matrices_form_representation(n, spin):
    matrices = transposition_matrices(singlet_basis(n, spin))
    assert len(matrices) == n - 1
    assert check_coxeter_relations(matrices)


@pytest.mark.parametrize('n', [4, 6])
def test_spin_half_singlet_representation_is_irreducible(n):
    matrices = transposition_matrices(singlet_basis(n, "1/2"))
    assert commutant_dimension(matrices) == 1


def test_spin_one_four_particle_representation_is_reducible():
    # 3 次元 = 自明表現 (4) ⊕ (2, 2)
    matrices = transposition_matrices(singlet_basis(4, 1))
    assert commutant_dimension(matrices) == 2


def test_transposition_keeps_zigzag_in_span():
    zigzag = zigzag_state([2, 2, 2], "1/2")
    basis = singlet_basis(6, "1/2")
    matrices = transposition_matrices(basis)
    # 互換 (2,3) は 5 番目の状態を別の状態の組み合わせに写す
    column = [matrices[1][a][zigzag.i - 1] for a in range(len(basis))]
    assert sum(1 for value in column if value) > 1
    # (1,2) では Bell 対の符号が反転するだけ
    assert matrices[0][zigzag.i - 1][zigzag.i - 1] == -ONE


# ---------------------------------------------------------------------------
# ヤング図形
# ---------------------------------------------------------------------------

@pytest.mark.parametrize('parts, expected', [
    ((1,), 1),
    ((2, 2), 2),
    ((3, 3), 5),
    ((4, 4), 14),
    ((2, 1), 2),
    ((3, 1), 3),
    ((3, 2, 1), 16),
    ((1, 1, 1, 1), 1),
])
def test_young_dimension_known_values(parts, expected):
    assert young_dimension(parts) == expected


def test_young_dimension_matches_hook_lengths():
    for n in range(1, 13):
        total = 0
        for partition in partitions_of(n):
            dimension = young_dimension(partition)
            assert dimension == hook_length_dimension(partition), partition
            total += dimension ** 2
        # Σ dim^2 = n!
        assert total == math.factorial(n)


def test_partitions_of_order_and_count():
    assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert sum(1 for _ in partitions_of(12)) == 77
    with pytest.raises(ValueError):
        list(partitions_of(0))


def test_partition_validation_and_conjugate():
    assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
    assert Partition((2, 2)).size == 4
    with pytest.raises(ValueError):
        Partition(())
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_singlet_partition():
    assert singlet_partition(6) == Partition((3, 3))
    with pytest.raises(ValueError):
        singlet_partition(5)
    with pytest.raises(ValueError):
        singlet_partition(4, 1)
