#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
構成結果の検証スイート

目的:
- 状態数 (漸化式・完全性・カタラン数)
- 正規直交性と m セクター
- J+ / J- による消滅 (一重項と最高・最低ウェイト状態)
- パリティの観測値と予測値の一致
- 一重項空間が置換で閉じること、その次元
- (スピン 1/2) 閉形式の相関関数とトレース計算の一致

実行:
    python singlet_cli.py verify --spin2 1 --nmax 8
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import pandas as pd

from clebsch_gordan import HalfInt, HalfIntLike
from correlations import closed_form_agreement
from exactnum import ONE, ZERO
from singlet_builder import (
    Layer,
    SingletBasis,
    apply_total_lowering,
    apply_total_raising,
    build_layers,
    count_states,
    gram_matrix,
)
from singlet_symmetry import cell_parity_table, singlet_space_closure_check, young_dimension

logger = logging.getLogger(__name__)

RESULT_COLUMNS = ['check', 'passed', 'detail']


@dataclass
class CheckResult:
    """検証1件の結果"""
    check: str
    passed: bool
    detail: str


def check_counts(layers: Sequence[Layer]) -> CheckResult:
    """各セルの状態数が漸化式と一致し、m によらないこと"""
    for layer in layers:
        for j in layer.j_values():
            expected = count_states(j, layer.h, layer.spin)
            for m2 in range(-j.twice, j.twice + 1, 2):
                actual = len(layer.cell(j, HalfInt(m2)))
                if actual != expected:
                    return CheckResult('counts', False,
                                       f"h={layer.h}, j={j}, m={HalfInt(m2)}: {actual} != {expected}")
    return CheckResult('counts', True, f"{len(layers)} 層のセル数が漸化式と一致")


def check_completeness(layers: Sequence[Layer]) -> CheckResult:
    """Σ_j g(j, h)(2j+1) = (2s+1)^h"""
    for layer in layers:
        total = sum(layer.count(j) * (j.twice + 1) for j in layer.j_values())
        expected = (layer.spin.twice + 1) ** layer.h
        if total != expected:
            return CheckResult('completeness', False, f"h={layer.h}: {total} != {expected}")
    return CheckResult('completeness', True, "全層で次元が (2s+1)^h に一致")


def check_catalan(layers: Sequence[Layer]) -> CheckResult:
    """スピン 1/2 の一重項数 g(0, 2n) がカタラン数に一致"""
    if not layers or layers[0].spin.twice != 1:
        return CheckResult('catalan', True, "スピン 1/2 以外は対象外")
    for layer in layers:
        if layer.h % 2:
            continue
        n = layer.h // 2
        catalan = math.comb(2 * n, n) // (n + 1)
        if layer.count(0) != catalan:
            return CheckResult('catalan', False, f"N={layer.h}: {layer.count(0)} != {catalan}")
    return CheckResult('catalan', True, "一重項数がカタラン数に一致")


def check_m_sector(layers: Sequence[Layer]) -> CheckResult:
    """各基底語の磁気量子数の和が状態の m に一致"""
    for layer in layers:
        for state in layer.states():
            for word in state.amps:
                if sum(word) != state.m.twice or len(word) != layer.h:
                    return CheckResult('m_sector', False, f"{state.label}: 語 {word}")
    return CheckResult('m_sector', True, "全状態の基底語が m セクター内")


def check_orthonormality(layers: Sequence[Layer]) -> CheckResult:
    """同じ (h, m) の全状態 (j をまたぐ) のグラム行列が厳密に単位行列"""
    for layer in layers:
        m2_values = sorted({m2 for _, m2 in layer.cells})
        for m2 in m2_values:
            states = [s for (j2, cm2), cell in sorted(layer.cells.items()) if cm2 == m2 for s in cell]
            gram = gram_matrix(states)
            for a, row in enumerate(gram):
                for b, value in enumerate(row):
                    if value != (ONE if a == b else ZERO):
                        return CheckResult('orthonormality', False,
                                           f"⟨{states[a].label}|{states[b].label}⟩ = {value}")
    return CheckResult('orthonormality', True, "全 (h, m) で厳密に正規直交")


def check_annihilation(layers: Sequence[Layer]) -> CheckResult:
    """J+ が最高ウェイト、J- が最低ウェイトの状態を消すこと (一重項は両方)"""
    for layer in layers:
        for j in layer.j_values():
            for state in layer.cell(j, j):
                if apply_total_raising(state):
                    return CheckResult('annihilation', False, f"J+ {state.label} ≠ 0")
            for state in layer.cell(j, -j):
                if apply_total_lowering(state):
                    return CheckResult('annihilation', False, f"J- {state.label} ≠ 0")
    return CheckResult('annihilation', True, "J+ / J- による消滅を確認")


def check_parity(layers: Sequence[Layer]) -> CheckResult:
    """全セルの観測パリティが格子経路の予測と一致"""
    table = cell_parity_table(layers)
    failed = table[~table['agrees']]
    if not failed.empty:
        first = failed.iloc[0]
        return CheckResult('parity', False,
                           f"h={first['h']}, j={first['j']}: 観測 {first['observed']} / 予測 {first['predicted']}")
    return CheckResult('parity', True, f"{len(table)} セルでパリティが予測と一致")


def check_closure(layers: Sequence[Layer]) -> CheckResult:
    """一重項空間が隣接互換で閉じ、スピン 1/2 では次元が (N/2, N/2) の次元に一致"""
    checked = 0
    for layer in layers:
        states = layer.cell(0, 0)
        if not states or layer.h < 2:
            continue
        basis = SingletBasis(n=layer.h, spin=layer.spin, states=list(states))
        if not singlet_space_closure_check(basis):
            return CheckResult('closure', False, f"N={layer.h}: 置換で閉じていません")
        if layer.spin.twice == 1:
            expected = young_dimension((layer.h // 2, layer.h // 2))
            if len(basis) != expected:
                return CheckResult('closure', False, f"N={layer.h}: 次元 {len(basis)} != {expected}")
        checked += 1
    return CheckResult('closure', True, f"{checked} 個の一重項空間が置換で閉じている")


def check_correlations(draws: int, seed: int, tol: float) -> CheckResult:
    """閉形式の期待値関数が密度演算子のトレース計算と一致すること"""
    table = closed_form_agreement(draws=draws, seed=seed, tol=tol)
    failed = table[~table['agrees']]
    if not failed.empty:
        first = failed.iloc[0]
        return CheckResult('correlations', False,
                           f"{first['form']}: 最大偏差 {first['max_abs_deviation']:.3e} > {tol:g}")
    worst = float(table['max_abs_deviation'].max())
    return CheckResult('correlations', True,
                       f"{len(table)} 式が {draws} 回の抽出で一致 (最大偏差 {worst:.1e}, seed={seed})")


CHECKS: List[Callable[[Sequence[Layer]], CheckResult]] = [
    check_counts,
    check_completeness,
    check_catalan,
    check_m_sector,
    check_orthonormality,
    check_annihilation,
    check_parity,
    check_closure,
]


def run_verification(spin: HalfIntLike, n_max: int, budget: Optional[int] = None,
                     correlation_config: Optional[dict] = None) -> pd.DataFrame:
    """
    h = 1..n_max の全層を構成し、全検証を実行

    Args:
        spin (HalfIntLike): 各粒子のスピン
        n_max (int): 最大粒子数
        budget (int): 振幅数の上限
        correlation_config (dict): 'random_draws', 'seed', 'tolerance' を持つ設定。
            スピン 1/2 で指定された場合は閉形式とトレースの比較も行う

    Returns:
        pd.DataFrame: 列 check, passed, detail

    Raises:
        CapacityError: 見積もり振幅数が上限を超える場合 (構成前)
    """
    layers = build_layers(n_max, spin, prune_for_singlets=False, budget=budget)
    results = []
    for check in CHECKS:
        result = check(layers)
        logger.debug("検証 %s: %s (%s)", result.check, result.passed, result.detail)
        results.append(result)
    if correlation_config is not None and HalfInt.of(spin).twice == 1:
        results.append(check_correlations(correlation_config['random_draws'],
                                          correlation_config['seed'],
                                          correlation_config['tolerance']))
    return pd.DataFrame([vars(r) for r in results], columns=RESULT_COLUMNS)
