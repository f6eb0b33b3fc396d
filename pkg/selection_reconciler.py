#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
選択付き期待値の照合

閉形式で与えられた選択付き期待値 (4粒子・非ジグザグ一重項) を、同時確率から
計算した4つの候補定義と乱数で選んだ方向で比較し、どの定義と一致するかを報告する。

主な機能:
- 行 × 候補ごとの最大偏差・平均差・差のばらつき (一定のずれの検出)
- 閉形式どうしの構造的な恒等式の確認
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List

import numpy as np
import pandas as pd

from correlations import (
    closed_form_E,
    density_operator,
    directions_from_angles,
    selected_expectation_candidates,
    selected_expectation_closed_form,
    singlet_vector,
)
from singlet_constants import (
    IDENTITY_TOLERANCE,
    SELECTION_CANDIDATES,
    SELECTION_MATCH_TOLERANCE,
    SELECTION_ROWS,
)

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ['row', 'candidate', 'max_abs_deviation', 'mean_offset', 'offset_spread', 'matches']
IDENTITY_COLUMNS = ['identity', 'max_abs_deviation', 'holds']


@dataclass
class ReconciliationReport:
    """
    照合結果

    Attributes:
        candidates (pd.DataFrame): 行 × 候補ごとの比較 (REPORT_COLUMNS)
        identities (pd.DataFrame): 閉形式どうしの恒等式 (IDENTITY_COLUMNS)
        samples (int): 乱数で選んだ方向の組の数
        seed (int): 乱数シード
    """
    candidates: pd.DataFrame
    identities: pd.DataFrame
    samples: int
    seed: int

    def matched(self) -> Dict[str, List[str]]:
        """行 → 一致した候補の一覧"""
        result = {row: [] for row in SELECTION_ROWS}
        for record in self.candidates.itertuples():
            if record.matches:
                result[record.row].append(record.candidate)
        return result


def reconcile_selection(samples: int = 200, seed: int = 12345,
                        tol: float = SELECTION_MATCH_TOLERANCE) -> ReconciliationReport:
    """
    閉形式の各行と候補定義 a〜d を比較

    Args:
        samples (int): 方向の組の数
        seed (int): 乱数シード (θ ∈ [0, π], φ ∈ [0, 2π))
        tol (float): 候補一致とみなす最大偏差 (恒等式の判定は IDENTITY_TOLERANCE で固定)

    Raises:
        ValueError: samples < 1 の場合
    """
    if samples < 1:
        raise ValueError(f"samples は 1 以上である必要があります: {samples}")
    rng = np.random.default_rng(seed)
    rho = density_operator(singlet_vector(1))

    differences: Dict[tuple, List[float]] = {
        (row, cand): [] for row in SELECTION_ROWS for cand in SELECTION_CANDIDATES
    }
    identity_deviation = {
        'pm4 = 1/12 ± E(Psi241_full)/2': 0.0,
        'pm3pm4_full(φ=0) = pm3pm4_theta': 0.0,
        'pm2pm4_full(φ=0) = pm2pm4_theta': 0.0,
    }

    for _ in range(samples):
        thetas = rng.uniform(0.0, math.pi, size=4)
        phis = rng.uniform(0.0, 2.0 * math.pi, size=4)
        full_dirs = directions_from_angles(thetas, phis)
        theta_dirs = directions_from_angles(thetas)

        for row, fixed_particles in SELECTION_ROWS.items():
            dirs = theta_dirs if row.endswith('_theta') else full_dirs
            for pattern in itertools.product((1, -1), repeat=len(fixed_particles)):
                signs = dict(zip(fixed_particles, pattern))
                printed = selected_expectation_closed_form(row, signs, dirs)
                computed = selected_expectation_candidates(rho, dirs, signs)
                for cand in SELECTION_CANDIDATES:
                    differences[(row, cand)].append(printed - computed[cand])

        psi241 = closed_form_E('Psi241_full', full_dirs)
        for sign in (1, -1):
            deviation = abs(selected_expectation_closed_form('pm4', {4: sign}, full_dirs)
                            - (1 / 12 + sign * 0.5 * psi241))
            key = 'pm4 = 1/12 ± E(Psi241_full)/2'
            identity_deviation[key] = max(identity_deviation[key], deviation)
        for a, b in itertools.product((1, -1), repeat=2):
            for row_name, fixed in (('pm3pm4', (3, 4)), ('pm2pm4', (2, 4))):
                signs = dict(zip(fixed, (a, b)))
                deviation = abs(selected_expectation_closed_form(f'{row_name}_full', signs, theta_dirs)
                                - selected_expectation_closed_form(f'{row_name}_theta', signs, theta_dirs))
                key = f'{row_name}_full(φ=0) = {row_name}_theta'
                identity_deviation[key] = max(identity_deviation[key], deviation)

    records = []
    for (row, cand), values in differences.items():
        values = np.asarray(values)
        # NaN (選択確率 0) を含む候補は一致とみなさない
        max_dev = float(np.max(np.abs(values))) if not np.isnan(values).any() else math.nan
        records.append({
            'row': row,
            'candidate': cand,
            'max_abs_deviation': max_dev,
            'mean_offset': float(np.mean(values)),
            'offset_spread': float(np.ptp(values)),
            'matches': bool(max_dev <= tol),
        })
    candidates = pd.DataFrame(records, columns=REPORT_COLUMNS)
    identities = pd.DataFrame(
        [{'identity': k, 'max_abs_deviation': v, 'holds': v <= IDENTITY_TOLERANCE}
         for k, v in identity_deviation.items()],
        columns=IDENTITY_COLUMNS,
    )
    logger.debug("選択相関の照合: %d 組の方向 (seed=%d)", samples, seed)
    return ReconciliationReport(candidates=candidates, identities=identities,
                                samples=samples, seed=seed)
