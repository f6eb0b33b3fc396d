#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一重項構成エンジンの定数定義

このファイルはパッケージ全体で使用する定数を定義します。
どのモジュールからでもインポートして利用できます。

スピン・磁気量子数・合成角運動量はすべて「2倍値」の整数で受け渡す
(スピン 1/2 → 1, スピン 1 → 2)。
"""

import math

# スピン (2倍値) → 表示名
SPIN_NAMES = {
    1: '1/2',
    2: '1',
    3: '3/2',
    4: '2',
}

# スピン 1/2 の単一粒子状態の表記 (2倍値 → 記号)
SPIN_HALF_LETTERS = {
    1: '+',
    -1: '-',
}

# エクスポート文書のスキーマバージョン
EXPORT_SCHEMA_VERSION = '1.0'

# 許容誤差
FLOAT_TOLERANCE = 1e-12          # 浮動小数点の一致判定
CORRELATION_TOLERANCE = 1e-10    # 閉形式と密度演算子トレースの一致判定
SELECTION_MATCH_TOLERANCE = 1e-9  # 選択相関の候補一致判定
IDENTITY_TOLERANCE = 1e-12       # 選択相関の構造的恒等式の判定 (候補一致とは独立)

# 振幅数の上限 (これを超える構成は開始前に拒否)
DEFAULT_AMPLITUDE_BUDGET = 10_000_000

# 角度スキャンの既定サンプル数
DEFAULT_SCAN_SAMPLES = 101

# CLI 終了コード
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3

# 閉形式相関の識別子 → 必要な粒子数
CLOSED_FORM_ARITY = {
    'Psi241_full': 4,
    'Psi241_theta': 4,
    'Psi241_equatorial': 4,
    'Psi242_full': 4,
    'Psi242_theta': 4,
    'tau_theta': 4,
    'tau_full': 4,
    'twopartite_full': 2,
    'twopartite_theta': 2,
    'twopartite_equatorial': 2,
}

# 選択付き相関の識別子 → 符号を固定する粒子 (1始まり)
SELECTION_ROWS = {
    'pm4': (4,),
    'pm3pm4_theta': (3, 4),
    'pm3pm4_full': (3, 4),
    'pm2pm4_theta': (2, 4),
    'pm2pm4_full': (2, 4),
}

# 選択付き相関の候補となる計算方式
SELECTION_CANDIDATES = {
    'a': '非正規化・全粒子の符号積',
    'b': '正規化・全粒子の符号積',
    'c': '非正規化・自由粒子の符号積',
    'd': '正規化・自由粒子の符号積',
}

# 角度スキャン曲線: 曲線名 → (τ, θ → (θ1, θ2, θ3, θ4), 説明)
SCAN_CURVES = {
    'a': {
        'tau': 0.0,
        'thetas': lambda t: (t, 0.0, 0.0, 0.0),
        'description': 'τ=0, θ1=θ, θ2=θ3=θ4=0',
    },
    'b': {
        'tau': 0.0,
        'thetas': lambda t: (t, 0.0, 0.0, math.pi),
        'description': 'τ=0, θ1=θ, θ2=θ3=0, θ4=π',
    },
    'c': {
        'tau': math.pi / 2,
        'thetas': lambda t: (t, t, -t, t),
        'description': 'τ=π/2, θ1=θ2=-θ3=θ4=θ',
    },
    'd': {
        'tau': math.pi / 2,
        'thetas': lambda t: (t, math.pi / 4, -t, t),
        'description': 'τ=π/2, θ1=-θ3=θ4=θ, θ2=π/4',
    },
    'e': {
        'tau': math.pi / 4,
        'thetas': lambda t: (t, math.pi / 4, -t, t),
        'description': 'τ=π/4, θ1=-θ3=θ4=θ, θ2=π/4',
    },
    'f': {
        'tau': math.pi / 4,
        'thetas': lambda t: (t, 0.0, -t, t),
        'description': 'τ=π/4, θ1=-θ3=θ4=θ, θ2=0',
    },
}

# スキャン結果 CSV の列
SCAN_COLUMNS = ['theta', 'p_even', 'p_odd', 'expectation']


def get_spin_name(spin_twice):
    """スピン (2倍値) から表示名を取得"""
    if spin_twice in SPIN_NAMES:
        return SPIN_NAMES[spin_twice]
    if spin_twice % 2 == 0:
        return str(spin_twice // 2)
    return f"{spin_twice}/2"


def get_scan_curve(name):
    """
    スキャン曲線の定義を取得

    Raises:
        ValueError: 未知の曲線名の場合
    """
    if name not in SCAN_CURVES:
        raise ValueError(f"未知のスキャン曲線です: {name} (有効: {', '.join(SCAN_CURVES)})")
    return SCAN_CURVES[name]


def get_selection_fixed_particles(row):
    """
    選択付き相関の行から符号を固定する粒子を取得

    Raises:
        ValueError: 未知の行の場合
    """
    if row not in SELECTION_ROWS:
        raise ValueError(f"未知の選択相関です: {row} (有効: {', '.join(SELECTION_ROWS)})")
    return SELECTION_ROWS[row]
