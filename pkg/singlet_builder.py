#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
結合状態構成エンジン (Coupled State Builder)

h 粒子の同時固有状態 |h, j, m, i⟩ を、h-1 粒子の状態に1粒子を CG 係数で
結合して再帰的に構成する。すべての振幅は exactnum.RadicalSum で厳密に保持する。

主な機能:
- 1段の結合 (j+s へ上昇 / j-s へ下降 / j のまま水平、および一般スピン用の任意段)
- 層の構成 (h = 1..N) と一重項基底 (j = 0, m = 0) の取得
- 状態数の漸化式 count_states と数表 count_triangle
- ジグザグ積 (2粒子・3粒子一重項ブロックのテンソル積)
- 厳密な内積・グラム行列・射影、J+ / J- の作用
- 振幅数の事前見積もりによる容量ガード (CapacityError)

列挙順:
- 各セル (h, j, m) 内では、親の j が大きい順 (j+s, ..., j-s)、同じ親 j の中では
  親の列挙番号の順に並べる。番号 i は 1 始まりで、同じ (h, j) のすべての m で共通。

Author: Kirisame Team
Date: 2026-10-17
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from clebsch_gordan import HalfInt, HalfIntLike, _cg_twice, check_jm, triangle_ok
from exactnum import ONE, ZERO, RadicalSum, rad_sqrt_rational, rad_to_float
from singlet_constants import DEFAULT_AMPLITUDE_BUDGET

logger = logging.getLogger(__name__)

# 各粒子の磁気量子数 (2倍値) の並び
BasisWord = Tuple[int, ...]
AmplitudeMap = Dict[BasisWord, RadicalSum]


class ConstructionError(ValueError):
    """結合ステップが実行できない (元になる状態が無い、0 より下への下降など)"""


class UnsupportedPathError(ConstructionError):
    """半整数スピンに対する水平ステップの要求"""


class CapacityError(RuntimeError):
    """見積もり振幅数が上限を超える"""


@dataclass(frozen=True, eq=False)
class CoupledState:
    """
    結合状態 |h, j, m, i⟩

    Attributes:
        spin (HalfInt): 各粒子のスピン
        h (int): 粒子数
        j (HalfInt): 合成角運動量
        m (HalfInt): 磁気量子数
        i (int): セル内の列挙番号 (1 始まり、列挙外の状態は 0)
        amps (Dict[BasisWord, RadicalSum]): 基底語 → 振幅 (0 の項は持たない)
        path (Tuple[int, ...]): h=1..h の中間 j (2倍値)。構成経路が無い状態では空
    """
    spin: HalfInt
    h: int
    j: HalfInt
    m: HalfInt
    i: int
    amps: Dict[BasisWord, RadicalSum] = field(repr=False)
    path: Tuple[int, ...] = ()

    @property
    def label(self) -> str:
        return f"|{self.h}, {self.j}, {self.m}, {self.i}⟩"

    def amplitude(self, word: BasisWord) -> RadicalSum:
        return self.amps.get(tuple(word), ZERO)

    def norm_squared(self) -> RadicalSum:
        return inner_product(self, self)


# 同じ (h, j, i) の m ごとの状態: m (2倍値) → 状態
Multiplet = Dict[int, CoupledState]


@dataclass
class Layer:
    """
    粒子数 h の全状態

    Attributes:
        h (int): 粒子数
        spin (HalfInt): 各粒子のスピン
        cells (Dict[Tuple[int, int], List[CoupledState]]): (j, m) (2倍値) → 列挙順の状態
    """
    h: int
    spin: HalfInt
    cells: Dict[Tuple[int, int], List[CoupledState]] = field(default_factory=dict)

    def cell(self, j: HalfIntLike, m: HalfIntLike) -> List[CoupledState]:
        key = (HalfInt.of(j).twice, HalfInt.of(m).twice)
        return self.cells.get(key, [])

    def j_values(self) -> List[HalfInt]:
        """存在する j を降順で返す"""
        return [HalfInt(t) for t in sorted({j2 for j2, _ in self.cells}, reverse=True)]

    def count(self, j: HalfIntLike) -> int:
        j2 = HalfInt.of(j).twice
        return len(self.cells.get((j2, j2), []))

    def multiplet(self, j: HalfIntLike, i: int) -> Multiplet:
        """(j, i) の多重項を m → 状態 の辞書で返す"""
        j2 = HalfInt.of(j).twice
        return {
            m2: states[i - 1]
            for (cj2, m2), states in self.cells.items()
            if cj2 == j2 and len(states) >= i
        }

    def states(self) -> Iterable[CoupledState]:
        for key in sorted(self.cells, key=lambda k: (-k[0], -k[1])):
            yield from self.cells[key]

    def amplitude_count(self) -> int:
        return sum(len(s.amps) for s in self.states())


@dataclass
class SingletBasis:
    """
    N 粒子の一重項基底 (j = 0, m = 0 のセル)

    Attributes:
        n (int): 粒子数
        spin (HalfInt): 各粒子のスピン
        states (List[CoupledState]): 列挙順の一重項
    """
    n: int
    spin: HalfInt
    states: List[CoupledState] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, index: int) -> CoupledState:
        return self.states[index]


# ---------------------------------------------------------------------------
# 状態数
# ---------------------------------------------------------------------------

def _parent_j2s(j2_new: int, s2: int) -> List[int]:
    """j_new に結合できる親 j (2倍値) を列挙順 (降順) で返す"""
    parents = []
    for k in range(s2 + 1):
        jp2 = j2_new + s2 - 2 * k
        if jp2 < 0:
            break
        if abs(jp2 - s2) <= j2_new:
            parents.append(jp2)
    return parents


@lru_cache(maxsize=64)
def _count_table(s2: int, h_max: int) -> Tuple[Dict[int, int], ...]:
    """h = 1..h_max の (j 2倍値 → 状態数) の表"""
    rows: List[Dict[int, int]] = [{s2: 1}]
    for _ in range(2, h_max + 1):
        prev = rows[-1]
        top = max(prev) + s2
        row = {}
        for j2 in range(top, -1, -2):
            total = sum(prev.get(jp2, 0) for jp2 in _parent_j2s(j2, s2))
            if total:
                row[j2] = total
        rows.append(row)
    return tuple(rows)


def _validate_spin(spin: HalfIntLike) -> HalfInt:
    spin = HalfInt.of(spin)
    if spin.twice < 1:
        raise ValueError(f"スピンは 1/2 以上である必要があります: {spin}")
    return spin


def count_states(j: HalfIntLike, h: int, spin: HalfIntLike) -> int:
    """
    h 粒子・合成角運動量 j のセル1つあたりの状態数

    漸化式 g(j, h) = Σ g(j', h-1) (|j'-s| <= j <= j'+s)、g(s, 1) = 1。
    スピン 1/2 の一重項では g(0, 2n) はカタラン数になる。

    Raises:
        ValueError: h < 1 またはスピン・j が不正な場合
    """
    spin = _validate_spin(spin)
    j = HalfInt.of(j)
    if h < 1:
        raise ValueError(f"粒子数は 1 以上である必要があります: h={h}")
    if j.twice < 0:
        raise ValueError(f"j は 0 以上である必要があります: j={j}")
    return _count_table(spin.twice, h)[h - 1].get(j.twice, 0)


def count_triangle(spin: HalfIntLike, n_max: int) -> pd.DataFrame:
    """
    状態数の三角表 (行: j 降順、列: N = 1..n_max、存在しないセルは 0)

    Returns:
        pd.DataFrame: index 'j' は表示用文字列
    """
    spin = _validate_spin(spin)
    if n_max < 1:
        raise ValueError(f"n_max は 1 以上である必要があります: {n_max}")
    table = _count_table(spin.twice, n_max)
    j2_values = sorted({j2 for row in table for j2 in row}, reverse=True)
    data = {
        h: [table[h - 1].get(j2, 0) for j2 in j2_values]
        for h in range(1, n_max + 1)
    }
    frame = pd.DataFrame(data, index=[str(HalfInt(j2)) for j2 in j2_values])
    frame.index.name = 'j'
    frame.columns.name = 'N'
    return frame


def _next_word_counts(counts: Dict[int, int], s2: int) -> Dict[int, int]:
    """語の長さを1つ伸ばしたときの「磁気量子数の和 (2倍値) → 語の数」"""
    nxt: Dict[int, int] = {}
    for total, c in counts.items():
        for mu2 in range(-s2, s2 + 1, 2):
            nxt[total + mu2] = nxt.get(total + mu2, 0) + c
    return nxt


def _kept_j2s(h: int, s2: int, n: int, prune: bool) -> List[int]:
    row = _count_table(s2, max(h, n))[h - 1]
    j2s = sorted(row, reverse=True)
    if prune:
        j2s = [j2 for j2 in j2s if j2 <= (n - h) * s2]
    return j2s


def predicted_amplitude_count(n: int, spin: HalfIntLike, prune: bool = True) -> int:
    """
    構成前に、保持する振幅数の上限を見積もる

    各セル (h, j, m) について「状態数 × 磁気量子数の和が m の語の数」を合計する。
    """
    spin = _validate_spin(spin)
    s2 = spin.twice
    table = _count_table(s2, n)
    words = {0: 1}
    total = 0
    for h in range(1, n + 1):
        words = _next_word_counts(words, s2)
        for j2 in _kept_j2s(h, s2, n, prune):
            per_cell = table[h - 1][j2]
            for m2 in range(-j2, j2 + 1, 2):
                total += per_cell * words.get(m2, 0)
    return total


def _check_capacity(n: int, spin: HalfInt, prune: bool, budget: Optional[int]) -> None:
    budget = DEFAULT_AMPLITUDE_BUDGET if budget is None else budget
    predicted = predicted_amplitude_count(n, spin, prune)
    logger.debug("振幅数の見積もり: N=%d, s=%s, prune=%s → %d (上限 %d)",
                 n, spin, prune, predicted, budget)
    if predicted > budget:
        raise CapacityError(
            f"N={n}, s={spin} の構成は振幅数 {predicted:,} が上限 {budget:,} を超えます"
        )


# ---------------------------------------------------------------------------
# 結合ステップ
# ---------------------------------------------------------------------------

def single_particle_multiplet(spin: HalfIntLike) -> Multiplet:
    """1粒子の多重項 |1, s, m, 1⟩ (m = -s..s)"""
    spin = _validate_spin(spin)
    s2 = spin.twice
    return {
        m2: CoupledState(spin=spin, h=1, j=spin, m=HalfInt(m2), i=1,
                         amps={(m2,): ONE}, path=(s2,))
        for m2 in range(-s2, s2 + 1, 2)
    }


def _multiplet_head(prev: Multiplet) -> CoupledState:
    if not prev:
        raise ConstructionError("元になる多重項が空です")
    return next(iter(prev.values()))


def couple(prev: Multiplet, spin: HalfIntLike, j_new: HalfIntLike, m: HalfIntLike,
           i: Optional[int] = None) -> CoupledState:
    """
    多重項 prev (h-1 粒子、合成角運動量 j') に1粒子を結合して |h, j_new, m⟩ を作る

    |h, j, m⟩ = Σ_μ ⟨j', m-μ, s, μ | j, m⟩ |h-1, j', m-μ⟩ ⊗ |s, μ⟩

    Args:
        prev (Multiplet): m (2倍値) → h-1 粒子の状態 (同じ j', i')
        spin (HalfIntLike): 追加する粒子のスピン
        j_new (HalfIntLike): 結合後の j
        m (HalfIntLike): 結合後の m
        i (int): 結合後の列挙番号 (省略時は親の番号)

    Returns:
        CoupledState: 正規化済みの状態

    Raises:
        ConstructionError: 三角条件を満たさない、または必要な元状態が無い場合
    """
    spin = HalfInt.of(spin)
    j_new = HalfInt.of(j_new)
    m = HalfInt.of(m)
    head = _multiplet_head(prev)
    jp2, s2 = head.j.twice, spin.twice
    if j_new.twice < 0:
        raise ConstructionError(f"j は 0 未満にできません: {head.j} → {j_new}")
    if not triangle_ok(head.j, spin, j_new):
        raise ConstructionError(f"結合できません: j'={head.j}, s={spin} → j={j_new}")
    check_jm(j_new, m)

    amps: AmplitudeMap = {}
    for mu2 in range(-s2, s2 + 1, 2):
        mp2 = m.twice - mu2
        if abs(mp2) > jp2:
            continue
        coeff = _cg_twice(jp2, mp2, s2, mu2, j_new.twice, m.twice)
        if coeff.is_zero():
            continue
        source = prev.get(mp2)
        if source is None:
            raise ConstructionError(
                f"元になる状態 |{head.h}, {head.j}, {HalfInt(mp2)}⟩ がありません"
            )
        for word, value in source.amps.items():
            amps[word + (mu2,)] = value * coeff

    path = head.path + (j_new.twice,) if head.path else ()
    return CoupledState(spin=spin, h=head.h + 1, j=j_new, m=m,
                        i=head.i if i is None else i, amps=amps, path=path)


def couple_up(prev: Multiplet, spin: HalfIntLike, m: HalfIntLike,
              i: Optional[int] = None) -> CoupledState:
    """j' → j' + s の結合"""
    head = _multiplet_head(prev)
    return couple(prev, spin, head.j + HalfInt.of(spin), m, i)


def couple_down(prev: Multiplet, spin: HalfIntLike, m: HalfIntLike,
                i: Optional[int] = None) -> CoupledState:
    """
    j' → j' - s の結合

    Raises:
        ConstructionError: j' < s の場合
    """
    head = _multiplet_head(prev)
    spin = HalfInt.of(spin)
    if head.j.twice < spin.twice:
        raise ConstructionError(f"j'={head.j} から s={spin} だけ下降できません")
    return couple(prev, spin, head.j - spin, m, i)


def couple_level(prev: Multiplet, spin: HalfIntLike, m: HalfIntLike,
                 i: Optional[int] = None) -> CoupledState:
    """
    j' → j' の水平結合 (整数スピンのみ)

    Raises:
        UnsupportedPathError: 半整数スピンの場合
        ConstructionError: 三角条件を満たさない場合 (スピン 1 で j'=0 など)
    """
    head = _multiplet_head(prev)
    spin = HalfInt.of(spin)
    if not spin.is_integer():
        raise UnsupportedPathError(f"半整数スピン s={spin} では水平ステップはできません")
    return couple(prev, spin, head.j, m, i)


# ---------------------------------------------------------------------------
# 層の構成
# ---------------------------------------------------------------------------

def _first_layer(spin: HalfInt) -> Layer:
    layer = Layer(h=1, spin=spin)
    for m2, state in single_particle_multiplet(spin).items():
        layer.cells[(spin.twice, m2)] = [state]
    return layer


def _next_layer(prev_layer: Layer, n: int, prune: bool) -> Layer:
    spin = prev_layer.spin
    s2 = spin.twice
    h = prev_layer.h + 1
    layer = Layer(h=h, spin=spin)
    multiplets: Dict[Tuple[int, int], Multiplet] = {}
    for j2 in _kept_j2s(h, s2, n, prune):
        sources = []
        for jp2 in _parent_j2s(j2, s2):
            for ip in range(1, prev_layer.count(HalfInt(jp2)) + 1):
                if (jp2, ip) not in multiplets:
                    multiplets[(jp2, ip)] = prev_layer.multiplet(HalfInt(jp2), ip)
                sources.append(multiplets[(jp2, ip)])
        for m2 in range(-j2, j2 + 1, 2):
            layer.cells[(j2, m2)] = [
                couple(source, spin, HalfInt(j2), HalfInt(m2), i=index)
                for index, source in enumerate(sources, start=1)
            ]
    return layer


def build_layers(n: int, spin: HalfIntLike, prune_for_singlets: bool = False,
                 budget: Optional[int] = None) -> List[Layer]:
    """
    h = 1..n の全層を構成する

    Args:
        n (int): 最大粒子数
        spin (HalfIntLike): 各粒子のスピン
        prune_for_singlets (bool): True の場合、N=n で一重項に到達できない
            セル (j > (n-h)·s) を構成しない
        budget (int): 振幅数の上限 (省略時は既定値)

    Returns:
        List[Layer]: layers[h-1] が h 粒子の層

    Raises:
        ValueError: n < 1 またはスピンが不正な場合
        CapacityError: 見積もり振幅数が上限を超える場合 (構成開始前に判定)
    """
    spin = _validate_spin(spin)
    if n < 1:
        raise ValueError(f"粒子数は 1 以上である必要があります: n={n}")
    _check_capacity(n, spin, prune_for_singlets, budget)

    layers = [_first_layer(spin)]
    for _ in range(2, n + 1):
        layers.append(_next_layer(layers[-1], n, prune_for_singlets))
        logger.debug("層 h=%d を構成しました (状態数 %d)",
                     layers[-1].h, sum(len(c) for c in layers[-1].cells.values()))
    return layers


def singlet_basis(n: int, spin: HalfIntLike, budget: Optional[int] = None) -> SingletBasis:
    """
    N 粒子の一重項基底 |N, 0, 0, i⟩ (i = 1..g(0, N)) を列挙順で返す

    n·s が整数でない場合 (一重項が存在しない) は空の基底を返す。
    """
    spin = _validate_spin(spin)
    if n < 1:
        raise ValueError(f"粒子数は 1 以上である必要があります: n={n}")
    if (n * spin.twice) % 2:
        return SingletBasis(n=n, spin=spin, states=[])
    layers = build_layers(n, spin, prune_for_singlets=True, budget=budget)
    states = list(layers[-1].cell(0, 0))
    logger.debug("一重項基底 N=%d, s=%s: %d 状態", n, spin, len(states))
    return SingletBasis(n=n, spin=spin, states=states)


# ---------------------------------------------------------------------------
# 経路と列挙番号
# ---------------------------------------------------------------------------

def state_path(state: CoupledState) -> List[HalfInt]:
    """状態の構成経路 (h=1..h の中間 j)"""
    return [HalfInt(j2) for j2 in state.path]


def path_index(path: Sequence[HalfIntLike], spin: HalfIntLike) -> int:
    """
    経路 (j_1, ..., j_h) で構成される状態の、セル (h, j_h) 内での列挙番号

    Raises:
        ValueError: 経路が格子経路として不正な場合
    """
    spin = _validate_spin(spin)
    s2 = spin.twice
    j2s = [HalfInt.of(j).twice for j in path]
    if not j2s or j2s[0] != s2:
        raise ValueError(f"経路は j=s から始まる必要があります: {[str(HalfInt(x)) for x in j2s]}")
    index = 1
    for h in range(2, len(j2s) + 1):
        j2, jp2 = j2s[h - 1], j2s[h - 2]
        parents = _parent_j2s(j2, s2)
        if jp2 not in parents:
            raise ValueError(f"h={h} で j'={HalfInt(jp2)} → j={HalfInt(j2)} の結合はできません")
        table = _count_table(s2, h - 1)[h - 2]
        offset = sum(table.get(p, 0) for p in parents[:parents.index(jp2)])
        index = offset + index
    return index


# ---------------------------------------------------------------------------
# ジグザグ積
# ---------------------------------------------------------------------------

def _block_singlet(size: int, spin: HalfInt) -> CoupledState:
    if count_states(0, size, spin) != 1:
        raise ValueError(
            f"スピン {spin} のブロックサイズ {size} は一意な一重項を持ちません"
        )
    return singlet_basis(size, spin).states[0]


def zigzag_state(blocks: Sequence[Union[int, CoupledState]], spin: HalfIntLike) -> CoupledState:
    """
    一重項ブロックのテンソル積 (ジグザグ状態)

    Args:
        blocks: ブロックサイズ (一意な一重項を持つサイズ: スピン 1/2 は 2、スピン 1 は 2 と 3)
            または一重項 CoupledState の並び
        spin (HalfIntLike): 各粒子のスピン

    Returns:
        CoupledState: 積状態。列挙番号は同じ経路で構成される基底状態の番号

    Raises:
        ValueError: ブロックが空、サイズ不正、一重項でないブロックの場合
    """
    spin = _validate_spin(spin)
    if not blocks:
        raise ValueError("ブロックが空です")
    factors: List[CoupledState] = []
    for block in blocks:
        if isinstance(block, CoupledState):
            if block.j.twice != 0 or block.m.twice != 0 or block.spin != spin:
                raise ValueError(f"一重項ブロックではありません: {block.label}")
            factors.append(block)
        else:
            factors.append(_block_singlet(int(block), spin))

    amps: AmplitudeMap = {(): ONE}
    for factor in factors:
        amps = {w1 + w2: a1 * a2 for w1, a1 in amps.items() for w2, a2 in factor.amps.items()}

    # 各ブロックの経路が分かる場合、積状態は連結した経路の基底状態と一致する
    path: Tuple[int, ...] = ()
    if all(f.path for f in factors):
        path = tuple(j2 for f in factors for j2 in f.path)
    index = path_index([HalfInt(j2) for j2 in path], spin) if path else 0
    return CoupledState(spin=spin, h=sum(f.h for f in factors), j=HalfInt(0), m=HalfInt(0),
                        i=index, amps=amps, path=path)


# ---------------------------------------------------------------------------
# 厳密な線形代数
# ---------------------------------------------------------------------------

def _amps_of(x: Union[CoupledState, Mapping[BasisWord, RadicalSum]]) -> Mapping[BasisWord, RadicalSum]:
    return x.amps if isinstance(x, CoupledState) else x


def inner_product(a, b) -> RadicalSum:
    """実振幅どうしの厳密な内積 ⟨a|b⟩"""
    amps_a, amps_b = _amps_of(a), _amps_of(b)
    if len(amps_a) > len(amps_b):
        amps_a, amps_b = amps_b, amps_a
    total = ZERO
    for word, value in amps_a.items():
        other = amps_b.get(word)
        if other is not None:
            total = total + value * other
    return total


def gram_matrix(states: Sequence) -> List[List[RadicalSum]]:
    """厳密なグラム行列 G[a][b] = ⟨a|b⟩"""
    n = len(states)
    gram = [[ZERO] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            value = inner_product(states[a], states[b])
            gram[a][b] = value
            gram[b][a] = value
    return gram


def is_orthonormal(states: Sequence) -> bool:
    """グラム行列が厳密に単位行列か"""
    gram = gram_matrix(states)
    return all(
        gram[a][b] == (ONE if a == b else ZERO)
        for a in range(len(states)) for b in range(len(states))
    )


def project_onto_span(vector, basis: Sequence) -> Tuple[List[RadicalSum], AmplitudeMap]:
    """
    正規直交基底の張る空間への厳密な射影

    Returns:
        Tuple[List[RadicalSum], AmplitudeMap]: (展開係数, 残差)。残差が空なら vector は張る空間に含まれる
    """
    coefficients = [inner_product(b, vector) for b in basis]
    residual: AmplitudeMap = dict(_amps_of(vector))
    for coeff, b in zip(coefficients, basis):
        if coeff.is_zero():
            continue
        for word, value in _amps_of(b).items():
            updated = residual.get(word, ZERO) - coeff * value
            if updated.is_zero():
                residual.pop(word, None)
            else:
                residual[word] = updated
    return coefficients, residual


@lru_cache(maxsize=None)
def _ladder_coefficient(s2: int, mu2: int, raising: bool) -> RadicalSum:
    # J± |s, μ⟩ = √(s(s+1) - μ(μ±1)) |s, μ±1⟩  (2倍値: (s2(s2+2) - μ2(μ2±2))/4)
    step = 2 if raising else -2
    return rad_sqrt_rational(Fraction(s2 * (s2 + 2) - mu2 * (mu2 + step), 4))


def _apply_total_ladder(state: CoupledState, raising: bool) -> AmplitudeMap:
    s2 = state.spin.twice
    step = 2 if raising else -2
    result: AmplitudeMap = {}
    for word, value in state.amps.items():
        for k, mu2 in enumerate(word):
            new_mu2 = mu2 + step
            if abs(new_mu2) > s2:
                continue
            new_word = word[:k] + (new_mu2,) + word[k + 1:]
            updated = result.get(new_word, ZERO) + value * _ladder_coefficient(s2, mu2, raising)
            if updated.is_zero():
                result.pop(new_word, None)
            else:
                result[new_word] = updated
    return result


def apply_total_raising(state: CoupledState) -> AmplitudeMap:
    """J+ = Σ_k J+^(k) を作用させた非正規化ベクトル (0 の項は持たない)"""
    return _apply_total_ladder(state, raising=True)


def apply_total_lowering(state: CoupledState) -> AmplitudeMap:
    """J- = Σ_k J-^(k) を作用させた非正規化ベクトル (0 の項は持たない)"""
    return _apply_total_ladder(state, raising=False)


def to_dense_vector(state: CoupledState) -> np.ndarray:
    """
    クロネッカー積順の浮動小数点ベクトル (長さ (2s+1)^h)

    各粒子の成分は m = +s を先頭 (スピン 1/2 の + が ê1) とする。
    """
    s2 = state.spin.twice
    dim = s2 + 1
    vector = np.zeros(dim ** state.h)
    for word, value in state.amps.items():
        position = 0
        for mu2 in word:
            position = position * dim + (s2 - mu2) // 2
        vector[position] = rad_to_float(value)
    return vector
