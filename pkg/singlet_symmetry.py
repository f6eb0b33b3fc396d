#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
対称性解析モジュール

結合状態の磁気量子数反転に対するパリティと、粒子の置換 (対称群 S_N) の
作用を厳密に調べる。

主な機能:
- 全粒子の m 反転 flip_magnetic とパリティ判定 parity_of
- 格子経路に沿ったパリティの予測 predicted_parity
- 隣接互換 P_(k,k+1) の作用と、一重項空間が置換で閉じることの確認
- 作用行列・Coxeter 関係式・可換子環の次元 (既約性の数値確認)
- ヤング図形の次元 (行列式公式とフック長公式)
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from clebsch_gordan import HalfInt, HalfIntLike
from exactnum import ONE, ZERO, RadicalSum, rad_to_float
from singlet_builder import (
    CoupledState,
    Layer,
    SingletBasis,
    _count_table,
    _parent_j2s,
    _validate_spin,
    project_onto_span,
)

logger = logging.getLogger(__name__)

ExactMatrix = List[List[RadicalSum]]


class Parity(Enum):
    """m 反転に対するパリティ"""
    EVEN = 'even'
    ODD = 'odd'
    NOT_EIGENSTATE = 'not-eigenstate'


def flip_magnetic(state: CoupledState) -> CoupledState:
    """全粒子の m を反転した状態 (m → -m)。番号と経路は引き継ぐ"""
    amps = {tuple(-mu2 for mu2 in word): value for word, value in state.amps.items()}
    return CoupledState(spin=state.spin, h=state.h, j=state.j, m=-state.m, i=state.i,
                        amps=amps, path=state.path)


def parity_of(state: CoupledState, partner: Optional[CoupledState] = None) -> Parity:
    """
    flip(state) を partner (省略時は state 自身) と比較したパリティ

    m ≠ 0 の状態では partner に同じ番号の -m の状態を渡す。

    Returns:
        Parity: flip = +partner なら EVEN、-partner なら ODD、それ以外は NOT_EIGENSTATE
    """
    partner = state if partner is None else partner
    flipped = flip_magnetic(state).amps
    if flipped == partner.amps:
        return Parity.EVEN
    if flipped.keys() == partner.amps.keys() and all(
        flipped[w] == -partner.amps[w] for w in flipped
    ):
        return Parity.ODD
    return Parity.NOT_EIGENSTATE


def predicted_parity(n: int, j: HalfIntLike, spin: HalfIntLike) -> Parity:
    """
    格子経路から予測されるセル (n, j) のパリティ

    h=1 の状態は EVEN。各段 j' → j で符号 (-1)^(j'+s-j) が掛かる
    (CG 係数の符号反転則)。すべての経路の積を動的計画法で求める。

    Raises:
        ValueError: セルが存在しない場合、または経路によって予測が異なる場合
    """
    spin = _validate_spin(spin)
    j2_target = HalfInt.of(j).twice
    s2 = spin.twice
    if n < 1:
        raise ValueError(f"粒子数は 1 以上である必要があります: n={n}")
    table = _count_table(s2, n)
    if j2_target not in table[n - 1]:
        raise ValueError(f"セル (N={n}, j={HalfInt(j2_target)}) は存在しません")

    # j (2倍値) → 到達しうる符号の集合
    reachable: Dict[int, set] = {s2: {1}}
    for h in range(2, n + 1):
        nxt: Dict[int, set] = {}
        for j2 in table[h - 1]:
            signs = set()
            for jp2 in _parent_j2s(j2, s2):
                exponent = (jp2 + s2 - j2) // 2
                step = -1 if exponent % 2 else 1
                signs.update(sign * step for sign in reachable.get(jp2, ()))
            if signs:
                nxt[j2] = signs
        reachable = nxt
    signs = reachable[j2_target]
    if len(signs) != 1:
        raise ValueError(f"セル (N={n}, j={HalfInt(j2_target)}) のパリティは経路に依存します")
    return Parity.EVEN if signs == {1} else Parity.ODD


def observed_cell_parity(layer: Layer, j: HalfIntLike) -> Parity:
    """
    層の (j, m) と (j, -m) の同じ番号の状態を比べた、セル全体のパリティ

    すべての m と番号で一致しない場合は NOT_EIGENSTATE。
    """
    j2 = HalfInt.of(j).twice
    seen = set()
    for m2 in range(-j2, j2 + 1, 2):
        for state, partner in zip(layer.cell(HalfInt(j2), HalfInt(m2)),
                                  layer.cell(HalfInt(j2), HalfInt(-m2))):
            seen.add(parity_of(state, partner))
    if len(seen) == 1:
        return seen.pop()
    return Parity.NOT_EIGENSTATE


def cell_parity_table(layers: Sequence[Layer]) -> pd.DataFrame:
    """
    全セルの観測パリティと予測パリティの表

    Returns:
        pd.DataFrame: 列 h, j, observed, predicted, agrees
    """
    rows = []
    for layer in layers:
        for j in layer.j_values():
            observed = observed_cell_parity(layer, j)
            predicted = predicted_parity(layer.h, j, layer.spin)
            rows.append({
                'h': layer.h,
                'j': str(j),
                'observed': observed.value,
                'predicted': predicted.value,
                'agrees': observed == predicted,
            })
    return pd.DataFrame(rows, columns=['h', 'j', 'observed', 'predicted', 'agrees'])


# ---------------------------------------------------------------------------
# 置換
# ---------------------------------------------------------------------------

def adjacent_transposition(state: CoupledState, k: int) -> CoupledState:
    """
    粒子 k と k+1 (1 始まり) を入れ替えた状態

    Raises:
        ValueError: 1 <= k < h でない場合
    """
    if not 1 <= k < state.h:
        raise ValueError(f"互換の位置 k は 1 <= k < {state.h} である必要があります: k={k}")
    amps = {}
    for word, value in state.amps.items():
        swapped = list(word)
        swapped[k - 1], swapped[k] = swapped[k], swapped[k - 1]
        amps[tuple(swapped)] = value
    return CoupledState(spin=state.spin, h=state.h, j=state.j, m=state.m, i=state.i,
                        amps=amps, path=())


def singlet_space_closure_check(basis: SingletBasis) -> bool:
    """すべての隣接互換の像が一重項空間に含まれるか (厳密)"""
    for state in basis:
        for k in range(1, basis.n):
            _, residual = project_onto_span(adjacent_transposition(state, k), basis.states)
            if residual:
                logger.debug("互換 (%d,%d) の像が空間外です: %s", k, k + 1, state.label)
                return False
    return True


def transposition_matrices(basis: SingletBasis) -> List[ExactMatrix]:
    """
    隣接互換 s_k (k = 1..N-1) の作用行列 M[a][b] = ⟨b_a | P_k | b_b⟩

    Raises:
        ValueError: 像が一重項空間から外れる場合
    """
    matrices = []
    for k in range(1, basis.n):
        columns = []
        for state in basis:
            coefficients, residual = project_onto_span(adjacent_transposition(state, k),
                                                       basis.states)
            if residual:
                raise ValueError(f"互換 ({k},{k + 1}) の像が一重項空間に含まれません")
            columns.append(coefficients)
        size = len(basis)
        matrices.append([[columns[b][a] for b in range(size)] for a in range(size)])
    return matrices


def _exact_matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    size = len(a)
    result = []
    for r in range(size):
        row = []
        for c in range(size):
            total = ZERO
            for k in range(size):
                if a[r][k] and b[k][c]:
                    total = total + a[r][k] * b[k][c]
            row.append(total)
        result.append(row)
    return result


def _is_identity(matrix: ExactMatrix) -> bool:
    return all(
        value == (ONE if r == c else ZERO)
        for r, row in enumerate(matrix) for c, value in enumerate(row)
    )


def check_coxeter_relations(matrices: Sequence[ExactMatrix]) -> bool:
    """
    s_k^2 = 1、(s_k s_(k+1))^3 = 1、|k-l| >= 2 で s_k s_l = s_l s_k を厳密に確認
    """
    for k, s_k in enumerate(matrices):
        if not _is_identity(_exact_matmul(s_k, s_k)):
            return False
        if k + 1 < len(matrices):
            pair = _exact_matmul(s_k, matrices[k + 1])
            if not _is_identity(_exact_matmul(pair, _exact_matmul(pair, pair))):
                return False
        for s_l in matrices[k + 2:]:
            if _exact_matmul(s_k, s_l) != _exact_matmul(s_l, s_k):
                return False
    return True


def commutant_dimension(matrices: Sequence[ExactMatrix], tol: float = 1e-9) -> int:
    """
    すべての作用行列と可換な行列の空間の次元 (数値計算)

    X M_k - M_k X = 0 を X について解き、零空間の次元を SVD で求める。
    シューアの補題により、次元 1 なら表現は既約。
    """
    if not matrices:
        return 1
    size = len(matrices[0])
    identity = np.eye(size)
    blocks = []
    for matrix in matrices:
        dense = np.array([[rad_to_float(v) for v in row] for row in matrix])
        # vec(X M - M X) = (M^T ⊗ I - I ⊗ M) vec(X)  (列優先)
        blocks.append(np.kron(dense.T, identity) - np.kron(identity, dense))
    system = np.vstack(blocks)
    singular_values = np.linalg.svd(system, compute_uv=False)
    rank = int(np.sum(singular_values > tol))
    return size * size - rank


# ---------------------------------------------------------------------------
# ヤング図形
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    """
    非増加の正整数列

    Attributes:
        parts (Tuple[int, ...]): λ1 >= λ2 >= ... >= 1
    """
    parts: Tuple[int, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("分割が空です")
        if any(p < 1 for p in self.parts):
            raise ValueError(f"分割の成分は正整数である必要があります: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"分割は非増加である必要があります: {self.parts}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> 'Partition':
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(self.parts[0])))


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(tuple(p))


def young_dimension(partition) -> int:
    """
    既約表現の次元 n! Π_(i<j) (λi - λj + j - i) / Π_i (λi + k - i)!

    Args:
        partition: Partition または非増加の整数列 (長さ k)
    """
    parts = _as_partition(partition).parts
    k = len(parts)
    numerator = math.factorial(sum(parts))
    for a in range(k):
        for b in range(a + 1, k):
            numerator *= parts[a] - parts[b] + b - a
    denominator = 1
    for a, lam in enumerate(parts, start=1):
        denominator *= math.factorial(lam + k - a)
    if numerator % denominator:
        raise ArithmeticError(f"次元が整数になりません: {parts}")
    return numerator // denominator


def hook_length_dimension(partition) -> int:
    """フック長公式による次元 n! / Π hook(c)"""
    p = _as_partition(partition)
    conjugate = p.conjugate().parts
    hooks = 1
    for row, lam in enumerate(p.parts):
        for col in range(lam):
            hooks *= (lam - col - 1) + (conjugate[col] - row - 1) + 1
    return math.factorial(p.size) // hooks


def partitions_of(n: int) -> Iterator[Partition]:
    """n の分割を辞書式の降順で列挙"""
    if n < 1:
        raise ValueError(f"n は 1 以上である必要があります: {n}")

    def _generate(remaining: int, largest: int) -> Iterator[Tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, largest), 0, -1):
            for rest in _generate(remaining - first, first):
                yield (first,) + rest

    for parts in _generate(n, n):
        yield Partition(parts)


def singlet_partition(n: int, spin: HalfIntLike = "1/2") -> Partition:
    """
    スピン 1/2 の N 粒子一重項空間が担う既約表現 (N/2, N/2)

    Raises:
        ValueError: スピン 1/2 以外、または N が奇数の場合
    """
    spin = HalfInt.of(spin)
    if spin.twice != 1:
        raise ValueError("一重項の分割はスピン 1/2 でのみ定まります")
    if n < 2 or n % 2:
        raise ValueError(f"N は 2 以上の偶数である必要があります: {n}")
    return Partition((n // 2, n // 2))
