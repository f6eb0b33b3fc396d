#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
相関計算モジュール (スピン 1/2 × 4粒子)

一重項状態の密度演算子から、任意方向の射影測定の同時確率・偶奇パリティの
期待値・選択付き期待値を浮動小数点 (numpy) で計算する。
閉形式の期待値関数は独立した評価器として実装し、トレース計算と突き合わせる。

主な機能:
- クロネッカー積、4粒子一重項ベクトル、一般一重項 sin τ Ψ1 + cos τ Ψ2
- 方向付きパウリ行列・射影演算子・同時確率・パリティ期待値
- 閉形式の期待値関数 (2粒子・4粒子) と選択付き期待値の閉形式
- 選択付き期待値の4つの候補定義の計算
- 回転不変性の確認、凝縮観測量、角度スキャン (pandas.DataFrame / CSV)

ベクトルの成分順はクロネッカー積順で、|+⟩ = ê1 = (1, 0)、|-⟩ = ê2 = (0, 1)。
"""

import itertools
import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from singlet_constants import (
    CLOSED_FORM_ARITY,
    CORRELATION_TOLERANCE,
    FLOAT_TOLERANCE,
    SCAN_COLUMNS,
    get_scan_curve,
    get_selection_fixed_particles,
)

logger = logging.getLogger(__name__)

E1 = np.array([1.0, 0.0], dtype=complex)
E2 = np.array([0.0, 1.0], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)
SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Direction:
    """
    測定方向

    Attributes:
        theta (float): 極角 (x-z 面内) [rad]
        phi (float): 方位角 [rad]
    """
    theta: float
    phi: float = 0.0


DirectionLike = Union[Direction, float, Tuple[float, float]]
DirectionSet = Tuple[Direction, ...]


def as_directions(dirs: Iterable[DirectionLike]) -> DirectionSet:
    """Direction / θ のみの数値 / (θ, φ) の並びを DirectionSet に揃える"""
    result = []
    for d in dirs:
        if isinstance(d, Direction):
            result.append(d)
        elif isinstance(d, (tuple, list)):
            result.append(Direction(float(d[0]), float(d[1])))
        else:
            result.append(Direction(float(d)))
    return tuple(result)


def directions_from_angles(thetas: Sequence[float], phis: Optional[Sequence[float]] = None) -> DirectionSet:
    """θ の並び (と φ の並び) から DirectionSet を作る"""
    phis = [0.0] * len(thetas) if phis is None else phis
    if len(phis) != len(thetas):
        raise ValueError(f"θ と φ の個数が一致しません: {len(thetas)} != {len(phis)}")
    return tuple(Direction(float(t), float(p)) for t, p in zip(thetas, phis))


# ---------------------------------------------------------------------------
# 状態ベクトルと演算子
# ---------------------------------------------------------------------------

def kron(a: np.ndarray, b: np.ndarray, *more: np.ndarray) -> np.ndarray:
    """クロネッカー積 a ⊗ b (⊗ ...)"""
    return reduce(np.kron, (a, b) + more)


def two_particle_singlet() -> np.ndarray:
    """2粒子一重項 (|+-⟩ - |-+⟩)/√2"""
    return (kron(E1, E2) - kron(E2, E1)) / math.sqrt(2.0)


def singlet_vector(index: int) -> np.ndarray:
    """
    4粒子一重項ベクトル

    Args:
        index (int): 1 → 非ジグザグ状態、2 → 2粒子一重項の積

    Raises:
        ValueError: index が 1, 2 以外の場合
    """
    if index == 2:
        bell = two_particle_singlet()
        return kron(bell, bell)
    if index == 1:
        triplet0 = (kron(E1, E2) + kron(E2, E1)) / math.sqrt(2.0)
        up_up, down_down = kron(E1, E1), kron(E2, E2)
        return (kron(up_up, down_down) + kron(down_down, up_up) - kron(triplet0, triplet0)) / SQRT3
    raise ValueError(f"一重項の番号は 1 または 2 です: {index}")


def general_singlet(tau: float) -> np.ndarray:
    """一般の4粒子一重項 sin τ Ψ1 + cos τ Ψ2"""
    return math.sin(tau) * singlet_vector(1) + math.cos(tau) * singlet_vector(2)


def density_operator(vector: np.ndarray) -> np.ndarray:
    """純粋状態の密度演算子 ρ = |v⟩⟨v|"""
    vector = np.asarray(vector, dtype=complex)
    return np.outer(vector, vector.conj())


def check_density_operator(rho: np.ndarray, pure: bool = True, tol: float = FLOAT_TOLERANCE) -> bool:
    """エルミート性・トレース 1・(純粋状態なら) 冪等性を確認"""
    if not np.allclose(rho, rho.conj().T, atol=tol, rtol=0):
        return False
    if abs(np.trace(rho) - 1.0) > tol:
        return False
    if pure and not np.allclose(rho @ rho, rho, atol=max(tol, 1e-10), rtol=0):
        return False
    return True


def pauli_direction(d: DirectionLike) -> np.ndarray:
    """方向 (θ, φ) のスピン演算子 σ(θ, φ)"""
    d = as_directions([d])[0]
    c, s = math.cos(d.theta), math.sin(d.theta)
    return np.array([
        [c, np.exp(-1j * d.phi) * s],
        [np.exp(1j * d.phi) * s, -c],
    ], dtype=complex)


def projector(signs: Sequence[int], dirs: Iterable[DirectionLike]) -> np.ndarray:
    """
    射影演算子 F = ⊗_i ½[I ± σ(θi, φi)]

    Raises:
        ValueError: 符号と方向の個数が一致しない、または符号が ±1 でない場合
    """
    dirs = as_directions(dirs)
    if len(signs) != len(dirs):
        raise ValueError(f"符号と方向の個数が一致しません: {len(signs)} != {len(dirs)}")
    factors = []
    for sign, d in zip(signs, dirs):
        if sign not in (1, -1):
            raise ValueError(f"符号は +1 または -1 です: {sign}")
        factors.append(0.5 * (IDENTITY2 + sign * pauli_direction(d)))
    return reduce(np.kron, factors)


def all_sign_patterns(n: int) -> List[Tuple[int, ...]]:
    """±1 の全パターン (先頭の粒子から +1 優先の順)"""
    return list(itertools.product((1, -1), repeat=n))


def _n_particles(rho: np.ndarray) -> int:
    n = int(round(math.log2(rho.shape[0])))
    if 2 ** n != rho.shape[0]:
        raise ValueError(f"次元 {rho.shape[0]} はスピン 1/2 粒子の系ではありません")
    return n


def joint_probability(rho: np.ndarray, signs: Sequence[int], dirs: Iterable[DirectionLike]) -> float:
    """同時確率 P = Tr[ρ F±±±±]"""
    value = np.trace(rho @ projector(signs, dirs))
    if abs(value.imag) > FLOAT_TOLERANCE:
        logger.warning("同時確率の虚部が大きすぎます: %.3e", value.imag)
    return float(value.real)


def parity_expectation(rho: np.ndarray, dirs: Iterable[DirectionLike]) -> float:
    """パリティ期待値 E = Tr[ρ (σ ⊗ σ ⊗ ...)] = P_even - P_odd"""
    dirs = as_directions(dirs)
    operator = reduce(np.kron, [pauli_direction(d) for d in dirs])
    return float(np.trace(rho @ operator).real)


def parity_expectation_from_probabilities(rho: np.ndarray, dirs: Iterable[DirectionLike]) -> float:
    """E = Σ_signs (s1 s2 ... ) P(signs)"""
    dirs = as_directions(dirs)
    return math.fsum(
        math.prod(signs) * joint_probability(rho, signs, dirs)
        for signs in all_sign_patterns(len(dirs))
    )


def parity_probabilities(expectation: float) -> Tuple[float, float]:
    """(P_even, P_odd) = (½[1+E], ½[1-E])"""
    return 0.5 * (1.0 + expectation), 0.5 * (1.0 - expectation)


def condensed_expectation(rho: np.ndarray, dirs: Iterable[DirectionLike],
                          partition: Sequence[Sequence[int]]) -> float:
    """
    粒子をブロックに分けて各ブロック内の符号を掛けた凝縮観測量の積の期待値

    Args:
        partition: 粒子番号 (1 始まり) の集合分割 例: [[1, 2], [3, 4]]

    Raises:
        ValueError: partition が粒子全体の分割になっていない場合
    """
    dirs = as_directions(dirs)
    n = len(dirs)
    members = sorted(i for block in partition for i in block)
    if members != list(range(1, n + 1)) or any(not block for block in partition):
        raise ValueError(f"粒子 1..{n} の集合分割ではありません: {partition}")
    total = 0.0
    for signs in all_sign_patterns(n):
        value = 1
        for block in partition:
            value *= math.prod(signs[i - 1] for i in block)
        total += value * joint_probability(rho, signs, dirs)
    return total


# ---------------------------------------------------------------------------
# 回転
# ---------------------------------------------------------------------------

def rotation_unitary(theta: float, phi: float) -> np.ndarray:
    """
    1粒子基底の変換 |+⟩ = e^(iφ/2)(cos θ/2 |+'⟩ - sin θ/2 |-'⟩)、
    |-⟩ = e^(-iφ/2)(sin θ/2 |+'⟩ + cos θ/2 |-'⟩) の行列 (行列式 1)
    """
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    plus, minus = np.exp(0.5j * phi), np.exp(-0.5j * phi)
    return np.array([[plus * c, minus * s], [-plus * s, minus * c]], dtype=complex)


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """SU(2) からハール測度で1つ抽出"""
    a, b, c, d = rng.normal(size=4)
    norm = math.sqrt(a * a + b * b + c * c + d * d)
    a, b, c, d = a / norm, b / norm, c / norm, d / norm
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]], dtype=complex)


def rotation_invariance_check(vector: np.ndarray, u: np.ndarray) -> float:
    """‖(u ⊗ u ⊗ ...) v - v‖ (一重項なら 0)"""
    vector = np.asarray(vector, dtype=complex)
    n = int(round(math.log2(vector.shape[0])))
    rotated = reduce(np.kron, [u] * n) @ vector
    return float(np.linalg.norm(rotated - vector))


# ---------------------------------------------------------------------------
# 閉形式の期待値関数
# ---------------------------------------------------------------------------

def _trig(dirs: DirectionSet):
    c = [math.cos(d.theta) for d in dirs]
    s = [math.sin(d.theta) for d in dirs]
    p = [d.phi for d in dirs]
    return c, s, p


def _twopartite_full(dirs, tau):
    c, s, p = _trig(dirs)
    return -(c[0] * c[1] + math.cos(p[0] - p[1]) * s[0] * s[1])


def _twopartite_theta(dirs, tau):
    return -math.cos(dirs[0].theta - dirs[1].theta)


def _twopartite_equatorial(dirs, tau):
    return -math.cos(dirs[0].phi - dirs[1].phi)


def _psi241_full(dirs, tau):
    (c1, c2, c3, c4), (s1, s2, s3, s4), (p1, p2, p3, p4) = _trig(dirs)
    cos = math.cos
    return (1 / 3) * (
        c3 * s1 * (-c4 * cos(p1 - p2) * s2 + 2 * c2 * cos(p1 - p4) * s4)
        + s1 * s3 * (2 * c2 * c4 * cos(p1 - p3)
                     + (2 * cos(p1 + p2 - p3 - p4) + cos(p1 - p2) * cos(p3 - p4)) * s2 * s4)
        + c1 * (2 * s2 * (c4 * cos(p2 - p3) * s3 + c3 * cos(p2 - p4) * s4)
                + c2 * (3 * c3 * c4 - cos(p3 - p4) * s3 * s4))
    )


def _psi241_equatorial(dirs, tau):
    p1, p2, p3, p4 = (d.phi for d in dirs)
    return (1 / 3) * (2 * math.cos(p1 + p2 - p3 - p4) + math.cos(p1 - p2) * math.cos(p3 - p4))


def _psi241_theta(dirs, tau):
    t1, t2, t3, t4 = (d.theta for d in dirs)
    return (1 / 3) * (2 * math.cos(t1 + t2 - t3 - t4) + math.cos(t1 - t2) * math.cos(t3 - t4))


def _psi242_theta(dirs, tau):
    t1, t2, t3, t4 = (d.theta for d in dirs)
    return math.cos(t1 - t2) * math.cos(t3 - t4)


def _psi242_full(dirs, tau):
    (c1, c2, c3, c4), (s1, s2, s3, s4), (p1, p2, p3, p4) = _trig(dirs)
    return ((c1 * c2 + math.cos(p1 - p2) * s1 * s2)
            * (c3 * c4 + math.cos(p3 - p4) * s3 * s4))


def _tau_theta(dirs, tau):
    t1, t2, t3, t4 = (d.theta for d in dirs)
    st, ct = math.sin(tau), math.cos(tau)
    return (1 / 3) * (
        (2 + math.cos(2 * tau)) * math.cos(t1 - t2) * math.cos(t3 - t4)
        + 2 * st * (st * math.cos(t1 + t2 - t3 - t4)
                    + SQRT3 * ct * math.sin(t1 - t2) * math.sin(t3 - t4))
    )


def _tau_full(dirs, tau):
    (c1, c2, c3, c4), (s1, s2, s3, s4), (p1, p2, p3, p4) = _trig(dirs)
    cos, sin = math.cos, math.sin
    st, ct = sin(tau), cos(tau)
    return (1 / 3) * (
        c1 * (c2 * (3 * c3 * c4 + (2 * cos(2 * tau) + 1) * cos(p3 - p4) * s3 * s4)
              + 2 * s2 * st * (c3 * cos(p2 - p4) * s4 * (SQRT3 * ct + st)
                               - c4 * cos(p2 - p3) * s3 * (SQRT3 * ct - st)))
        + s1 * (c3 * (c4 * (2 * cos(2 * tau) + 1) * cos(p1 - p2) * s2
                      + 2 * c2 * cos(p1 - p4) * s4 * st * (st - SQRT3 * ct))
                + s3 * (2 * c2 * c4 * cos(p1 - p3) * st * (SQRT3 * ct + st)
                        + s2 * s4 * (2 * cos(p1 + p2 - p3 - p4) * st ** 2
                                     + (cos(2 * tau) + 2) * cos(p1 - p2) * cos(p3 - p4)
                                     + SQRT3 * sin(2 * tau) * sin(p1 - p2) * sin(p3 - p4))))
    )


_CLOSED_FORMS = {
    'Psi241_full': _psi241_full,
    'Psi241_theta': _psi241_theta,
    'Psi241_equatorial': _psi241_equatorial,
    'Psi242_full': _psi242_full,
    'Psi242_theta': _psi242_theta,
    'tau_theta': _tau_theta,
    'tau_full': _tau_full,
    'twopartite_full': _twopartite_full,
    'twopartite_theta': _twopartite_theta,
    'twopartite_equatorial': _twopartite_equatorial,
}


def _require_theta_only(which: str, dirs: DirectionSet) -> None:
    if any(abs(d.phi) > FLOAT_TOLERANCE for d in dirs):
        raise ValueError(f"{which} は φ = 0 の場合のみ使用できます")


def _require_equatorial(which: str, dirs: DirectionSet) -> None:
    if any(abs(d.theta - math.pi / 2) > FLOAT_TOLERANCE for d in dirs):
        raise ValueError(f"{which} は θ = π/2 の場合のみ使用できます")


def closed_form_E(which: str, dirs: Iterable[DirectionLike], tau: Optional[float] = None) -> float:
    """
    閉形式の期待値関数を評価

    Args:
        which (str): 'Psi241_full', 'Psi241_theta', 'Psi241_equatorial', 'Psi242_full',
            'Psi242_theta', 'tau_theta', 'tau_full', 'twopartite_full', 'twopartite_theta',
            'twopartite_equatorial'
        dirs: 測定方向 (2粒子形は2つ、4粒子形は4つ)
        tau (float): 一般一重項のパラメータ (tau_* のみ必須)

    Returns:
        float: 期待値

    Raises:
        ValueError: 未知の式、方向の個数、または式の制約 (φ=0、θ=π/2、τ の有無) に反する場合
    """
    if which not in _CLOSED_FORMS:
        raise ValueError(f"未知の閉形式です: {which} (有効: {', '.join(_CLOSED_FORMS)})")
    dirs = as_directions(dirs)
    if len(dirs) != CLOSED_FORM_ARITY[which]:
        raise ValueError(f"{which} には {CLOSED_FORM_ARITY[which]} 方向が必要です: {len(dirs)}")
    if which.startswith('tau_'):
        if tau is None:
            raise ValueError(f"{which} には τ が必要です")
    elif tau is not None:
        raise ValueError(f"{which} は τ を受け取りません")
    if which.endswith('_theta'):
        _require_theta_only(which, dirs)
    elif which.endswith('_equatorial'):
        _require_equatorial(which, dirs)
    return _CLOSED_FORMS[which](dirs, tau)


def _trace_state_for(which: str, tau: float) -> np.ndarray:
    if which.startswith('Psi241'):
        return singlet_vector(1)
    if which.startswith('Psi242'):
        return singlet_vector(2)
    if which.startswith('tau'):
        return general_singlet(tau)
    return two_particle_singlet()


def closed_form_agreement(draws: int = 1000, seed: int = 20240601,
                          tol: float = CORRELATION_TOLERANCE) -> pd.DataFrame:
    """
    すべての閉形式を乱数で選んだ方向 (と τ) でトレース計算と比較

    θ ∈ [0, π]、φ ∈ [0, 2π)、τ ∈ [0, 2π) を一様に抽出する。
    _theta 形は φ = 0、_equatorial 形は θ = π/2 に制限して評価する。

    Returns:
        pd.DataFrame: 列 form, max_abs_deviation, agrees (CLOSED_FORM_ARITY の順)

    Raises:
        ValueError: draws < 1 の場合
    """
    if draws < 1:
        raise ValueError(f"draws は 1 以上である必要があります: {draws}")
    rng = np.random.default_rng(seed)
    deviations = {which: 0.0 for which in CLOSED_FORM_ARITY}
    for _ in range(draws):
        thetas = rng.uniform(0.0, math.pi, size=4)
        phis = rng.uniform(0.0, 2.0 * math.pi, size=4)
        tau = float(rng.uniform(0.0, 2.0 * math.pi))
        dirs_by_kind = {
            'full': directions_from_angles(thetas, phis),
            'theta': directions_from_angles(thetas),
            'equatorial': directions_from_angles([math.pi / 2] * 4, phis),
        }
        for which, arity in CLOSED_FORM_ARITY.items():
            dirs = dirs_by_kind[which.rsplit('_', 1)[1]][:arity]
            rho = density_operator(_trace_state_for(which, tau))
            printed = closed_form_E(which, dirs, tau if which.startswith('tau_') else None)
            deviation = abs(printed - parity_expectation(rho, dirs))
            deviations[which] = max(deviations[which], deviation)
    logger.debug("閉形式とトレースの比較: %d 回 (seed=%d)", draws, seed)
    return pd.DataFrame(
        [{'form': k, 'max_abs_deviation': v, 'agrees': v <= tol} for k, v in deviations.items()],
        columns=['form', 'max_abs_deviation', 'agrees'],
    )


# ---------------------------------------------------------------------------
# 選択付き期待値
# ---------------------------------------------------------------------------

def _selected_pm4(dirs, sel):
    return 1 / 12 + sel[4] * 0.5 * _psi241_full(dirs, None)


def _selected_pm3pm4_theta(dirs, sel):
    t1, t2, t3, t4 = (d.theta for d in dirs)
    p = sel[3] * sel[4]
    return (1 / 12) * (2 * p * math.cos(t1 + t2 - t3 - t4)
                       + math.cos(t1 - t2) * (1 + p * math.cos(t3 - t4)))


def _selected_pm3pm4_full(dirs, sel):
    (c1, c2, c3, c4), (s1, s2, s3, s4), (p1, p2, p3, p4) = _trig(dirs)
    cos = math.cos
    p = sel[3] * sel[4]
    return (1 / 12) * (
        c1 * (2 * p * s2 * (c4 * cos(p2 - p3) * s3 + c3 * cos(p2 - p4) * s4)
              + c2 * (1 + 3 * p * c3 * c4 - p * cos(p3 - p4) * s3 * s4))
        + s1 * (cos(p1 - p2) * s2 * (1 - p * c3 * c4 + p * cos(p3 - p4) * s3 * s4)
                + 2 * p * (c2 * c4 * cos(p1 - p3) * s3
                           + c2 * c3 * cos(p1 - p4) * s4
                           + cos(p1 + p2 - p3 - p4) * s2 * s3 * s4))
    )


def _selected_pm2pm4_theta(dirs, sel):
    t1, t2, t3, t4 = (d.theta for d in dirs)
    p = sel[2] * sel[4]
    return (1 / 12) * (p * (2 * math.cos(t1 + t2 - t3 - t4) + math.cos(t1 - t2) * math.cos(t3 - t4))
                       - 2 * math.cos(t1 - t3))


def _selected_pm2pm4_full(dirs, sel):
    (c1, c2, c3, c4), (s1, s2, s3, s4), (p1, p2, p3, p4) = _trig(dirs)
    cos = math.cos
    p = sel[2] * sel[4]
    return (1 / 12) * (
        c1 * (p * s3 * (2 * c4 * cos(p2 - p3) * s2 - c2 * cos(p3 - p4) * s4)
              + c3 * (-2 + 3 * p * c2 * c4 + 2 * p * cos(p2 - p4) * s2 * s4))
        + s1 * (p * c3 * (-c4 * cos(p1 - p2) * s2 + 2 * c2 * cos(p1 - p4) * s4)
                + s3 * (2 * (-1 + p * c2 * c4) * cos(p1 - p3)
                        + p * (2 * cos(p1 + p2 - p3 - p4) + cos(p1 - p2) * cos(p3 - p4)) * s2 * s4))
    )


_SELECTED_FORMS = {
    'pm4': _selected_pm4,
    'pm3pm4_theta': _selected_pm3pm4_theta,
    'pm3pm4_full': _selected_pm3pm4_full,
    'pm2pm4_theta': _selected_pm2pm4_theta,
    'pm2pm4_full': _selected_pm2pm4_full,
}


def _check_selection(fixed_particles: Sequence[int], signs: Mapping[int, int]) -> Dict[int, int]:
    if sorted(signs) != sorted(fixed_particles):
        raise ValueError(
            f"選択する粒子が一致しません: 必要 {list(fixed_particles)}, 指定 {sorted(signs)}"
        )
    for particle, sign in signs.items():
        if sign not in (1, -1):
            raise ValueError(f"粒子 {particle} の符号は +1 または -1 です: {sign}")
    return dict(signs)


def selected_expectation_closed_form(which: str, signs: Mapping[int, int],
                                     dirs: Iterable[DirectionLike]) -> float:
    """
    選択付き期待値の閉形式 (4粒子、非ジグザグ一重項)

    Args:
        which (str): 'pm4', 'pm3pm4_theta', 'pm3pm4_full', 'pm2pm4_theta', 'pm2pm4_full'
        signs (Mapping[int, int]): 粒子番号 (1 始まり) → 観測した符号 ±1
        dirs: 4つの測定方向

    Raises:
        ValueError: 未知の行、選択の不一致、または θ のみの形に φ ≠ 0 を渡した場合
    """
    fixed = get_selection_fixed_particles(which)
    selection = _check_selection(fixed, signs)
    dirs = as_directions(dirs)
    if len(dirs) != 4:
        raise ValueError(f"4方向が必要です: {len(dirs)}")
    if which.endswith('_theta'):
        _require_theta_only(which, dirs)
    return _SELECTED_FORMS[which](dirs, selection)


def selected_expectation_ghzm(sign3: int, dirs: Iterable[DirectionLike]) -> float:
    """3粒子 GHZM 状態の選択付き期待値 ½[c1 c2 ± cos(φ1+φ2+φ3) s1 s2 s3]"""
    if sign3 not in (1, -1):
        raise ValueError(f"符号は +1 または -1 です: {sign3}")
    dirs = as_directions(dirs)
    if len(dirs) != 3:
        raise ValueError(f"3方向が必要です: {len(dirs)}")
    (c1, c2, _), (s1, s2, s3), (p1, p2, p3) = _trig(dirs)
    return 0.5 * (c1 * c2 + sign3 * math.cos(p1 + p2 + p3) * s1 * s2 * s3)


def selected_expectation_candidates(rho: np.ndarray, dirs: Iterable[DirectionLike],
                                    fixed: Mapping[int, int]) -> Dict[str, float]:
    """
    選択付き期待値の候補定義をすべて計算

    Returns:
        Dict[str, float]: 'a' (非正規化・全粒子の符号積)、'b' (a を選択確率で正規化)、
            'c' (非正規化・自由粒子の符号積)、'd' (c を選択確率で正規化)、
            'selection_probability'。選択確率 0 のとき b, d は NaN

    Raises:
        ValueError: 固定する粒子が 1 個または 2 個でない場合
    """
    dirs = as_directions(dirs)
    n = _n_particles(rho)
    if len(dirs) != n:
        raise ValueError(f"方向の個数が粒子数と一致しません: {len(dirs)} != {n}")
    if not 1 <= len(fixed) <= 2 or any(not 1 <= k <= n for k in fixed):
        raise ValueError(f"固定する粒子は 1 個または 2 個です: {dict(fixed)}")
    free = [k for k in range(1, n + 1) if k not in fixed]

    full_sum = free_sum = selection = 0.0
    for signs in all_sign_patterns(n):
        if any(signs[k - 1] != v for k, v in fixed.items()):
            continue
        probability = joint_probability(rho, signs, dirs)
        selection += probability
        full_sum += math.prod(signs) * probability
        free_sum += math.prod(signs[k - 1] for k in free) * probability

    normalize = (lambda x: x / selection) if selection > FLOAT_TOLERANCE else (lambda x: math.nan)
    return {
        'a': full_sum,
        'b': normalize(full_sum),
        'c': free_sum,
        'd': normalize(free_sum),
        'selection_probability': selection,
    }


# ---------------------------------------------------------------------------
# 角度スキャン
# ---------------------------------------------------------------------------

def scan(curve: str, samples: int) -> pd.DataFrame:
    """
    曲線 (a)〜(f) に沿って θ ∈ [0, 2π] を等間隔に走査

    Returns:
        pd.DataFrame: 列 theta, p_even, p_odd, expectation (格子順)

    Raises:
        ValueError: 未知の曲線、または samples < 2 の場合
    """
    definition = get_scan_curve(curve)
    if samples < 2:
        raise ValueError(f"samples は 2 以上である必要があります: {samples}")
    rho = density_operator(general_singlet(definition['tau']))
    rows = []
    for theta in np.linspace(0.0, 2.0 * math.pi, samples):
        dirs = directions_from_angles(definition['thetas'](float(theta)))
        expectation = parity_expectation(rho, dirs)
        p_even, p_odd = parity_probabilities(expectation)
        rows.append((float(theta), p_even, p_odd, expectation))
    logger.debug("スキャン曲線 %s (%s): %d 点", curve, definition['description'], samples)
    return pd.DataFrame(rows, columns=SCAN_COLUMNS)


def scan_to_csv(frame: pd.DataFrame) -> str:
    """スキャン結果を CSV テキスト (有効数字 12 桁、LF 改行) に変換"""
    return frame.to_csv(index=False, float_format='%.12g', lineterminator='\n')
