#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Clebsch-Gordan 係数モジュール

Condon-Shortley 位相規約に従う ⟨j1 m1 j2 m2 | J M⟩ を厳密に計算する。
Racah の和公式を 2倍値の整数で評価し、結果を符号 × √(有理数) の
1項 RadicalSum として返す。

主な機能:
- 半整数 HalfInt (2倍値の整数で保持)
- 厳密な CG 係数 (メモ化、スレッドセーフ)
- 符号反転則 ⟨j1,-m1,j2,-m2|J,-M⟩ = (-1)^(j1+j2-J) ⟨j1,m1,j2,m2|J,M⟩ の検証
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Union

from exactnum import ZERO, RadicalSum, rad_sqrt_rational, rad_to_float

HalfIntLike = Union['HalfInt', int, Fraction, str]


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """
    半整数 (k/2)

    Attributes:
        twice (int): 値の2倍 (スピン 1/2 → 1)
    """
    twice: int

    @classmethod
    def of(cls, value: HalfIntLike) -> 'HalfInt':
        """
        int / Fraction / "1/2" 形式の文字列 / HalfInt から生成

        Raises:
            ValueError: 半整数でない値の場合
        """
        if isinstance(value, HalfInt):
            return value
        if isinstance(value, bool):
            raise ValueError(f"半整数として解釈できません: {value!r}")
        if isinstance(value, int):
            return cls(2 * value)
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except ValueError as e:
                raise ValueError(f"半整数として解釈できません: {value!r}") from e
        if isinstance(value, Fraction):
            doubled = 2 * value
            if doubled.denominator != 1:
                raise ValueError(f"半整数ではありません: {value}")
            return cls(doubled.numerator)
        raise ValueError(f"半整数として解釈できません: {value!r}")

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __add__(self, other: HalfIntLike) -> 'HalfInt':
        return HalfInt(self.twice + HalfInt.of(other).twice)

    def __sub__(self, other: HalfIntLike) -> 'HalfInt':
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __neg__(self) -> 'HalfInt':
        return HalfInt(-self.twice)

    def __abs__(self) -> 'HalfInt':
        return HalfInt(abs(self.twice))

    def __lt__(self, other: 'HalfInt') -> bool:
        return self.twice < HalfInt.of(other).twice

    def __float__(self) -> float:
        return self.twice / 2

    def __str__(self) -> str:
        if self.is_integer():
            return str(self.twice // 2)
        return f"{self.twice}/2"


def check_jm(j: HalfInt, m: HalfInt) -> None:
    """
    (j, m) の組が有効な角運動量ラベルか検証

    Raises:
        ValueError: j < 0、|m| > j、または j - m が整数でない場合
    """
    if j.twice < 0:
        raise ValueError(f"j は 0 以上である必要があります: j={j}")
    if abs(m.twice) > j.twice:
        raise ValueError(f"|m| <= j である必要があります: j={j}, m={m}")
    if (j.twice - m.twice) % 2:
        raise ValueError(f"j - m は整数である必要があります: j={j}, m={m}")


def triangle_ok(j1: HalfInt, j2: HalfInt, j: HalfInt) -> bool:
    """三角条件 |j1-j2| <= J <= j1+j2 かつ j1+j2+J が整数"""
    t1, t2, tj = j1.twice, j2.twice, j.twice
    return abs(t1 - t2) <= tj <= t1 + t2 and (t1 + t2 + tj) % 2 == 0


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    return math.factorial(n)


@lru_cache(maxsize=None)
def _cg_twice(t1: int, tm1: int, t2: int, tm2: int, tj: int, tm: int) -> RadicalSum:
    """2倍値で与えた CG 係数 (検証済みの引数を前提とする)"""
    if tm1 + tm2 != tm:
        return ZERO
    if not (abs(t1 - t2) <= tj <= t1 + t2) or (t1 + t2 + tj) % 2:
        return ZERO
    f = _factorial
    # 以下の (a ± b)/2 はすべて非負整数になる
    a = (tj + t1 - t2) // 2
    b = (tj - t1 + t2) // 2
    c = (t1 + t2 - tj) // 2
    d = (t1 + t2 + tj) // 2 + 1
    prefactor = Fraction((tj + 1) * f(a) * f(b) * f(c), f(d))
    prefactor *= (f((tj + tm) // 2) * f((tj - tm) // 2)
                  * f((t1 - tm1) // 2) * f((t1 + tm1) // 2)
                  * f((t2 - tm2) // 2) * f((t2 + tm2) // 2))

    k_min = max(0, (t2 - tj - tm1) // 2, (t1 - tj + tm2) // 2)
    k_max = min(c, (t1 - tm1) // 2, (t2 + tm2) // 2)
    total = Fraction(0)
    for k in range(k_min, k_max + 1):
        denominator = (f(k) * f(c - k) * f((t1 - tm1) // 2 - k) * f((t2 + tm2) // 2 - k)
                       * f((tj - t2 + tm1) // 2 + k) * f((tj - t1 - tm2) // 2 + k))
        total += Fraction((-1) ** k, denominator)

    if total == 0:
        return ZERO
    result = rad_sqrt_rational(prefactor) * total
    if len(result) != 1:
        raise ArithmeticError(f"CG 係数が 1 項の形になりませんでした: {result}")
    return result


def clebsch_gordan(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike, m2: HalfIntLike,
                   j: HalfIntLike, m: HalfIntLike) -> RadicalSum:
    """
    厳密な Clebsch-Gordan 係数 ⟨j1 m1 j2 m2 | J M⟩

    Args:
        j1, m1, j2, m2, j, m: 半整数 (HalfInt / int / Fraction / "1/2")

    Returns:
        RadicalSum: 符号 × √(有理数)。選択則を満たさない場合は 0

    Raises:
        ValueError: いずれかの (j, m) の組が不正な場合
    """
    j1, m1, j2, m2, j, m = (HalfInt.of(x) for x in (j1, m1, j2, m2, j, m))
    check_jm(j1, m1)
    check_jm(j2, m2)
    check_jm(j, m)
    return _cg_twice(j1.twice, m1.twice, j2.twice, m2.twice, j.twice, m.twice)


def cg_float(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike, m2: HalfIntLike,
             j: HalfIntLike, m: HalfIntLike) -> float:
    """CG 係数の浮動小数点値"""
    return rad_to_float(clebsch_gordan(j1, m1, j2, m2, j, m))


def cg_sign_flip_check(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike, m2: HalfIntLike,
                       j: HalfIntLike, m: HalfIntLike) -> bool:
    """
    符号反転則 ⟨j1,-m1,j2,-m2|J,-M⟩ = (-1)^(j1+j2-J) ⟨j1,m1,j2,m2|J,M⟩ を厳密に確認

    Returns:
        bool: 恒等式が成り立つ場合True
    """
    j1, m1, j2, m2, j, m = (HalfInt.of(x) for x in (j1, m1, j2, m2, j, m))
    lhs = clebsch_gordan(j1, -m1, j2, -m2, j, -m)
    rhs = clebsch_gordan(j1, m1, j2, m2, j, m)
    exponent = j1.twice + j2.twice - j.twice
    if exponent % 2:
        # j1+j2+J が整数でない組は両辺とも 0
        return lhs.is_zero() and rhs.is_zero()
    if (exponent // 2) % 2:
        rhs = -rhs
    return lhs == rhs
