#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
厳密数値モジュール (Exact Numbers)

Clebsch-Gordan 係数の再帰で現れる振幅を厳密に保持する。
有理数は fractions.Fraction、振幅は「有理数 × √(平方因子を含まない整数)」の
有限和 RadicalSum として表現する。

主な機能:
- 平方因子分解 n = s^2 * r
- RadicalSum の加算・減算・乗算・符号反転
- 浮動小数点への変換 (相関計算レイヤーへの橋渡し)
- テキスト表現 "p/q*sqrt(n) + ..." との相互変換

正準形:
- 各根号 n は平方因子を含まない正整数
- 係数 0 の項は保持しない (空 = 0)
- 1/√n は (1/n)·√n として保持する (分母の有理化)

Author: Kirisame Team
Date: 2026-10-17
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple, Union

from sympy import factorint

Rational = Fraction
Number = Union[int, Fraction, 'RadicalSum']


@lru_cache(maxsize=65536)
def square_free_decompose(n: int) -> Tuple[int, int]:
    """
    正整数を n = s^2 * r (r は平方因子を含まない) に分解する

    Args:
        n (int): 1 以上の整数

    Returns:
        Tuple[int, int]: (s, r)

    Raises:
        ValueError: n が 1 未満の場合
    """
    if n < 1:
        raise ValueError(f"square_free_decompose は n >= 1 が必要です: {n}")
    s, r = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            r *= p
    return s, r


class RadicalSum:
    """
    Σ q_i √n_i の形の厳密な実数

    生成後は不変 (内部辞書を外部に渡さない)。等価性は正準形の構造比較。
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Mapping[int, Union[int, Fraction]] = None):
        """
        初期化

        Args:
            terms (Mapping[int, Fraction]): 根号 n → 係数 q。n は平方因子を含んでもよい
                (正準化時に s√r へ簡約される)
        """
        canonical: Dict[int, Fraction] = {}
        if terms:
            for radicand, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                s, r = square_free_decompose(int(radicand))
                value = canonical.get(r, Fraction(0)) + coeff * s
                if value == 0:
                    canonical.pop(r, None)
                else:
                    canonical[r] = value
        self._terms = canonical
        self._hash = None

    @classmethod
    def _from_canonical(cls, terms: Dict[int, Fraction]) -> 'RadicalSum':
        # 正準性が保証された辞書をそのまま使う内部用コンストラクタ
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> Dict[int, Fraction]:
        """根号 → 係数 の辞書 (コピー)"""
        return dict(self._terms)

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        """根号の昇順に (根号, 係数) を返す"""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __neg__(self) -> 'RadicalSum':
        return RadicalSum._from_canonical({r: -q for r, q in self._terms.items()})

    def __add__(self, other: Number) -> 'RadicalSum':
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        merged = dict(self._terms)
        for r, q in other._terms.items():
            value = merged.get(r, Fraction(0)) + q
            if value == 0:
                merged.pop(r, None)
            else:
                merged[r] = value
        return RadicalSum._from_canonical(merged)

    __radd__ = __add__

    def __sub__(self, other: Number) -> 'RadicalSum':
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> 'RadicalSum':
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Number) -> 'RadicalSum':
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        product: Dict[int, Fraction] = {}
        for r1, q1 in self._terms.items():
            for r2, q2 in other._terms.items():
                # r1, r2 は平方因子なし: r1*r2 = g^2 * (r1/g)(r2/g)
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                value = product.get(r, Fraction(0)) + q1 * q2 * g
                if value == 0:
                    product.pop(r, None)
                else:
                    product[r] = value
        return RadicalSum._from_canonical(product)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        other = as_radical(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            # 有理数のみの値は int / Fraction と同じハッシュ (== と整合させる)
            if not self._terms:
                self._hash = hash(0)
            elif len(self._terms) == 1 and 1 in self._terms:
                self._hash = hash(self._terms[1])
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __float__(self) -> float:
        return rad_to_float(self)

    def __repr__(self) -> str:
        return f"RadicalSum({rad_render(self)!r})"

    def __str__(self) -> str:
        return rad_render(self)


def as_radical(value: object) -> 'RadicalSum':
    """int / Fraction / RadicalSum を RadicalSum に揃える (それ以外は NotImplemented)"""
    if isinstance(value, RadicalSum):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return rad_from_rational(value)
    return NotImplemented


def rad_from_rational(q: Union[int, Fraction]) -> RadicalSum:
    """有理数 q を q·√1 として返す"""
    q = Fraction(q)
    if q == 0:
        return ZERO
    return RadicalSum._from_canonical({1: q})


def rad_sqrt_rational(q: Union[int, Fraction]) -> RadicalSum:
    """
    非負の有理数 q の平方根 √q を厳密に返す

    √(a/b) = √(ab)/b = (s/b)√r  (ab = s^2 r)

    Raises:
        ValueError: q が負の場合
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError(f"負の数の平方根は表現できません: {q}")
    if q == 0:
        return ZERO
    s, r = square_free_decompose(q.numerator * q.denominator)
    return RadicalSum._from_canonical({r: Fraction(s, q.denominator)})


def rad_add(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    """厳密な和"""
    return a + b


def rad_sub(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    """厳密な差"""
    return a - b


def rad_neg(a: RadicalSum) -> RadicalSum:
    """符号反転"""
    return -a


def rad_mul(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    """厳密な積 (√m·√n = s√r に簡約)"""
    return a * b


def rad_is_zero(a: RadicalSum) -> bool:
    return a.is_zero()


def rad_to_float(a: RadicalSum) -> float:
    """
    Σ q_i √n_i を倍精度で評価する

    各項は float(Fraction) と math.sqrt がともに正しく丸められるため、
    項あたりの相対誤差は数 ulp に収まる。
    """
    return math.fsum(float(q) * math.sqrt(r) for r, q in a._terms.items())


def _render_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def rad_render(a: RadicalSum) -> str:
    """
    テキスト表現 "q1*sqrt(n1) + q2*sqrt(n2) + ..." (q は "p/q" 形式、根号昇順)

    0 は "0" と表す。
    """
    if a.is_zero():
        return "0"
    return " + ".join(f"{_render_fraction(q)}*sqrt({r})" for r, q in a.items())


def rad_parse(text: str) -> RadicalSum:
    """
    rad_render の逆変換

    Raises:
        ValueError: 形式が正しくない場合
    """
    text = text.strip()
    if text == "0":
        return ZERO
    terms: Dict[int, Fraction] = {}
    for chunk in text.split(" + "):
        try:
            coeff_text, radical_text = chunk.split("*sqrt(")
            if not radical_text.endswith(")"):
                raise ValueError(chunk)
            radicand = int(radical_text[:-1])
            coeff = Fraction(coeff_text)
        except ValueError as e:
            raise ValueError(f"RadicalSum の形式が正しくありません: {text!r}") from e
        if radicand < 1:
            raise ValueError(f"根号は正整数である必要があります: {text!r}")
        terms[radicand] = terms.get(radicand, Fraction(0)) + coeff
    return RadicalSum(terms)


ZERO = RadicalSum._from_canonical({})
ONE = RadicalSum._from_canonical({1: Fraction(1)})
