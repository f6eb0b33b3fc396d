#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
状態のエクスポート・読み込み・テキスト表示

一重項基底を JSON 文書 (スキーマ 1.0) に正準的に直列化し、読み戻す。
export → parse → export はバイト単位で一致する。

文書の形:
    {
      "schema_version": "1.0",
      "spin": 2倍値,
      "n": 粒子数,
      "states": [
        {"j": 2倍値, "m": 2倍値, "index": 番号, "path": [2倍値, ...],
         "amplitudes": [{"word": "+-+-", "terms": [{"num": "1", "den": "3", "radicand": 3}]}]}
      ]
    }

状態は (j, m, index) の順、基底語は各粒子の m が小さい方から辞書式に並べる。
基底語の負号は ASCII の "-" で書き出す。読み込みでは "−" (U+2212) も受け付ける。
"""

import json
import logging
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Union

from clebsch_gordan import HalfInt
from exactnum import RadicalSum
from singlet_builder import BasisWord, CoupledState, SingletBasis
from singlet_constants import EXPORT_SCHEMA_VERSION, SPIN_HALF_LETTERS, get_spin_name

logger = logging.getLogger(__name__)

_MINUS_SIGN = "\u2212"
_LETTER_TO_TWICE = {v: k for k, v in SPIN_HALF_LETTERS.items()}
_LETTER_TO_TWICE[_MINUS_SIGN] = _LETTER_TO_TWICE["-"]


def word_to_string(word: BasisWord, spin_twice: int) -> str:
    """
    基底語を文字列に変換

    スピン 1/2 は "+" / "-" の連結、整数スピンは "-1,0,1" のようなカンマ区切り、
    その他の半整数スピンは "-3/2,1/2" のようなカンマ区切り。
    負号は常に ASCII の "-" (U+2212 は出力しない)。
    """
    if spin_twice == 1:
        return ''.join(SPIN_HALF_LETTERS[mu2] for mu2 in word)
    return ','.join(str(HalfInt(mu2)) for mu2 in word)


def string_to_word(text: str, spin_twice: int) -> BasisWord:
    """
    word_to_string の逆変換 (負号は "-" と "−" のどちらでもよい)

    Raises:
        ValueError: 文字列が不正な場合
    """
    if spin_twice == 1:
        try:
            return tuple(_LETTER_TO_TWICE[ch] for ch in text)
        except KeyError as e:
            raise ValueError(f"スピン 1/2 の基底語が不正です: {text!r}") from e
    tokens = text.replace(_MINUS_SIGN, '-').split(',')
    word = tuple(HalfInt.of(token).twice for token in tokens)
    if any(abs(mu2) > spin_twice or (spin_twice - mu2) % 2 for mu2 in word):
        raise ValueError(f"スピン {get_spin_name(spin_twice)} の基底語が不正です: {text!r}")
    return word


def _terms_to_json(value: RadicalSum) -> List[Dict[str, object]]:
    return [
        {'num': str(q.numerator), 'den': str(q.denominator), 'radicand': r}
        for r, q in value.items()
    ]


def _terms_from_json(terms: List[Dict[str, object]]) -> RadicalSum:
    return RadicalSum({int(t['radicand']): Fraction(int(t['num']), int(t['den'])) for t in terms})


def export_document(basis: SingletBasis) -> Dict[str, object]:
    """一重項基底をエクスポート文書 (dict) に変換"""
    states = sorted(basis.states, key=lambda s: (s.j.twice, s.m.twice, s.i))
    return {
        'schema_version': EXPORT_SCHEMA_VERSION,
        'spin': basis.spin.twice,
        'n': basis.n,
        'states': [
            {
                'j': state.j.twice,
                'm': state.m.twice,
                'index': state.i,
                'path': list(state.path),
                'amplitudes': [
                    {'word': word_to_string(word, basis.spin.twice),
                     'terms': _terms_to_json(state.amps[word])}
                    for word in sorted(state.amps)
                ],
            }
            for state in states
        ],
    }


def dump_export_document(document: Dict[str, object]) -> str:
    """エクスポート文書を正準的な JSON テキストに変換 (末尾改行付き)"""
    return json.dumps(document, ensure_ascii=False, indent=2) + '\n'


def parse_export_document(text: str) -> SingletBasis:
    """
    エクスポート文書の JSON テキストから一重項基底を復元

    Raises:
        ValueError: JSON またはスキーマが不正な場合
    """
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"エクスポート文書の形式が正しくありません: {e}") from e
    if not isinstance(document, dict):
        raise ValueError("エクスポート文書のトップレベルはオブジェクトである必要があります")

    version = document.get('schema_version')
    if version != EXPORT_SCHEMA_VERSION:
        raise ValueError(f"未対応のスキーマバージョンです: {version!r}")
    try:
        spin_twice = int(document['spin'])
        n = int(document['n'])
        spin = HalfInt(spin_twice)
        states = []
        for entry in document['states']:
            amps = {
                string_to_word(a['word'], spin_twice): _terms_from_json(a['terms'])
                for a in entry['amplitudes']
            }
            states.append(CoupledState(
                spin=spin, h=n, j=HalfInt(int(entry['j'])), m=HalfInt(int(entry['m'])),
                i=int(entry['index']), amps=amps, path=tuple(int(x) for x in entry.get('path', [])),
            ))
    except (KeyError, TypeError) as e:
        raise ValueError(f"エクスポート文書に必須項目がありません: {e}") from e
    return SingletBasis(n=n, spin=spin, states=states)


def _render_amplitude(value: RadicalSum) -> str:
    parts = []
    for r, q in value.items():
        sign = '-' if q < 0 else '+'
        q = abs(q)
        text = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if r != 1:
            text = f"√{r}" if q == 1 else f"{text}·√{r}"
        parts.append(f"{sign}{text}")
    return ' '.join(parts) if parts else '0'


def render_state_text(state: CoupledState) -> str:
    """1状態を ket 表記で表示 (振幅が同じ基底語をまとめる)"""
    spin_twice = state.spin.twice
    grouped: Dict[RadicalSum, List[BasisWord]] = {}
    for word in sorted(state.amps):
        grouped.setdefault(state.amps[word], []).append(word)
    path = ' → '.join(str(HalfInt(j2)) for j2 in state.path) or '(経路なし)'
    lines = [f"#{state.i}  j={state.j}, m={state.m}  経路: {path}"]
    for value, words in grouped.items():
        kets = ' + '.join(f"|{word_to_string(w, spin_twice)}⟩" for w in words)
        lines.append(f"  {_render_amplitude(value)} × ({kets})")
    return '\n'.join(lines)


def render_basis_text(basis: SingletBasis) -> str:
    """一重項基底全体のテキスト表示"""
    header = f"N={basis.n}, s={get_spin_name(basis.spin.twice)}: 一重項 {len(basis)} 状態"
    blocks = [header, '=' * 60]
    blocks.extend(render_state_text(state) for state in basis)
    return '\n'.join(blocks) + '\n'


def write_text_atomic(path: Union[str, Path], text: str) -> Path:
    """
    同じディレクトリの一時ファイルに書いてから置き換える

    Returns:
        Path: 書き込んだファイル
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix='.tmp')
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug("ファイルを書き込みました: %s", path)
    return path
