#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
エクスポート・テキスト表示のテスト

実行:
    pytest test_state_export.py
"""

import json

import pytest

from singlet_builder import singlet_basis
from state_export import (
    dump_export_document,
    export_document,
    parse_export_document,
    render_basis_text,
    render_state_text,
    string_to_word,
    word_to_string,
    write_text_atomic,
)


@pytest.mark.parametrize('n, spin', [(2, "1/2"), (6, "1/2"), (4, 1), (3, 1)])
def test_export_parse_export_is_byte_identical(n, spin):
    text = dump_export_document(export_document(singlet_basis(n, spin)))
    again = dump_export_document(export_document(parse_export_document(text)))
    assert again == text
    assert text.endswith('\n')


def test_parsed_basis_keeps_amplitudes_and_paths():
    basis = singlet_basis(4, "1/2")
    parsed = parse_export_document(dump_export_document(export_document(basis)))
    assert parsed.n == 4 and parsed.spin == basis.spin
    for original, restored in zip(basis, parsed):
        assert restored.amps == original.amps
        assert restored.path == original.path
        assert restored.i == original.i


def test_document_layout():
    document = export_document(singlet_basis(2, "1/2"))
    assert document['schema_version'] == '1.0'
    assert document['spin'] == 1 and document['n'] == 2
    (state,) = document['states']
    assert (state['j'], state['m'], state['index'], state['path']) == (0, 0, 1, [1, 0])
    assert [a['word'] for a in state['amplitudes']] == ['-+', '+-']
    assert state['amplitudes'][1]['terms'] == [{'num': '1', 'den': '2', 'radicand': 2}]
    assert state['amplitudes'][0]['terms'] == [{'num': '-1', 'den': '2', 'radicand': 2}]


def test_word_string_conversions():
    assert word_to_string((1, -1, 1), 1) == '+-+'
    assert string_to_word('+-+', 1) == (1, -1, 1)
    assert word_to_string((2, 0, -2), 2) == '1,0,-1'
    assert string_to_word('1,0,-1', 2) == (2, 0, -2)
    assert word_to_string((3, -1), 3) == '3/2,-1/2'
    assert string_to_word('3/2,-1/2', 3) == (3, -1)


def test_unicode_minus_sign_is_accepted_but_not_written():
    assert string_to_word('+−', 1) == (1, -1)
    assert string_to_word('−+-', 1) == (-1, 1, -1)
    assert string_to_word('1,0,−1', 2) == (2, 0, -2)
    assert string_to_word('−3/2,1/2', 3) == (-3, 1)
    assert word_to_string(string_to_word('+−', 1), 1) == '+-'
    assert '−' not in word_to_string((-2, 0, 2), 2)


@pytest.mark.parametrize('text, spin_twice', [('+x', 1), ('2,0', 2), ('1/2,0', 2), ('1,abc', 2)])
def test_string_to_word_rejects_bad_words(text, spin_twice):
    with pytest.raises(ValueError):
        string_to_word(text, spin_twice)


@pytest.mark.parametrize('text', [
    'not json',
    '[]',
    json.dumps({'schema_version': '2.0', 'spin': 1, 'n': 2, 'states': []}),
    json.dumps({'schema_version': '1.0', 'spin': 1, 'n': 2}),
    json.dumps({'schema_version': '1.0', 'spin': 1, 'n': 2,
                'states': [{'j': 0, 'm': 0, 'index': 1, 'amplitudes': [{'word': '+q', 'terms': []}]}]}),
])
def test_parse_rejects_bad_documents(text):
    with pytest.raises(ValueError):
        parse_export_document(text)


def test_render_state_text():
    basis = singlet_basis(4, "1/2")
    first = render_state_text(basis[0])
    assert first.splitlines()[0] == "#1  j=0, m=0  経路: 1/2 → 1 → 1/2 → 0"
    assert "|++--⟩" in first and "√3" in first
    second = render_state_text(basis[1])
    assert "+1/2 × (|-+-+⟩ + |+-+-⟩)" in second
    assert "-1/2 × (|-++-⟩ + |+--+⟩)" in second


def test_render_basis_text_header():
    text = render_basis_text(singlet_basis(6, "1/2"))
    lines = text.splitlines()
    assert lines[0] == "N=6, s=1/2: 一重項 5 状態"
    assert lines[1] == '=' * 60
    assert sum(1 for line in lines if line.startswith('#')) == 5


def test_write_text_atomic(tmp_path):
    target = tmp_path / 'out' / 'basis.json'
    written = write_text_atomic(target, 'first\n')
    assert written == target
    assert target.read_text(encoding='utf-8') == 'first\n'
    write_text_atomic(target, 'second\n')
    assert target.read_text(encoding='utf-8') == 'second\n'
    assert [p.name for p in target.parent.iterdir()] == ['basis.json']
