#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一重項エンジン設定の読み込みユーティリティ

JSONファイルから設定を読み込んで、各スクリプトで使用できるようにします。
各セクションは組み込みの既定値の上にマージして返します。
"""

import copy
import json
import logging
from pathlib import Path

from singlet_constants import (
    CORRELATION_TOLERANCE,
    DEFAULT_AMPLITUDE_BUDGET,
    DEFAULT_SCAN_SAMPLES,
    SELECTION_MATCH_TOLERANCE,
)

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = 'singlet_configs.json'

# 設定ファイルに無い項目はこの値を使う
DEFAULT_CONFIGS = {
    'builder': {
        'amplitude_budget': DEFAULT_AMPLITUDE_BUDGET,
    },
    'verification': {
        'exact_n_max_half': 8,
        'exact_n_max_one': 6,
    },
    'correlations': {
        'tolerance': CORRELATION_TOLERANCE,
        'random_draws': 1000,
        'seed': 20240601,
    },
    'scan': {
        'default_samples': DEFAULT_SCAN_SAMPLES,
    },
    'reconcile': {
        'samples': 200,
        'seed': 12345,
        'match_tolerance': SELECTION_MATCH_TOLERANCE,
    },
    'logging': {
        'level': 'INFO',
        'console': True,
    },
}


def load_singlet_configs(config_file=DEFAULT_CONFIG_FILE):
    """
    JSONファイルから設定を読み込む

    Args:
        config_file (str): 設定ファイル名またはパス（デフォルト: 'singlet_configs.json'）。
            相対パスはこのスクリプトと同じディレクトリから探す

    Returns:
        dict: 既定値とマージ済みの設定辞書

    Raises:
        FileNotFoundError: 設定ファイルが見つからない場合
        ValueError: JSONの形式が正しくない、または値が不正な場合
    """
    config_path = Path(config_file)
    if not config_path.is_absolute() and not config_path.exists():
        # スクリプトと同じディレクトリで設定ファイルを探す
        config_path = Path(__file__).parent / config_file

    if not config_path.exists():
        raise FileNotFoundError(f"設定ファイル {config_path} が見つかりません。")

    try:
        with open(config_path, 'r', encoding='utf-8') as f:
            raw = json.load(f)
    except json.JSONDecodeError as e:
        raise ValueError(f"設定ファイル {config_file} の形式が正しくありません: {e}") from e

    if not isinstance(raw, dict):
        raise ValueError(f"設定ファイル {config_file} のトップレベルはオブジェクトである必要があります")

    configs = merge_with_defaults(raw)
    validate_singlet_config(configs)
    logger.debug("設定ファイル %s を読み込みました (セクション: %s)", config_path, ', '.join(raw))
    return configs


def merge_with_defaults(raw):
    """
    読み込んだ設定を既定値の上にセクション単位でマージ

    Args:
        raw (dict): JSONから読み込んだ設定

    Returns:
        dict: マージ結果（既定値の辞書は変更しない）
    """
    merged = copy.deepcopy(DEFAULT_CONFIGS)
    for section, values in raw.items():
        if isinstance(values, dict) and section in merged:
            merged[section].update(values)
        else:
            merged[section] = values
    return merged


def get_builder_config(configs=None):
    """構成エンジン設定を取得"""
    configs = configs if configs is not None else load_singlet_configs()
    return configs.get('builder', dict(DEFAULT_CONFIGS['builder']))


def get_verification_config(configs=None):
    """検証スイート設定を取得"""
    configs = configs if configs is not None else load_singlet_configs()
    return configs.get('verification', dict(DEFAULT_CONFIGS['verification']))


def get_correlation_config(configs=None):
    """相関計算設定を取得"""
    configs = configs if configs is not None else load_singlet_configs()
    return configs.get('correlations', dict(DEFAULT_CONFIGS['correlations']))


def get_scan_config(configs=None):
    """角度スキャン設定を取得"""
    configs = configs if configs is not None else load_singlet_configs()
    return configs.get('scan', dict(DEFAULT_CONFIGS['scan']))


def get_reconcile_config(configs=None):
    """選択相関の照合設定を取得"""
    configs = configs if configs is not None else load_singlet_configs()
    return configs.get('reconcile', dict(DEFAULT_CONFIGS['reconcile']))


def get_logging_config(configs=None):
    """ログ設定を取得"""
    configs = configs if configs is not None else load_singlet_configs()
    return configs.get('logging', dict(DEFAULT_CONFIGS['logging']))


def _require_positive_int(section, key, value):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError(f"{section}.{key} は 1 以上の整数である必要があります: {value!r}")


def _require_positive_number(section, key, value):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value <= 0:
        raise ValueError(f"{section}.{key} は正の数である必要があります: {value!r}")


def validate_singlet_config(config):
    """
    設定の妥当性をチェック

    Args:
        config (dict): チェックする設定（マージ済み）

    Returns:
        bool: 妥当な場合True

    Raises:
        ValueError: 設定に問題がある場合
    """
    required_sections = ['builder', 'verification', 'correlations', 'scan', 'reconcile', 'logging']
    for section in required_sections:
        if section not in config:
            raise ValueError(f"必須セクション '{section}' が設定されていません")
        if not isinstance(config[section], dict):
            raise ValueError(f"セクション '{section}' はオブジェクトである必要があります")

    _require_positive_int('builder', 'amplitude_budget', config['builder'].get('amplitude_budget'))

    verification = config['verification']
    _require_positive_int('verification', 'exact_n_max_half', verification.get('exact_n_max_half'))
    _require_positive_int('verification', 'exact_n_max_one', verification.get('exact_n_max_one'))

    correlations = config['correlations']
    _require_positive_number('correlations', 'tolerance', correlations.get('tolerance'))
    _require_positive_int('correlations', 'random_draws', correlations.get('random_draws'))
    if not isinstance(correlations.get('seed'), int) or isinstance(correlations.get('seed'), bool):
        raise ValueError(f"correlations.seed は整数である必要があります: {correlations.get('seed')!r}")

    samples = config['scan'].get('default_samples')
    if isinstance(samples, bool) or not isinstance(samples, int) or samples < 2:
        raise ValueError(f"scan.default_samples は 2 以上の整数である必要があります: {samples!r}")

    reconcile = config['reconcile']
    _require_positive_int('reconcile', 'samples', reconcile.get('samples'))
    _require_positive_number('reconcile', 'match_tolerance', reconcile.get('match_tolerance'))
    if not isinstance(reconcile.get('seed'), int) or isinstance(reconcile.get('seed'), bool):
        raise ValueError(f"reconcile.seed は整数である必要があります: {reconcile.get('seed')!r}")

    level = config['logging'].get('level', 'INFO')
    if not isinstance(logging.getLevelName(level), int):
        raise ValueError(f"logging.level が不正です: {level!r}")

    return True
