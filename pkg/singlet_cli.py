#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
一重項構成エンジンのコマンドライン

サブコマンド:
- counts     状態数の三角表 (テキスト + 任意で CSV)
- singlets   N 粒子一重項基底のエクスポート (json / text)
- verify     検証スイート
- scan       角度スキャン (CSV)
- reconcile  選択付き期待値の閉形式と候補定義の照合

終了コード: 0 成功、1 検証失敗、2 使い方の誤り、3 容量超過

使用例:
    python singlet_cli.py counts --spin2 1 --nmax 20
    python singlet_cli.py singlets --spin2 1 --n 4 --out singlets_4.json
    python singlet_cli.py verify --spin2 2 --nmax 5
    python singlet_cli.py scan --curve a --samples 101 --out scan_a.csv
    python singlet_cli.py reconcile --samples 200 --seed 0
"""

import argparse
import logging
import sys
import traceback
from pathlib import Path
from typing import Optional, Sequence

from correlations import scan, scan_to_csv
from selection_reconciler import reconcile_selection
from singlet_builder import CapacityError, count_triangle, singlet_basis
from singlet_config_loader import (
    DEFAULT_CONFIG_FILE,
    get_builder_config,
    get_correlation_config,
    get_logging_config,
    get_reconcile_config,
    get_scan_config,
    get_verification_config,
    load_singlet_configs,
)
from singlet_constants import (
    EXIT_CAPACITY,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFY_FAILED,
    SCAN_CURVES,
    SELECTION_MATCH_TOLERANCE,
    get_spin_name,
)
from singlet_verifier import run_verification
from state_export import dump_export_document, export_document, render_basis_text, write_text_atomic

logger = logging.getLogger('SingletEngine')


def setup_logging(log_config: dict, verbose: bool = False) -> logging.Logger:
    """
    ロギングを設定

    ルートロガーにハンドラーを付け、ライブラリモジュールのログもまとめて出力する。
    """
    level = logging.DEBUG if verbose else getattr(logging, log_config.get('level', 'INFO'))
    root = logging.getLogger()
    root.setLevel(level)

    # ハンドラーをクリア
    root.handlers.clear()

    # フォーマッター
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    # コンソールハンドラー
    if log_config.get('console', True):
        console_handler = logging.StreamHandler()
        console_handler.setFormatter(formatter)
        root.addHandler(console_handler)

    # ファイルハンドラー
    if log_config.get('file'):
        log_file = Path(log_config['file'])
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding='utf-8')
        file_handler.setFormatter(formatter)
        root.addHandler(file_handler)

    return logger


def cmd_counts(spin2: int, n_max: int, out_path: Optional[str] = None) -> int:
    """状態数の三角表を表示し、指定があれば CSV に保存"""
    table = count_triangle(f"{spin2}/2", n_max)
    print("=" * 60)
    print(f"[LIST] 状態数 (s={get_spin_name(spin2)}, N=1..{n_max})")
    print("=" * 60)
    print(table.replace(0, '').to_string())
    if out_path:
        write_text_atomic(out_path, table.to_csv(lineterminator='\n'))
        print(f"[FILE] {out_path}")
    print(f"[DONE] j=0 の状態数 (N={n_max}): {int(table.loc['0', n_max]) if '0' in table.index else 0}")
    return EXIT_OK


def cmd_singlets(spin2: int, n: int, out_path: Optional[str] = None, fmt: str = 'json',
                 budget: Optional[int] = None) -> int:
    """一重項基底を構成して json またはテキストで出力"""
    print(f"[START] 一重項基底の構成: N={n}, s={get_spin_name(spin2)}")
    basis = singlet_basis(n, f"{spin2}/2", budget=budget)
    if fmt == 'json':
        text = dump_export_document(export_document(basis))
    else:
        text = render_basis_text(basis)
    if out_path:
        write_text_atomic(out_path, text)
        print(f"[FILE] {out_path}")
    else:
        sys.stdout.write(text)
    print(f"[OK] {len(basis)} 状態")
    return EXIT_OK


def cmd_verify(spin2: int, n_max: int, budget: Optional[int] = None,
               correlation_config: Optional[dict] = None) -> int:
    """検証スイートを実行 (1件でも失敗すれば終了コード 1)"""
    print("=" * 60)
    print(f"[START] 検証: s={get_spin_name(spin2)}, N<={n_max}")
    print("=" * 60)
    results = run_verification(f"{spin2}/2", n_max, budget=budget,
                               correlation_config=correlation_config)
    for record in results.itertuples():
        tag = '[OK]' if record.passed else '[FAIL]'
        print(f"{tag} {record.check:15s}: {record.detail}")
    failed = int((~results['passed']).sum())
    print("=" * 60)
    if failed:
        print(f"[ERROR] {failed} 件の検証が失敗しました")
        return EXIT_VERIFY_FAILED
    print(f"[DONE] 全 {len(results)} 件の検証に成功しました")
    return EXIT_OK


def cmd_scan(curve: str, samples: int, out_path: Optional[str] = None) -> int:
    """角度スキャンを CSV で出力"""
    frame = scan(curve, samples)
    text = scan_to_csv(frame)
    if out_path:
        write_text_atomic(out_path, text)
        print(f"[FILE] {out_path}")
    else:
        sys.stdout.write(text)
    print(f"[DONE] 曲線 {curve}: {len(frame)} 点")
    return EXIT_OK


def cmd_reconcile_selection(samples: int, seed: int, out_path: Optional[str] = None,
                            tol: float = SELECTION_MATCH_TOLERANCE) -> int:
    """選択付き期待値の閉形式と候補定義を照合して報告"""
    print("=" * 60)
    print(f"[START] 選択付き期待値の照合: samples={samples}, seed={seed}")
    print("=" * 60)
    report = reconcile_selection(samples=samples, seed=seed, tol=tol)
    print(report.candidates.to_string(index=False))
    print("-" * 60)
    print(report.identities.to_string(index=False))
    for row, candidates in report.matched().items():
        print(f"[LIST] {row}: 一致 {', '.join(candidates) if candidates else 'なし'}")
    if out_path:
        write_text_atomic(out_path, report.candidates.to_csv(index=False, float_format='%.12g',
                                                             lineterminator='\n'))
        print(f"[FILE] {out_path}")
    print(f"[DONE] seed={seed}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """引数パーサーを作成"""
    parser = argparse.ArgumentParser(
        description='Singlet state enumeration and four-particle correlation engine'
    )
    parser.add_argument(
        '--config',
        default=DEFAULT_CONFIG_FILE,
        help='設定ファイルのパス (デフォルト: singlet_configs.json)'
    )
    parser.add_argument(
        '--verbose',
        action='store_true',
        help='詳細ログを出力（DEBUGレベル）'
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    counts = subparsers.add_parser('counts', help='状態数の三角表')
    counts.add_argument('--spin2', type=int, required=True, help='スピンの2倍値 (1 = スピン1/2)')
    counts.add_argument('--nmax', type=int, required=True, help='最大粒子数')
    counts.add_argument('--out', help='CSV の出力先')

    singlets = subparsers.add_parser('singlets', help='一重項基底のエクスポート')
    singlets.add_argument('--spin2', type=int, required=True, help='スピンの2倍値 (1 = スピン1/2)')
    singlets.add_argument('--n', type=int, required=True, help='粒子数')
    singlets.add_argument('--out', help='出力先 (省略時は標準出力)')
    singlets.add_argument('--format', choices=['json', 'text'], default='json', help='出力形式')
    singlets.add_argument('--budget', type=int, help='振幅数の上限')

    verify = subparsers.add_parser('verify', help='検証スイート')
    verify.add_argument('--spin2', type=int, required=True, help='スピンの2倍値 (1 = スピン1/2)')
    verify.add_argument('--nmax', type=int, help='最大粒子数 (省略時は設定値)')
    verify.add_argument('--budget', type=int, help='振幅数の上限')

    scan_parser = subparsers.add_parser('scan', help='角度スキャン')
    scan_parser.add_argument('--curve', choices=sorted(SCAN_CURVES), required=True, help='曲線 (a〜f)')
    scan_parser.add_argument('--samples', type=int, help='格子点数 (省略時は設定値)')
    scan_parser.add_argument('--out', help='CSV の出力先 (省略時は標準出力)')

    reconcile = subparsers.add_parser('reconcile', help='選択付き期待値の照合')
    reconcile.add_argument('--samples', type=int, help='方向の組の数 (省略時は設定値)')
    reconcile.add_argument('--seed', type=int, help='乱数シード (省略時は設定値)')
    reconcile.add_argument('--out', help='照合表 CSV の出力先')

    return parser


def _validate_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    spin2 = getattr(args, 'spin2', None)
    if spin2 is not None and spin2 < 1:
        parser.error(f"--spin2 は 1 以上である必要があります: {spin2}")
    for name in ('nmax', 'n'):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name} は 1 以上である必要があります: {value}")
    samples = getattr(args, 'samples', None)
    if samples is not None:
        minimum = 2 if args.command == 'scan' else 1
        if samples < minimum:
            parser.error(f"--samples は {minimum} 以上である必要があります: {samples}")
    budget = getattr(args, 'budget', None)
    if budget is not None and budget < 1:
        parser.error(f"--budget は 1 以上である必要があります: {budget}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """メイン関数"""
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate_args(parser, args)

    try:
        configs = load_singlet_configs(args.config)
    except (FileNotFoundError, ValueError) as e:
        print(f"[ERROR] {e}")
        return EXIT_USAGE

    setup_logging(get_logging_config(configs), verbose=args.verbose)
    default_budget = get_builder_config(configs)['amplitude_budget']

    try:
        if args.command == 'counts':
            return cmd_counts(args.spin2, args.nmax, args.out)
        if args.command == 'singlets':
            return cmd_singlets(args.spin2, args.n, args.out, args.format,
                                budget=args.budget or default_budget)
        if args.command == 'verify':
            verification = get_verification_config(configs)
            n_max = args.nmax or (verification['exact_n_max_half'] if args.spin2 == 1
                                  else verification['exact_n_max_one'])
            return cmd_verify(args.spin2, n_max, budget=args.budget or default_budget,
                              correlation_config=get_correlation_config(configs))
        if args.command == 'scan':
            samples = args.samples or get_scan_config(configs)['default_samples']
            return cmd_scan(args.curve, samples, args.out)
        if args.command == 'reconcile':
            reconcile = get_reconcile_config(configs)
            samples = args.samples or reconcile['samples']
            seed = reconcile['seed'] if args.seed is None else args.seed
            return cmd_reconcile_selection(samples, seed, args.out, tol=reconcile['match_tolerance'])
    except CapacityError as e:
        print(f"[ERROR] {e}")
        return EXIT_CAPACITY
    except ValueError as e:
        print(f"[ERROR] {e}")
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.info("ユーザーによって中断されました")
        return 130
    except Exception as e:
        logger.error(f"予期しないエラー: {str(e)}")
        logger.debug(traceback.format_exc())
        return EXIT_VERIFY_FAILED
    parser.error(f"未知のコマンドです: {args.command}")
    return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
