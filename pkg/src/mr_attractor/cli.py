#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""mr-attractor 命令列介面。

子命令：
    run              執行社群偵測並寫出社群檔與 report.json
    eval             以真實社群（或圖本身）評估社群檔
    partition-stats  列出 DecGP 子圖的主邊數量與 S_I 記錄數
    stats            資料集統計 |V| |E| AVD CC
    sweep            以多種滑動視窗設定執行評估流程並更新 REPORT.md

結束碼：0 成功，1 執行錯誤，2 參數錯誤。
"""

import os
import sys
import json
import logging
import argparse
from dataclasses import asdict, replace

from . import __version__
from .config import RunConfig, MODES
from .engine import detect
from .exceptions import MRAttractorError, ConfigurationError, EmptyGraphError
from .extract import extract_communities, save_partition, read_communities
from .graph import load_edge_list, load_ground_truth, load_karate, load_gml, graph_stats
from .metrics import labeled_report, unlabeled_report, format_report, report_json
from .partition import PartitionScheme, partition_stats
from .experiment import EvaluationSuite, default_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

# 與工作程序數有關的欄位不寫入報告，報告才會與 --workers 無關
EXECUTION_FIELDS = ('workers', 'reducer_count', 'spill_threshold')


def _load(args):
    """依 --dataset 或 --input 載入圖與（可選的）真實社群。"""
    truth = None
    if getattr(args, 'dataset', None) == 'karate':
        graph, truth = load_karate()
    elif args.input is None:
        raise ConfigurationError("either --input or --dataset is required")
    elif args.input.endswith('.gml'):
        graph, truth = load_gml(args.input, args.label_attr)
    else:
        graph = load_edge_list(args.input)
    if getattr(args, 'ground_truth', None):
        truth = load_ground_truth(args.ground_truth, graph)
    return graph, truth


def _config(args):
    return RunConfig(
        lam=args.lam,
        window=args.window,
        tau=args.tau,
        gamma=args.gamma,
        partitions=args.partitions,
        reducer_count=args.reducers,
        workers=args.workers,
        max_iters=args.max_iters,
        mode=args.mode,
        spill_threshold=args.spill_threshold,
    ).validate()


def build_run_report(config, result, partition=None, metrics=None):
    """組成 RunReport 字典；只包含決定性的欄位。"""
    echo = {k: v for k, v in config.to_dict().items() if k not in EXECUTION_FIELDS}
    return {
        'config': echo,
        'iterations': {
            'total': result.iterations,
            'mr': result.mr_iterations,
            'master': result.master_iterations,
        },
        'converged': result.converged,
        'communities': partition.k if partition is not None else None,
        'metrics': metrics,
        'history': [asdict(stat) for stat in result.history],
        'emissions': result.emissions,
    }


def _write_json(path, data):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write('\n')
    return path


def cmd_run(args):
    """執行社群偵測。

    Args:
        args (argparse.Namespace): 命令列參數。

    Returns:
        int: 結束碼；未收斂時仍為 0，報告中的 converged 為 false。
    """
    config = _config(args)
    graph, truth = _load(args)
    result = detect(graph, config, checkpoint_path=args.checkpoint, resume=args.resume)

    partition = metrics = None
    if result.converged:
        partition = extract_communities(graph, result.distances)
        # 先算指標，頂點集合不符時不留下任何輸出檔
        if truth:
            metrics = labeled_report(partition, truth)
        communities_path, assignment_path = save_partition(partition, args.output_dir)
        print(f"社群檔已保存至: {communities_path}")
        print(f"逐頂點社群檔已保存至: {assignment_path}")
    else:
        print(f"警告: {args.max_iters} 次迭代內未收斂，未輸出社群檔")

    os.makedirs(args.output_dir, exist_ok=True)
    report = build_run_report(config, result, partition, metrics)
    report_path = _write_json(os.path.join(args.output_dir, 'report.json'), report)
    _write_json(os.path.join(args.output_dir, 'timings.json'), [asdict(t) for t in result.timings])
    print(f"迭代次數: {result.iterations} (MR {result.mr_iterations}, 主節點 {result.master_iterations})")
    if partition is not None:
        print(f"社群數: {partition.k}")
    if metrics:
        print(format_report(metrics))
    print(f"報告已保存至: {report_path}")
    return EXIT_OK


def cmd_eval(args):
    """評估社群檔：有 --ground-truth 時算 Purity/NMI/ARI，否則以 --input 的圖算 modularity/Ncut。"""
    pred = read_communities(args.communities)
    if args.ground_truth:
        truth = load_ground_truth(args.ground_truth)
        report = labeled_report(pred, truth)
    else:
        if args.input is None and args.dataset is None:
            raise ConfigurationError("eval needs --ground-truth or a graph (--input/--dataset)")
        graph, _ = _load(args)
        report = unlabeled_report(graph, pred)
    print(format_report(report))
    if args.json:
        with open(args.json, 'w', encoding='utf-8') as f:
            f.write(report_json(report) + '\n')
        print(f"指標已保存至: {args.json}")
    return EXIT_OK


def cmd_partition_stats(args):
    """列出每個子圖的主邊數量與 S_I 記錄數（對照精確公式與 O(mp)）。"""
    scheme = PartitionScheme(args.partitions)
    try:
        graph, _ = _load(args)
    except EmptyGraphError:
        print(f"p={scheme.p} subgraphs=0 emissions=0 expected_emissions=0 mp=0")
        return EXIT_OK
    stats = partition_stats(graph, scheme)
    for key, count in stats['subgraphs'].items():
        print(f"G_{key.i}{key.j}{key.k}: {count} main edges")
    print(f"p={stats['p']} subgraphs={len(stats['subgraphs'])} "
          f"inner_edges={stats['inner_edges']} outer_edges={stats['outer_edges']}")
    print(f"emissions={stats['emissions']} expected_emissions={stats['expected_emissions']} mp={stats['mp']}")
    return EXIT_OK


def cmd_stats(args):
    """輸出資料集統計列 |V| |E| AVD CC。"""
    graph, _ = _load(args)
    stats = graph_stats(graph)
    print(f"|V|={stats['vertices']} |E|={stats['edges']} "
          f"AVD={stats['avg_degree']:.3f} CC={stats['avg_clustering']:.3f}")
    return EXIT_OK


def _parse_setting(text, base):
    """把 "0.5-10" 轉成 τ=0.5、s=10 的 windowed 設定。"""
    try:
        tau, s = text.split('-')
        tau, s = float(tau), int(s)
    except ValueError:
        raise ConfigurationError(f"Bad window setting {text!r}, expected TAU-S such as 0.5-10") from None
    return replace(base, mode='windowed', tau=tau, window=s).validate()


def cmd_sweep(args):
    """在單一資料集上執行原始 Attractor 與各視窗設定，更新 REPORT.md。"""
    base = RunConfig(lam=args.lam, max_iters=args.max_iters, gamma=args.gamma).validate()
    settings = default_settings(base)
    if args.settings:
        settings = settings[:1] + [_parse_setting(s, base) for s in args.settings.split(',')]
    graph, truth = _load(args)
    name = args.dataset or os.path.splitext(os.path.basename(args.input))[0]

    suite = EvaluationSuite(experiment_id=args.experiment_id, output_dir=args.output_dir)
    rows = suite.run_dataset(name, graph, truth, settings)
    data_path = suite.save_data(rows)
    report_path = suite.update_report(rows, data_path)
    for row in rows:
        print(f"{row['setting']}: {row['iterations']} 次迭代")
    print(f"數據已保存至: {data_path}")
    print(f"報告已更新: {report_path}")
    return EXIT_OK


def _add_graph_args(parser):
    parser.add_argument('--input', help='邊列表（每行 "u v"）或 .gml 檔')
    parser.add_argument('--dataset', choices=['karate'], help='內建資料集')
    parser.add_argument('--label-attr', default='value', help='GML 真實社群屬性（預設 value）')


def _add_run_args(parser):
    parser.add_argument('--mode', choices=MODES, default='windowed')
    parser.add_argument('--lambda', dest='lam', type=float, default=0.5)
    parser.add_argument('--window', type=int, default=15)
    parser.add_argument('--tau', type=float, default=0.5)
    parser.add_argument('--gamma', type=int, default=10000)
    parser.add_argument('--partitions', type=int, default=20)
    parser.add_argument('--reducers', type=int, default=30)
    parser.add_argument('--workers', type=int, default=1)
    parser.add_argument('--max-iters', type=int, default=1000)
    parser.add_argument('--spill-threshold', type=int, default=0)


def build_parser():
    """建立含所有子命令的 argparse 解析器。"""
    parser = argparse.ArgumentParser(prog='mr-attractor', description='Attractor / MRAttractor 社群偵測')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='顯示 DEBUG 日誌')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='只顯示警告與錯誤')
    sub = parser.add_subparsers(dest='command', required=True)

    run = sub.add_parser('run', help='執行社群偵測')
    _add_graph_args(run)
    _add_run_args(run)
    run.add_argument('--ground-truth', help='真實社群檔（每行 "vertex label"）')
    run.add_argument('--output-dir', default='output')
    run.add_argument('--checkpoint', help='每次 MR 迭代後寫入的檢查點')
    run.add_argument('--resume', action='store_true', help='從 --checkpoint 繼續')
    run.set_defaults(func=cmd_run)

    ev = sub.add_parser('eval', help='評估社群檔')
    _add_graph_args(ev)
    ev.add_argument('--communities', required=True, help='run 輸出的 communities.txt')
    ev.add_argument('--ground-truth', help='真實社群檔；省略時改算 modularity/Ncut')
    ev.add_argument('--json', help='另存 JSON 指標')
    ev.set_defaults(func=cmd_eval)

    ps = sub.add_parser('partition-stats', help='DecGP 子圖統計')
    _add_graph_args(ps)
    ps.add_argument('--partitions', type=int, default=20)
    ps.set_defaults(func=cmd_partition_stats)

    st = sub.add_parser('stats', help='資料集統計')
    _add_graph_args(st)
    st.set_defaults(func=cmd_stats)

    sw = sub.add_parser('sweep', help='以多種視窗設定執行評估流程')
    _add_graph_args(sw)
    sw.add_argument('--ground-truth')
    sw.add_argument('--lambda', dest='lam', type=float, default=0.5)
    sw.add_argument('--gamma', type=int, default=10000)
    sw.add_argument('--max-iters', type=int, default=1000)
    sw.add_argument('--settings', help='逗號分隔的 TAU-S，例如 0.5-10,0.7-10')
    sw.add_argument('--experiment-id', type=int, default=1)
    sw.add_argument('--output-dir', default='.')
    sw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None):
    """命令列進入點，回傳結束碼。"""
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MRAttractorError, OSError, UnicodeDecodeError) as exc:
        print(f"錯誤: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
