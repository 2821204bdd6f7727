"""MRAttractor Package.

這個套件提供以動態邊距離為基礎的 Attractor 社群偵測，以及其分割式
（map-shuffle-reduce）版本 MRAttractor 與滑動視窗加速。

Examples:
    循序 Attractor：
    >>> from mr_attractor import load_karate, RunConfig, detect, extract_communities
    >>> graph, truth = load_karate()
    >>> result = detect(graph, RunConfig(mode='sequential', lam=0.5))
    >>> partition = extract_communities(graph, result.distances)

    分割式執行與評估：
    >>> from mr_attractor import labeled_report
    >>> config = RunConfig(mode='partitioned', partitions=4, gamma=0, workers=4)
    >>> result = detect(graph, config)
    >>> labeled_report(extract_communities(graph, result.distances), truth)
"""

__version__ = '0.1.0'
__author__ = '姜翼顥'
__email__ = 'example@email.com'

from .config import RunConfig
from .graph import Graph, StarGraph, load_edge_list, load_ground_truth, load_karate, load_gml, jaccard_init
from .window import WindowPolicy, SlidingWindow
from .dynamics import SequentialAttractor, run_sequential
from .partition import PartitionScheme
from .engine import MapReduceHarness, MRAttractor, run_mrattractor, detect
from .extract import CommunityPartition, extract_communities
from .metrics import purity, nmi, ari, modularity, ncut, labeled_report, unlabeled_report
from .experiment import EvaluationSuite

__all__ = ['RunConfig', 'Graph', 'StarGraph', 'load_edge_list', 'load_ground_truth', 'load_karate',
           'load_gml', 'jaccard_init', 'WindowPolicy', 'SlidingWindow', 'SequentialAttractor',
           'run_sequential', 'PartitionScheme', 'MapReduceHarness', 'MRAttractor', 'run_mrattractor',
           'detect', 'CommunityPartition', 'extract_communities', 'purity', 'nmi', 'ari',
           'modularity', 'ncut', 'labeled_report', 'unlabeled_report', 'EvaluationSuite']
