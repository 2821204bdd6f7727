"""圖結構模組。

此模組提供圖的表示與載入功能，包括：
- 邊列表與真實社群標籤檔的讀取
- Jaccard 距離初始化
- 內建小型資料集
"""

from .core import (Graph, StarGraph, LoadReport, merge_common, load_edge_list,
                   load_ground_truth, jaccard_init, graph_stats)
from .datasets import load_karate, load_gml, find_dataset

__all__ = ['Graph', 'StarGraph', 'LoadReport', 'merge_common', 'load_edge_list',
           'load_ground_truth', 'jaccard_init', 'graph_stats',
           'load_karate', 'load_gml', 'find_dataset']
