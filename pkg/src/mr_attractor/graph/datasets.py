#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""小型帶標籤資料集的載入工具。"""

import os

import networkx as nx

from .core import Graph

DATA_ENV = 'MR_ATTRACTOR_DATA'


def load_karate():
    """載入 Zachary 空手道俱樂部網路（34 個頂點、78 條邊）。

    Returns:
        tuple: (Graph, dict)，第二項為外部頂點編號到派系名稱的對照。
    """
    g = nx.karate_club_graph()
    truth = {int(v): str(club) for v, club in g.nodes(data='club')}
    return Graph.from_networkx(g), truth


def load_gml(path, label_attr='value'):
    """讀取 GML 格式的資料集（例如 football.gml、polbooks.gml）。

    GML 節點依原始編號遞增重新編號為 0..n-1。

    Args:
        path (str): GML 檔案路徑。
        label_attr (str, optional): 真實社群所在的節點屬性。預設為'value'。

    Returns:
        tuple: (Graph, dict)，第二項為頂點編號到標籤的對照。
    """
    raw = nx.read_gml(path, label=None)
    g = nx.convert_node_labels_to_integers(raw, ordering='sorted', label_attribute='source_id')
    truth = {int(v): str(data[label_attr]) for v, data in g.nodes(data=True) if label_attr in data}
    return Graph.from_networkx(g), truth


def find_dataset(name, data_dir=None):
    """在資料目錄（參數或環境變數 MR_ATTRACTOR_DATA）中尋找 <name>.gml。

    Returns:
        str | None: 檔案路徑，找不到時為 None。
    """
    data_dir = data_dir or os.environ.get(DATA_ENV)
    if not data_dir:
        return None
    path = os.path.join(data_dir, f'{name}.gml')
    return path if os.path.exists(path) else None
