#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import json
import datetime
import logging
from dataclasses import replace

import markdown

from .config import RunConfig
from .engine import detect
from .extract import extract_communities
from .metrics import labeled_report, unlabeled_report
from .graph import graph_stats

logger = logging.getLogger(__name__)


def default_settings(base=None):
    """小型網路實驗的三種設定：原始 Attractor、[0.5-10] 與 [0.7-10]。

    Args:
        base (RunConfig, optional): 共用參數（λ、max_iters ...）。預設為 RunConfig()。

    Returns:
        list: RunConfig 列表。
    """
    base = base or RunConfig()
    return [
        replace(base, mode='sequential'),
        replace(base, mode='windowed', window=10, tau=0.5),
        replace(base, mode='windowed', window=10, tau=0.7),
    ]


class EvaluationSuite:
    """社群偵測評估流程。

    對每個資料集依序執行各種設定，計算指標與相對原始 Attractor 的
    迭代減少比例，並把結果寫成 JSON 與 REPORT.md。

    Attributes:
        experiment_id (int): 實驗編號。
        date (str): 實驗日期（YYYYMMDD格式）。
        output_dir (str): 輸出目錄。
    """

    def __init__(self, experiment_id=1, output_dir='.'):
        """初始化評估流程。

        Args:
            experiment_id (int, optional): 實驗編號。預設為1。
            output_dir (str, optional): 輸出目錄。預設為目前目錄。
        """
        self.experiment_id = experiment_id
        self.date = datetime.datetime.now().strftime("%Y%m%d")
        self.output_dir = output_dir

    def run_dataset(self, name, graph, truth=None, settings=None):
        """在單一資料集上執行所有設定。

        Args:
            name (str): 資料集名稱。
            graph (Graph): 輸入圖。
            truth (dict, optional): 外部頂點編號到真實社群的對照；沒有時改算無標籤指標。
            settings (list, optional): RunConfig 列表。預設為 default_settings()。

        Returns:
            list: 每個設定一列的結果字典。
        """
        settings = settings or default_settings()
        stats = graph_stats(graph)
        rows = []
        baseline = None
        for config in settings:
            result = detect(graph, config)
            label = config.window_policy().label
            row = {
                'dataset': name,
                'setting': label,
                'lambda': config.lam,
                'iterations': result.iterations,
                'converged': result.converged,
                **stats,
            }
            if result.converged:
                partition = extract_communities(graph, result.distances)
                if truth:
                    row.update(labeled_report(partition, truth))
                else:
                    row.update(unlabeled_report(graph, partition))
            if label == 'Attractor':
                baseline = result.iterations
            if baseline:
                row['iteration_reduction'] = round(100.0 * (baseline - result.iterations) / baseline, 2)
            logger.info("%s %s: %d iterations", name, label, result.iterations)
            rows.append(row)
        return rows

    def save_data(self, rows):
        """保存實驗數據到JSON檔案。

        Args:
            rows (list): run_dataset 的輸出。

        Returns:
            str: 保存的數據檔案路徑。
        """
        data = {
            "experiment_id": self.experiment_id,
            "date": self.date,
            "rows": rows,
        }
        os.makedirs(self.output_dir, exist_ok=True)
        filename = os.path.join(self.output_dir,
                                f'Attractor_Data_Exp{self.experiment_id}_{self.date}_save_data.json')
        with open(filename, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=4, ensure_ascii=False)
        return filename

    def _table(self, rows):
        labeled = any('purity' in row for row in rows)
        metric_keys = ['purity', 'nmi', 'ari'] if labeled else ['modularity', 'ncut']
        header = ['資料集', '設定'] + metric_keys + ['#coms', '#iters', '減少 (%)']
        lines = ['| ' + ' | '.join(header) + ' |', '|' + '---|' * len(header)]
        for row in rows:
            cells = [row['dataset'], row['setting']]
            cells += [f"{row[k]:.3f}" if k in row else '-' for k in metric_keys]
            cells.append(str(row.get('communities', '-')))
            cells.append(str(row['iterations']) + ('' if row['converged'] else ' (未收斂)'))
            cells.append(f"{row['iteration_reduction']:.2f}" if 'iteration_reduction' in row else '-')
            lines.append('| ' + ' | '.join(cells) + ' |')
        return '\n'.join(lines)

    def update_report(self, rows, data_path):
        """更新實驗報告，並把 REPORT.md 轉成 REPORT.html。

        Args:
            rows (list): run_dataset 的輸出。
            data_path (str): 數據檔案路徑。

        Returns:
            str: REPORT.md 的路徑。
        """
        report_path = os.path.join(self.output_dir, "REPORT.md")
        if not os.path.exists(report_path):
            with open(report_path, 'w', encoding='utf-8') as f:
                f.write("# Attractor 社群偵測實驗報告\n\n")

        with open(report_path, 'r', encoding='utf-8') as f:
            content = f.read()

        data_name = os.path.basename(data_path)
        new_entry = f"""
## 實驗 #{self.experiment_id} - {self.date}

- **執行時間**: {datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")}

{self._table(rows)}

數據檔案: [{data_name}](./{data_name})

---
"""
        content += new_entry
        with open(report_path, 'w', encoding='utf-8') as f:
            f.write(content)

        html = markdown.markdown(content, extensions=['tables'])
        with open(os.path.join(self.output_dir, "REPORT.html"), 'w', encoding='utf-8') as f:
            f.write(html)
        return report_path
