#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
结果绘图脚本
读取实验输出目录中的 CSV，绘制比值曲线、进入规模与努力收入图
"""

import argparse
import logging
import os
from typing import Dict

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns

# 设置matplotlib中文字体
plt.rcParams['font.sans-serif'] = ['SimHei', 'Arial Unicode MS', 'DejaVu Sans']
plt.rcParams['axes.unicode_minus'] = False

logger = logging.getLogger(__name__)


def plot_ratio_curve(df: pd.DataFrame, label: str):
    """收入/最高价比值随 n 的变化（对数横轴，均值带 ±2 标准误）"""
    fig, ax = plt.subplots(figsize=(10, 6))
    ax.errorbar(df['n'], df['mean_ratio'], yerr=2 * df['se'], marker='o', linewidth=2,
                capsize=4, label='均值比')
    ax.plot(df['n'], df['median_ratio'], marker='s', linestyle='--', label='中位数比')
    ax.set_xscale('log')
    ax.set_ylim(0, 1.05)
    ax.set_title(f'{label} - 第二高价/最高价')
    ax.set_xlabel('求解者数量 n')
    ax.set_ylabel('比值')
    ax.grid(True, alpha=0.3)
    ax.legend()
    return fig


def plot_entry_scaling(df: pd.DataFrame):
    """k* 随 n 的 log-log 曲线"""
    data = df[df['status'].isin(['ok', 'unbounded'])]
    fig, ax = plt.subplots(figsize=(10, 6))
    sns.lineplot(data=data, x='n', y='k_star', hue='family', marker='o', ax=ax)
    ax.set_xscale('log')
    ax.set_yscale('log')
    ax.set_title('期望进入者数量 k*')
    ax.set_xlabel('潜在求解者数量 n')
    ax.set_ylabel('k*')
    ax.grid(True, alpha=0.3, which='both')
    return fig


def plot_effort_welfare(df: pd.DataFrame):
    """各拥堵类型下 e*k 与收入随 k 的变化"""
    fig, axes = plt.subplots(1, 2, figsize=(14, 6))
    sns.lineplot(data=df, x='k', y='effort_times_k', hue='regime', marker='o', ax=axes[0])
    axes[0].set_title('总努力 e*k')
    axes[0].set_xscale('log', base=2)
    sns.lineplot(data=df, x='k', y='revenue', hue='regime', marker='o', ax=axes[1])
    axes[1].set_title('用户期望收入')
    axes[1].set_xscale('log', base=2)
    for ax in axes:
        ax.set_xlabel('进入者数量 k')
        ax.grid(True, alpha=0.3)
    return fig


def plot_dutch_auction(df: pd.DataFrame):
    """荷兰式拍卖福利与暴力网格福利的对照"""
    data = df[df['status'] == 'ok']
    fig, ax = plt.subplots(figsize=(8, 8))
    ax.scatter(data['oracle_welfare'], data['welfare'], alpha=0.8)
    finite = data[['oracle_welfare', 'welfare']].to_numpy(dtype=float)
    finite = finite[np.isfinite(finite).all(axis=1)]
    if len(finite):
        low, high = finite.min(), finite.max()
        ax.plot([low, high], [low, high], color='r', linestyle='--', alpha=0.7)
    ax.set_title('拍卖福利 vs 网格福利')
    ax.set_xlabel('网格最优福利')
    ax.set_ylabel('拍卖福利')
    ax.grid(True, alpha=0.3)
    return fig


def create_plots(result_dir: str) -> Dict[str, plt.Figure]:
    """按目录中存在的 CSV 生成图表"""
    plots = {}
    builders = [
        ('figure2.csv', 'figure2', lambda df: plot_ratio_curve(df, '广义Pareto')),
        ('figure2_standard_pareto.csv', 'figure2_standard_pareto', lambda df: plot_ratio_curve(df, '标准Pareto')),
        ('entry_scaling.csv', 'entry_scaling', plot_entry_scaling),
        ('effort_welfare.csv', 'effort_welfare', plot_effort_welfare),
        ('dutch_auction.csv', 'dutch_auction', plot_dutch_auction),
    ]
    for filename, name, builder in builders:
        path = os.path.join(result_dir, filename)
        if not os.path.exists(path):
            continue
        try:
            plots[name] = builder(pd.read_csv(path))
        except Exception as e:
            logger.error(f"绘制 {name} 失败: {str(e)}")
    return plots


def save_plots(plots: Dict[str, plt.Figure], output_dir: str) -> Dict[str, str]:
    """保存图表为 PNG"""
    os.makedirs(output_dir, exist_ok=True)
    saved = {}
    for name, fig in plots.items():
        path = os.path.join(output_dir, f'{name}.png')
        fig.savefig(path, dpi=300, bbox_inches='tight')
        plt.close(fig)
        saved[name] = path
        logger.info(f"保存图表: {path}")
    return saved


def main():
    """主函数"""
    parser = argparse.ArgumentParser(description='绘制实验结果')
    parser.add_argument('result_dirs', nargs='+', help='实验输出目录')
    parser.add_argument('--output-dir', default=None, help='图表输出目录，缺省为各实验目录')
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    sns.set_theme(style='whitegrid', rc={'font.sans-serif': plt.rcParams['font.sans-serif'],
                                        'axes.unicode_minus': False})

    total = 0
    for result_dir in args.result_dirs:
        saved = save_plots(create_plots(result_dir), args.output_dir or result_dir)
        total += len(saved)
    print(f"✅ 共保存 {total} 张图表")


if __name__ == '__main__':
    main()
