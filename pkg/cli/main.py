#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
IntentMarketLab 命令行入口
"""

import click
import json
import logging
import sys
from logging.handlers import RotatingFileHandler

import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
from config import Config
from distributions.errors import IntentMarketError
from cli.experiment_runner import ConfigValidationError, ExperimentConfig, ExperimentRunner, list_experiments

EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3

logger = logging.getLogger(__name__)


def log_handlers():
    """按 LOG_CONFIG 构造日志 handler：按大小轮转的 UTF-8 文件 + 标准输出"""
    log_config = Config.LOG_CONFIG
    return [
        RotatingFileHandler(log_config['file'], maxBytes=log_config['max_bytes'],
                            backupCount=log_config['backup_count'], encoding='utf-8'),
        logging.StreamHandler(sys.stdout)
    ]


def setup_logging():
    """按 LOG_CONFIG 配置日志"""
    logging.basicConfig(
        level=getattr(logging, Config.LOG_CONFIG['level']),
        format=Config.LOG_CONFIG['format'],
        handlers=log_handlers()
    )


def _error_record(kind: str, messages, exit_code: int):
    """机器可读的错误记录，写到标准错误"""
    record = {'error': kind, 'messages': list(messages), 'exit_code': exit_code}
    click.echo(json.dumps(record, ensure_ascii=False), err=True)


@click.command()
@click.option('--config', 'config_path', type=click.Path(dir_okay=False), help='实验配置 JSON 文件')
@click.option('--out', 'output', type=click.Path(file_okay=False), help='输出目录（覆盖配置中的 output）')
@click.option('--seed', type=int, help='随机种子（覆盖配置中的 seed）')
@click.option('--list', 'list_only', is_flag=True, help='列出全部实验')
def cli(config_path, output, seed, list_only):
    """IntentMarketLab - 意图市场求解者竞争的数值实验"""
    if list_only:
        click.echo(list_experiments())
        return
    if config_path is None:
        raise click.UsageError("需要 --config 或 --list")

    setup_logging()
    try:
        config = ExperimentConfig.load(config_path, output=output, seed=seed)
    except ConfigValidationError as e:
        logger.error(f"配置校验失败: {str(e)}")
        click.echo(f"❌ 配置校验失败: {len(e.errors)} 处错误")
        _error_record('config', e.errors, EXIT_CONFIG_ERROR)
        sys.exit(EXIT_CONFIG_ERROR)

    try:
        written = ExperimentRunner(config, show_progress=True).run()
    except IntentMarketError as e:
        logger.error(f"实验 {config.experiment} 数值失败: {str(e)}")
        click.echo(f"❌ 实验 {config.experiment} 失败: {str(e)}")
        _error_record('numerical', [str(e)], EXIT_NUMERICAL_FAILURE)
        sys.exit(EXIT_NUMERICAL_FAILURE)
    except Exception as e:
        logger.error(f"实验 {config.experiment} 异常: {str(e)}")
        click.echo(f"❌ 实验 {config.experiment} 异常: {str(e)}")
        _error_record('internal', [str(e)], 1)
        sys.exit(1)

    click.echo(f"✅ 实验 {config.experiment} 完成，{len(written)} 个文件写入 {config.output}")


if __name__ == '__main__':
    cli()
