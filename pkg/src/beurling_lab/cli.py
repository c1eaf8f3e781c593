"""命令行入口

    beurling-lab <subcommand> [--config FILE] [--out DIR] [--seed INT] [key=value ...]

退出码：0 全部结论通过，1 至少一条结论失败，2 配置无效。
"""

import logging
from typing import List, Optional, Sequence

import click

from .core.config import OUTPUT_DIR_ENV, LabConfig
from .core.exceptions import CheckFailure, ConfigException, DomainError, LabException
from .core.manifest import RunManifest
from .experiments.config import SUBCOMMANDS, load_run_config
from .experiments.registry import global_registry
from .experiments.suite import ExperimentSuite

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2


def configure_logging(lab: LabConfig) -> None:
    level = logging.DEBUG if lab.debug else getattr(logging, lab.log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def check_manifests(manifests: Sequence[RunManifest]) -> None:
    """任一清单含失败结论时抛出 CheckFailure"""
    failed = [m for m in manifests if not m.passed]
    if failed:
        names = ", ".join(f"{m.subcommand}({len(m.failures())})" for m in failed)
        raise CheckFailure(f"未通过的实验: {names}")


def run_subcommand(
    subcommand: str,
    config_file: Optional[str] = None,
    out: Optional[str] = None,
    seed: Optional[int] = None,
    assignments: Sequence[str] = (),
) -> int:
    """执行一个子命令并返回退出码"""
    lab = LabConfig.from_env()
    configure_logging(lab)
    try:
        config = load_run_config(subcommand, config_file, assignments, out, seed, lab)
        if subcommand == "all":
            manifests: List[RunManifest] = ExperimentSuite.everything().execute(config)
        else:
            manifests = [global_registry.require(subcommand).execute(config)]
    except (ConfigException, DomainError) as exc:
        click.echo(f"配置错误: {exc}", err=True)
        return EXIT_CONFIG
    except LabException as exc:
        logger.error("实验 %s 中止: %s", subcommand, exc)
        return EXIT_CHECK_FAILED

    for manifest in manifests:
        click.echo(f"{manifest.subcommand}: {manifest.run_id}")
        for verdict in manifest.failures():
            click.echo(f"  {verdict}")
    try:
        check_manifests(manifests)
    except CheckFailure as exc:
        click.echo(str(exc), err=True)
        return EXIT_CHECK_FAILED
    return EXIT_PASS


@click.group()
def main():
    """Beurling 变换数值实验室"""


@main.command(name="list")
def list_experiments():
    """列出已注册的实验"""
    click.echo(global_registry.describe())


def _add_subcommand(name: str, help_text: str) -> None:
    @main.command(name=name, help=help_text)
    @click.option("--config", "config_file", default=None, help="key = value 形式的配置文件")
    @click.option("--out", default=None, help=f"输出根目录（默认读取 ${OUTPUT_DIR_ENV}，否则 ./runs）")
    @click.option("--seed", type=int, default=None, help="随机种子")
    @click.argument("assignments", nargs=-1)
    @click.pass_context
    def command(ctx: click.Context, config_file, out, seed, assignments):
        ctx.exit(run_subcommand(name, config_file, out, seed, assignments))


for _name in SUBCOMMANDS:
    if _name == "all":
        _add_subcommand(_name, "按顺序执行全部实验")
    else:
        _experiment = global_registry.require(_name)
        _add_subcommand(_name, _experiment.description)


if __name__ == "__main__":
    main()
