"""运行目录中的产物写出

所有文件都经由同一个 ResultWriter 写出并登记到清单中。CSV 采用 RFC 4180 风格（CRLF 行尾），
浮点数保留 17 位有效数字，精确有理数写成 "num/den"，ExactScalar 写成规范字符串。
"""

import csv
import io
import json
import logging
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence

from ..core.manifest import RunManifest
from ..exact import ExactScalar, format_fraction

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, ExactScalar):
        return value.canonical()
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            raise ValueError(f"行宽 {len(row)} 与表头 {len(header)} 不一致")
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def make_run_id(subcommand: str, fingerprint: str, now: Optional[datetime] = None) -> str:
    """{子命令}_{UTC 时间戳}_{配置指纹}"""
    now = now or datetime.now(timezone.utc)
    return f"{subcommand}_{now.strftime('%Y%m%dT%H%M%S%fZ')}_{fingerprint}"


class ResultWriter:
    """单次运行的写出器，负责 <outdir>/<run_id>/ 下的全部文件"""

    def __init__(self, manifest: RunManifest, root: Path):
        self.manifest = manifest
        self.run_dir = Path(root) / manifest.run_id
        self.run_dir.mkdir(parents=True, exist_ok=True)

    def _register(self, name: str, content: str) -> Path:
        path = self.run_dir / name
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(content)
        self.manifest.add_artifact(name)
        logger.info("写出 %s", path)
        return path

    def write_csv(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        return self._register(name, render_csv(header, rows))

    def write_text(self, name: str, content: str) -> Path:
        return self._register(name, content)

    def write_manifest(self) -> Path:
        """最后写出清单；清单自身也列在产物中"""
        self.manifest.add_artifact(MANIFEST_NAME)
        path = self.run_dir / MANIFEST_NAME
        payload = json.dumps(self.manifest.to_dict(), indent=2, ensure_ascii=False, sort_keys=True)
        path.write_text(payload + "\n", encoding="utf-8")
        logger.info("写出清单 %s", path)
        return path


def gnuplot_script(csv_name: str, x_column: int, y_column: int, title: str, xlabel: str, ylabel: str) -> str:
    """外部绘图工具读取 CSV 的脚本"""
    return "\n".join([
        "set datafile separator ','",
        "set key off",
        f"set title '{title}'",
        f"set xlabel '{xlabel}'",
        f"set ylabel '{ylabel}'",
        "set terminal pngcairo size 800,600",
        f"set output '{Path(csv_name).stem}.png'",
        f"plot '{csv_name}' every ::1 using {x_column}:{y_column} with linespoints pt 7",
        "",
    ])
