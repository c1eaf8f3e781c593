"""运行配置、产物写出、并行求值与命令行"""

import json
from datetime import datetime, timezone
from fractions import Fraction

import pytest
from click.testing import CliRunner

from beurling_lab import cli
from beurling_lab.core.exceptions import CheckFailure, ConfigException
from beurling_lab.core.manifest import RunManifest
from beurling_lab.exact import center_value
from beurling_lab.experiments import (
    SUBCOMMANDS,
    Experiment,
    ExperimentRegistry,
    ExperimentSuite,
    ParallelEvaluator,
    RunConfig,
    format_cell,
    global_registry,
    load_run_config,
    make_run_id,
    parse_assignments,
    render_csv,
)

FIXED_TIME = datetime(2024, 3, 1, 12, 30, 45, 123456, tzinfo=timezone.utc)


class StubExperiment(Experiment):
    """写一个小 CSV 并给出固定结论的实验"""

    def __init__(self, name: str, passed: bool = True, verdicts: bool = True):
        super().__init__(name, "测试用实验")
        self.passed = passed
        self.verdicts = verdicts

    def get_parameters(self):
        return [self.parameter("seed")]

    def run(self, config, writer):
        writer.write_csv("stub.csv", ["seed", "value"], [[config.seed, 0.1]])
        if self.verdicts:
            writer.manifest.add_verdict("stub", True, self.passed, self.passed)


# ==================== 配置 ====================

def test_parse_assignments():
    values = parse_assignments(["# 注释", "", "abs-tol = 1e-9  # 行尾注释", "alphas=8,16"], "test")
    assert values == {"abs_tol": "1e-9", "alphas": "8,16"}
    with pytest.raises(ConfigException):
        parse_assignments(["alphas 8"], "test")


def test_load_run_config_precedence(tmp_path, run_root):
    config_file = tmp_path / "run.cfg"
    config_file.write_text("alphas = 8, 16\nabs_tol = 1e-7\nseed = 3\n", encoding="utf-8")
    config = load_run_config(
        "counterexample", config_file, ["abs_tol=1e-9"], output_dir=str(run_root), seed=11
    )
    assert config.alphas == [8.0, 16.0]
    assert config.abs_tol == 1e-9
    assert config.seed == 11
    assert config.output_dir == str(run_root)
    assert config.quadrature().abs_tol == 1e-9


@pytest.mark.parametrize(
    "overrides",
    [["no_such_key=1"], ["grid_n=100"], ["alphas=1,8"], ["alphas="], ["abs_tol=-1"]],
)
def test_invalid_config_raises(overrides, run_root):
    with pytest.raises(ConfigException):
        load_run_config("counterexample", overrides=overrides, output_dir=str(run_root))


def test_unknown_subcommand_rejected(run_root):
    with pytest.raises(ConfigException):
        load_run_config("frobnicate", output_dir=str(run_root))


def test_fingerprint_ignores_output_dir():
    first = RunConfig(subcommand="lemma", output_dir="a")
    second = RunConfig(subcommand="lemma", output_dir="b")
    third = RunConfig(subcommand="lemma", seed=1)
    assert "output_dir" not in first.echo()
    assert first.fingerprint() == second.fingerprint()
    assert first.fingerprint() != third.fingerprint()
    assert len(first.fingerprint()) == 8


# ==================== 写出 ====================

def test_format_cell():
    assert format_cell(True) == "true"
    assert format_cell(Fraction(-2, 3)) == "-2/3"
    assert format_cell(center_value(2)) == "1/1 + 0/1*pi + -4/1/pi"
    assert format_cell(7) == "7"
    assert format_cell(0.1) == "0.10000000000000001"
    assert format_cell(None) == ""


def test_render_csv():
    text = render_csv(["a", "b"], [[1, "x,y"]])
    assert text == 'a,b\r\n1,"x,y"\r\n'
    with pytest.raises(ValueError):
        render_csv(["a", "b"], [[1]])


def test_make_run_id():
    assert make_run_id("lemma", "abcd1234", FIXED_TIME) == "lemma_20240301T123045123456Z_abcd1234"


def test_execute_writes_manifest(run_root):
    config = RunConfig(subcommand="identities", output_dir=str(run_root), seed=4)
    manifest = StubExperiment("stub").execute(config, now=FIXED_TIME)
    run_dir = run_root / manifest.run_id
    assert manifest.passed
    assert (run_dir / "stub.csv").read_bytes() == b"seed,value\r\n4,0.10000000000000001\r\n"
    stored = json.loads((run_dir / "manifest.json").read_text(encoding="utf-8"))
    assert stored["artifacts"] == ["stub.csv", "manifest.json"]
    assert stored["config"]["seed"] == 4
    assert "output_dir" not in stored["config"]
    assert stored["summary"] == {"total": 1, "failed": 0}


def test_execute_without_verdicts_fails(run_root):
    config = RunConfig(subcommand="identities", output_dir=str(run_root))
    manifest = StubExperiment("stub", verdicts=False).execute(config)
    assert not manifest.passed
    assert manifest.failures()[0].name == "stub_produced_verdicts"


# ==================== 并行求值 ====================

@pytest.mark.asyncio
async def test_map_async_sorts_by_key():
    with ParallelEvaluator(max_workers=3) as evaluator:
        outcomes = await evaluator.map_async(lambda k: k * k, [5, 1, 4, 2, 3])
    assert [o.key for o in outcomes] == [1, 2, 3, 4, 5]
    assert [o.value for o in outcomes] == [1, 4, 9, 16, 25]
    assert all(o.status == "success" for o in outcomes)


def test_values_raises_smallest_failing_key():
    def func(k):
        if k >= 3:
            raise ValueError(f"bad {k}")
        return k

    with ParallelEvaluator(max_workers=2) as evaluator:
        outcomes = evaluator.map(func, [4, 3, 1])
        assert [o.status for o in outcomes] == ["success", "error", "error"]
        with pytest.raises(ValueError, match="bad 3"):
            evaluator.values(func, [4, 3, 1])


# ==================== 注册表与套件 ====================

def test_builtin_registry_order():
    assert global_registry.list_experiments() == [s for s in SUBCOMMANDS if s != "all"]
    for name in global_registry.list_experiments():
        described = global_registry.require(name).to_dict()
        assert described["parameters"]
    with pytest.raises(ConfigException):
        global_registry.require("nope")


def test_registry_register_and_unregister():
    registry = ExperimentRegistry()
    registry.register(StubExperiment("first"))
    assert "first" in registry and len(registry) == 1
    assert registry.get("missing") is None
    assert registry.unregister("first")
    assert not registry.unregister("first")
    assert registry.describe() == "暂无已注册的实验"


def test_suite_collects_all_manifests(run_root):
    registry = ExperimentRegistry()
    registry.register(StubExperiment("first"))
    registry.register(StubExperiment("second", passed=False))
    manifests = ExperimentSuite.everything(registry).execute(
        RunConfig(subcommand="all", output_dir=str(run_root))
    )
    assert [m.subcommand for m in manifests] == ["first", "second"]
    assert [m.passed for m in manifests] == [True, False]
    with pytest.raises(CheckFailure):
        cli.check_manifests(manifests)


# ==================== 命令行 ====================

def test_cli_identities_passes_and_is_deterministic(tmp_path, run_root):
    runner = CliRunner()
    outputs = []
    for name in ("a", "b"):
        out = tmp_path / name
        result = runner.invoke(cli.main, ["identities", "--out", str(out), "identity_js=1,2,3"])
        assert result.exit_code == 0, result.output
        (run_dir,) = list(out.iterdir())
        manifest = json.loads((run_dir / "manifest.json").read_text(encoding="utf-8"))
        assert all(v["passed"] for v in manifest["verdicts"])
        assert "identities.csv" in manifest["artifacts"]
        outputs.append((run_dir / "identities.csv").read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith(b"j,S_num,S_den,")


def test_cli_config_error_exit_code(tmp_path, run_root):
    result = CliRunner().invoke(cli.main, ["lemma", "--out", str(tmp_path), "grid_n=100"])
    assert result.exit_code == 2

    missing = CliRunner().invoke(cli.main, ["lemma", "--config", str(tmp_path / "missing.cfg")])
    assert missing.exit_code == 2


def test_cli_failed_verdict_exit_code(tmp_path, run_root, monkeypatch):
    registry = ExperimentRegistry()
    registry.register(StubExperiment("identities", passed=False))
    monkeypatch.setattr(cli, "global_registry", registry)
    result = CliRunner().invoke(cli.main, ["identities", "--out", str(tmp_path)])
    assert result.exit_code == 1


def test_cli_output_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("BEURLING_LAB_OUT", str(tmp_path / "env"))
    registry = ExperimentRegistry()
    registry.register(StubExperiment("identities"))
    monkeypatch.setattr(cli, "global_registry", registry)
    result = CliRunner().invoke(cli.main, ["identities"])
    assert result.exit_code == 0
    assert len(list((tmp_path / "env").iterdir())) == 1


def test_cli_list():
    result = CliRunner().invoke(cli.main, ["list"])
    assert result.exit_code == 0
    assert "theorem-b" in result.output


@pytest.mark.slow
@pytest.mark.parametrize(
    "args",
    [
        ["lemma", "orders=1,2,3"],
        ["spectral-validate", "export_fields=true"],
    ],
)
def test_cli_numeric_experiments_pass(tmp_path, run_root, args):
    result = CliRunner().invoke(cli.main, [args[0], "--out", str(tmp_path), *args[1:]])
    assert result.exit_code == 0, result.output
    (run_dir,) = list(tmp_path.iterdir())
    manifest = RunManifest.model_validate_json((run_dir / "manifest.json").read_text(encoding="utf-8"))
    assert manifest.passed
    for name in manifest.artifacts:
        assert (run_dir / name).is_file()
