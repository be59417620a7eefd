import random

import pytest
import rapidjson

from sqfree_bn import launcher
from sqfree_bn.algebra.simplicial import build_named
from sqfree_bn.models.field import QQ, prime_field

TWO_CONNECTED = [
    "cycle:3",
    "cycle:4",
    "cycle:5",
    "cycle:6",
    "cycle:8",
    "k33",
    "petersen",
    "heawood",
    "complete:4",
    "complete:5",
    "theta:1,1,1",
    "theta:0,2,3",
    "diamond",
]

CUT_VERTEX = [
    "path:3",
    "path:4",
    "path:5",
    "path:6",
    "path:7",
    "bowtie",
    "wedge:3,4",
    "wedge:4,4",
    "wedge:4,5",
    "wedge:3,6",
]


@pytest.fixture
def k33():
    return build_named("k33")


@pytest.fixture
def petersen():
    return build_named("petersen")


@pytest.fixture
def heawood():
    return build_named("heawood")


@pytest.fixture
def c3():
    return build_named("cycle:3")


@pytest.fixture
def c4():
    return build_named("cycle:4")


@pytest.fixture
def theta():
    return build_named("theta:1,1,1")


@pytest.fixture
def diamond():
    return build_named("diamond")


@pytest.fixture
def bowtie():
    return build_named("bowtie")


@pytest.fixture
def qq():
    return QQ


@pytest.fixture
def f5():
    return prime_field(5)


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text(f"debug: false\nlog_file: {tmp_path / 'sqfree_bn.log'}\n")
    return path


@pytest.fixture
def run_cli(config_file, capsys):
    """Runs the launcher and returns (exit code, parsed stdout or raw text, stderr)"""

    def run(*argv):
        code = launcher.main(["--config", str(config_file), *argv])
        captured = capsys.readouterr()
        try:
            out = rapidjson.loads(captured.out) if captured.out.strip() else None
        except ValueError:
            out = captured.out
        return code, out, captured.err

    return run
