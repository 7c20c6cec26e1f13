# pylint: disable = missing-function-docstring, redefined-outer-name
"""Conftest for the hub stability tests: worked example graphs and data files"""
import pathlib
import shutil
from typing import Dict, List, Optional, Tuple

from faker import Faker
from pytest import fixture

from src.cli.document import InputDocument, parse_document
from src.graph.perturbation_graph import PerturbationGraph, monomial_graph
from src.semiring.monomial import MonomialClass, MonomialSemiring

THIS_DIR = pathlib.Path(__file__).absolute().parent
TEST_DATA_NAME = "examples_for_test"
HUB_DATA = "hub"

Exponents = Dict[Tuple[str, str], Optional[str]]

TWO_CYCLES: Exponents = {
    ("x", "y"): "3",
    ("y", "x"): "2",
    ("z", "t"): "9",
    ("t", "z"): "6",
}
NESTED_VANISHING: Exponents = {
    ("z", "x"): "1",
    ("x", "z"): "0",
    ("x", "y"): "1",
    ("y", "t"): "0",
    ("y", "x"): "2",
    ("t", "y"): "1",
}
UNIQUE_STABLE: Exponents = {
    ("x", "y"): "1",
    ("y", "x"): "2",
    ("z", "y"): "0",
}
TRANSIENT_PATHS: Exponents = {
    ("a", "x"): "0",
    ("b", "y"): "0",
    ("c", "z"): "0",
    ("c", "b"): "0",
    ("a", "b"): "0",
    ("b", "a"): "0",
    ("x", "y"): "2",
    ("z", "x"): "1",
    ("x", "a"): "1",
    ("z", "c"): "4",
    ("y", "c"): "2",
}


@fixture
def semiring() -> MonomialSemiring:
    return MonomialSemiring()


@fixture
def two_cycles() -> PerturbationGraph[MonomialClass]:
    return monomial_graph(["x", "y", "z", "t"], TWO_CYCLES)


@fixture
def nested_vanishing() -> PerturbationGraph[MonomialClass]:
    return monomial_graph(["x", "y", "z", "t"], NESTED_VANISHING)


@fixture
def unique_stable() -> PerturbationGraph[MonomialClass]:
    return monomial_graph(["x", "y", "z"], UNIQUE_STABLE)


@fixture
def transient_paths() -> PerturbationGraph[MonomialClass]:
    return monomial_graph(["x", "y", "z", "a", "b", "c"], TRANSIENT_PATHS)


@fixture
def transient_paths_shrunk() -> PerturbationGraph[MonomialClass]:
    return monomial_graph(
        ["x", "y", "z"],
        {
            ("x", "y"): "1",
            ("z", "x"): "1",
            ("y", "x"): "2",
            ("z", "y"): "4",
            ("y", "z"): "2",
        },
    )


@fixture
def single_state() -> PerturbationGraph[MonomialClass]:
    return monomial_graph(["only"], {})


@fixture
def state_names() -> List[str]:
    fake = Faker()
    return [fake.unique.word() for _ in range(6)]


# pytest's default tmpdir returns a py.path object
@fixture
def tmpdir(tmpdir: pathlib.Path) -> pathlib.Path:
    return pathlib.Path(tmpdir)


@fixture
def test_data_dir(tmpdir: pathlib.Path) -> pathlib.Path:
    d = tmpdir / TEST_DATA_NAME
    shutil.copytree(THIS_DIR / TEST_DATA_NAME, d)
    return d


@fixture
def test_hub_data(test_data_dir: pathlib.Path) -> pathlib.Path:
    return test_data_dir / HUB_DATA


@fixture
def test_log_file(tmpdir: pathlib.Path) -> pathlib.Path:
    d = tmpdir / "logfile.txt"
    return d


@fixture
def test_output_dir(tmpdir: pathlib.Path) -> pathlib.Path:
    d = tmpdir / "output"
    d.mkdir(parents=True)
    return d


@fixture
def nested_vanishing_document(test_hub_data: pathlib.Path) -> InputDocument:
    return parse_document((test_hub_data / "nested_vanishing.json").read_bytes())
