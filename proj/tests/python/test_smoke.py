import os
import pathlib

import pytest

import hypermon

ROOT = pathlib.Path(__file__).resolve().parents[2]
PROGRAMS = pathlib.Path(os.environ.get("HYPERMON_PROGRAMS_DIR", ROOT / "programs"))
TRACES = pathlib.Path(os.environ.get("HYPERMON_TRACES_DIR", ROOT / "data" / "traces"))

PROJECTION = """class F {
  //@ domain x in [0, 3];
  //@ domain y in [0, 4];
  int f(int x, int y) { return x; }
}"""


def read_rows(name):
    rows = []
    for line in (TRACES / name).read_text().splitlines():
        if line.strip():
            values = [int(v) for v in line.split(",")]
            rows.append((values[:-1], values[-1]))
    return rows


@pytest.fixture(scope="module")
def toll():
    return hypermon.load_program(str(PROGRAMS / "Toll.ml"))


def test_program_evaluates(toll):
    assert {"rate", "fee"} <= set(toll.methods)
    assert toll.evaluate("rate", [10, 1]) == 90
    assert toll.evaluate("fee", [20, 22, 1, 1]) == 770


def test_parse_error_is_raised():
    with pytest.raises(hypermon.ParseError):
        hypermon.parse_program("class { int f( }")


def test_characterization_is_exact(toll):
    c = hypermon.symexec(toll, "rate")
    assert c.exact
    assert c.path_count == 4
    assert c.validate(toll, samples=500)["ok"]


def test_oracle_separates_and_collapses(toll):
    oracle = hypermon.Oracle(toll, "rate", backend="symbolic")
    assert oracle.query(1, 10, 20) == "TOP"
    assert oracle.query(1, 10, 11) == "BOTTOM"
    assert oracle.query(1, 5, 5) == "UNKNOWN"


def test_raw_toll_traces_violate_ddm(toll):
    monitor = hypermon.Monitor(toll, "fee", property="ddm", strategy="eager", backend="brute")
    verdicts = [monitor.ingest(inputs, output, line)["verdict"]
                for line, (inputs, output) in enumerate(read_rows("toll_raw.csv"), start=1)]
    assert verdicts[0] == "UNKNOWN"
    assert verdicts[1] == "BOTTOM"
    assert monitor.witness["position"] == 1
    assert (monitor.witness["x"], monitor.witness["y"]) == ((20,), (2,))


def test_strategy_matrix_for_projection():
    program = hypermon.parse_program(PROJECTION)
    expected = {("ddm", "eager"): "BOTTOM", ("ddm", "lazy"): "UNKNOWN",
                ("mdm", "eager"): "BOTTOM", ("mdm", "lazy"): "UNKNOWN"}
    for (prop, strat), verdict in expected.items():
        monitor = hypermon.Monitor(program, "f", property=prop, strategy=strat)
        monitor.ingest([1, 2], 1)
        monitor.ingest([3, 4], 3)
        assert monitor.verdict == verdict, (prop, strat)


def test_strict_mode_rejects_inconsistent_trace():
    program = hypermon.parse_program(PROJECTION)
    monitor = hypermon.Monitor(program, "f", strict=True)
    with pytest.raises(hypermon.InconsistentTrace):
        monitor.ingest([1, 2], 2)


def test_finite_domain_analysis():
    program = hypermon.parse_program(PROJECTION)
    assert not hypermon.is_ddm(program, "f")
    assert hypermon.position_kernel(program, "f", 2) == [(0, 1, 2, 3, 4)]
    assert hypermon.is_ddm(program, "f", domains={"y": (0, 0)})
    traces = hypermon.gen_traces(program, "f", kind="K2", count=20, seed=3)
    assert len(traces) == 20
    assert all(inputs[1] == 0 and output == inputs[0] for inputs, output in traces)


def test_classify():
    assert hypermon.classify("a@1 <-> !a@2", ["a"])["classification"] == "NON_MONITORABLE"
    reflexive = hypermon.classify("a@1 <-> a@2", ["a"])
    assert (reflexive["classification"], reflexive["evidence"]) == ("MONITORABLE", "REFLEXIVE")
    dead_end = hypermon.classify("a@1 -> false", ["a"])
    assert dead_end["evidence"] == "NON_SERIAL"
    assert dead_end["falsifying"] == "{a}"
    with pytest.raises(hypermon.ConfigError):
        hypermon.classify("a@1", [])
