"""End-to-end checks of the driftmit executable.

Usage: cli_cases.py <driftmit binary> <case> <scratch dir>
"""

import filecmp
import json
import pathlib
import shutil
import subprocess
import sys


def run(binary, *args, expect):
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        sys.stdout.write(proc.stdout)
        sys.stderr.write(proc.stderr)
        raise AssertionError(f"{' '.join(args)}: exit {proc.returncode}, expected {expect}")
    return proc


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


SMALL = {
    "num_qubits": 2,
    "initial_state": "11",
    "readout": {"model": "symmetric", "epsilon": [0.03, 0.05]},
    "decay": {"gamma_down": 0.01},
    "plan": {"scheme": "weighted", "j_max": 2},
    "drift": {"ramp": {"epsilon": [0.03, 0.08]}},
    "run": {"n_shots": 20000, "seed": 11},
}


def case_exit_codes(binary, scratch):
    run(binary, "--help", expect=0)
    run(binary, "simulate", expect=2)
    run(binary, "simulate", "--bogus-flag", expect=2)
    run(binary, "simulate", "--preset", "no-such-preset", expect=2)
    run(binary, "simulate", "--preset", "table1", "--threads", "0", expect=2)
    run(binary, "simulate", "--preset", "table1", "--format", "xml", expect=2)
    bad = dict(SMALL, plan={"scheme": "weighted", "jmax": 2})
    proc = run(binary, "simulate", "--config", write_json(scratch / "bad.json", bad), expect=2)
    assert "config.plan.jmax" in proc.stderr, proc.stderr
    (scratch / "broken.json").write_text("{ not json")
    run(binary, "oracle", "--config", str(scratch / "broken.json"), expect=2)
    no_drift = {k: v for k, v in SMALL.items() if k != "drift"}
    run(binary, "drift", "--config", write_json(scratch / "nodrift.json", no_drift), "--out", str(scratch), expect=2)
    # Corrupt records are a runtime failure, not a schema failure.
    (scratch / "corrupt.jsonl").write_text('{"header": 1}\n{"shot": "x"}\n')
    run(binary, "mitigate", "--preset", "table1", "--records", str(scratch / "corrupt.jsonl"),
        "--out", str(scratch / "o"), expect=3)
    # Oracle limits are runtime failures too.
    run(binary, "oracle", "--preset", "fez20-desk", "--out", str(scratch / "o"), expect=3)
    # A failed expectation exits with 4.
    small = write_json(scratch / "small.json", SMALL)
    failing = write_json(scratch / "failing.json", {"checks": [{"path": "/mitigate/estimates/0/value", "min": 2.0}]})
    proc = run(binary, "report", "--config", small, "--expected", failing, "--out", str(scratch / "r"), expect=4)
    assert "FAIL /mitigate/estimates/0/value" in proc.stdout, proc.stdout
    passing = write_json(scratch / "passing.json", {"checks": [{"path": "/mitigate/estimates/0/value", "min": 0.5}]})
    run(binary, "report", "--config", small, "--expected", passing, "--out", str(scratch / "r"), expect=0)


def case_headers(binary, scratch):
    small = write_json(scratch / "small.json", SMALL)
    out = scratch / "h"
    for cmd in ("simulate", "mitigate", "oracle", "diagnose", "drift"):
        run(binary, cmd, "--config", small, "--seed", "99", "--out", str(out), expect=0)
    version = run(binary, "--version", expect=0).stdout.strip()
    hashes = set()
    for name in ("simulate", "mitigate", "oracle", "diagnose", "drift"):
        doc = json.loads((out / f"{name}.json").read_text())
        assert doc["command"] == name
        assert doc["seed"] == 99 and doc["config"]["run"]["seed"] == 99
        assert doc["version"] == version, (doc["version"], version)
        hashes.add(doc["config_hash"])
    assert len(hashes) == 1, hashes
    for csv in ("mitigate.csv", "curves.csv", "drift.csv"):
        meta = json.loads((out / csv).read_text().splitlines()[0][2:])
        assert meta["config_hash"] in hashes and meta["seed"] == 99
    first = (out / "records.jsonl").read_text().splitlines()[0]
    assert json.loads(first)["config_hash"] in hashes, first
    leftovers = [p.name for p in out.iterdir() if ".tmp." in p.name]
    assert not leftovers, leftovers


def case_threads(binary, scratch):
    small = write_json(scratch / "small.json", SMALL)
    for fmt in ("jsonl", "bin", "csv"):
        dirs = []
        for threads in ("1", "4", "16"):
            out = scratch / f"t{threads}-{fmt}"
            shutil.rmtree(out, ignore_errors=True)
            for cmd in ("simulate", "mitigate", "diagnose", "drift"):
                run(binary, cmd, "--config", small, "--threads", threads, "--format", fmt, "--out", str(out),
                    expect=0)
            dirs.append(out)
        names = sorted(p.name for p in dirs[0].iterdir())
        for other in dirs[1:]:
            assert names == sorted(p.name for p in other.iterdir())
            match, mismatch, errors = filecmp.cmpfiles(dirs[0], other, names, shallow=False)
            assert not mismatch and not errors, (fmt, other.name, mismatch, errors)


def case_round_trip(binary, scratch):
    small = write_json(scratch / "small.json", SMALL)
    for fmt in ("jsonl", "bin"):
        direct, via = scratch / f"direct-{fmt}", scratch / f"via-{fmt}"
        run(binary, "mitigate", "--config", small, "--format", fmt, "--out", str(direct), expect=0)
        run(binary, "diagnose", "--config", small, "--format", fmt, "--out", str(direct), expect=0)
        run(binary, "simulate", "--config", small, "--format", fmt, "--out", str(via), expect=0)
        records = str(via / f"records.{fmt}")
        run(binary, "mitigate", "--config", small, "--format", fmt, "--records", records, "--out", str(via), expect=0)
        run(binary, "diagnose", "--config", small, "--format", fmt, "--records", records, "--out", str(via), expect=0)
        for name in ("mitigate.json", "mitigate.csv", "diagnose.json", "curves.csv"):
            assert filecmp.cmp(direct / name, via / name, shallow=False), (fmt, name)
    # Records from a different seed are accepted but their provenance is reported.
    run(binary, "simulate", "--config", small, "--seed", "12", "--out", str(scratch / "s12"), expect=0)
    run(binary, "mitigate", "--config", small, "--records", str(scratch / "s12" / "records.jsonl"),
        "--out", str(scratch / "m12"), expect=0)
    doc = json.loads((scratch / "m12" / "mitigate.json").read_text())
    assert doc["records_seed"] == 12 and doc["seed"] == 11, doc


def case_list_presets(binary, scratch):
    names = run(binary, "--list-presets", expect=0).stdout.split()
    assert names == ["drift-ramp", "fez20-desk", "majority-bias", "reset-h1-desk", "table1", "table2"], names


def main():
    binary, case, scratch = sys.argv[1], sys.argv[2], pathlib.Path(sys.argv[3])
    shutil.rmtree(scratch, ignore_errors=True)
    scratch.mkdir(parents=True)
    globals()["case_" + case](binary, scratch)
    print(case, "ok")


if __name__ == "__main__":
    main()
