import json
import os
import pytest
from fairpart.cli import EXIT_LIMIT, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main
from fairpart.data.parser import read_partition, write_instance


@pytest.fixture
def run(tmpdir):
    """main() with the log kept out of the captured streams"""
    log_file = str(tmpdir.join("fairpart.log"))

    def invoke(*argv):
        return main(["--log-file", log_file] + [str(a) for a in argv])

    return invoke


@pytest.fixture
def forged_file(tmpdir, run):
    filename = str(tmpdir.join("mms2.txt"))
    assert run("forge", "mms-nonexistence", "--k", 2, "-o", filename, "--expect") == EXIT_OK
    return filename


def test_forge_writes_sidecars(forged_file):
    assert os.path.exists(forged_file + ".expect.json")
    assert os.path.exists(forged_file + ".partition")
    with open(forged_file + ".expect.json") as handle:
        document = json.load(handle)
    assert document["exists"] == {"MMS": "none", "EF1": "found"}
    assert read_partition(forged_file + ".partition", n=5).k == 2


def test_forge_to_stdout(run, capsys):
    assert run("forge", "random", "--n", 5, "--k", 2, "--family", "tree", "--seed", 3) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0].startswith("fairpart v1")
    assert "agents 5" in out


def test_forge_needs_parameters(run):
    assert run("forge", "binpacking-path", "--items", "2,3") == EXIT_USAGE


def test_check(forged_file, run, capsys, tmpdir):
    partition = forged_file + ".partition"
    assert run("check", forged_file, partition, "--notion", "EF1") == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["EF1 pass"]

    report = str(tmpdir.join("report.txt"))
    assert run("check", forged_file, partition, "--notion", "EF1,MMS", "-o", report) == EXIT_NEGATIVE
    assert capsys.readouterr().out.splitlines() == ["EF1 pass", "MMS fail"]
    with open(report) as handle:
        lines = handle.read().splitlines()
    assert len(lines) == 10
    assert lines[0].startswith("agent 0 EF1 pass")


def test_solve(forged_file, run, capsys, tmpdir):
    output = str(tmpdir.join("found.txt"))
    assert run("solve", forged_file, "--notion", "EF1", "-o", output) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "found"
    assert out[1] == "method vc"
    assert len(read_partition(output, n=5).parts) == 2

    assert run("solve", forged_file, "--notion", "MMS") == EXIT_NEGATIVE
    assert capsys.readouterr().out.splitlines() == ["none", "method vc"]

    assert run("solve", forged_file, "--notion", "EF", "--method", "forest") == EXIT_USAGE


def test_oracle(forged_file, run, capsys):
    assert run("oracle", forged_file, "--notion", "MMS") == EXIT_NEGATIVE
    assert capsys.readouterr().out.splitlines() == ["none", "method oracle"]
    assert run("oracle", forged_file, "--notion", "EF1", "--scheduler", "synchronous") == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "found"


def test_limit(forged_file, run):
    assert run("--limit", 3, "oracle", forged_file, "--notion", "EF") == EXIT_LIMIT


def test_taxonomy(run, capsys, tmpdir, path3):
    filename = str(tmpdir.join("path3.txt"))
    write_instance(path3, filename)
    csv = str(tmpdir.join("taxonomy.csv"))
    assert run("taxonomy", filename, "-o", csv) == EXIT_OK
    out = capsys.readouterr().out
    assert "EFX0" in out and "MMS" in out
    assert os.path.exists(csv)


def test_input_errors(run, tmpdir):
    missing = str(tmpdir.join("missing.txt"))
    assert run("solve", missing, "--notion", "EF") == EXIT_USAGE

    broken = tmpdir.join("broken.txt")
    broken.write("fairpart v1\nagents 2\nparts 1\nedge 0 1 0\n")
    assert run("solve", str(broken), "--notion", "EF") == EXIT_USAGE

    with pytest.raises(SystemExit) as error:
        run("solve", str(broken), "--notion", "EFY")
    assert error.value.code == 2


def test_sizes_override(run, capsys, tmpdir, path3):
    filename = str(tmpdir.join("path3.txt"))
    write_instance(path3, filename)
    assert run("solve", filename, "--notion", "EF", "--k", 3) == EXIT_OK
    assert run("solve", filename, "--notion", "EF", "--sizes", "3") == EXIT_OK
    assert run("solve", filename, "--notion", "EF") == EXIT_NEGATIVE
