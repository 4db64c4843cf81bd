import pytest
from fairpart.data.decomposition import NiceTreeDecomposition
from fairpart.data.parser import (
    parse_instance,
    parse_partition,
    read_instance,
    read_partition,
    serialize_instance,
    serialize_partition,
    write_instance,
    write_partition,
    write_report,
)
from fairpart.data.instance import Partition
from fairpart.data.serialization import dump, load
from fairpart.exceptions import InstanceError
from fairpart.fairness.audit import check_partition
from strategies import CYCLE


def test_parse_weighted_instance():
    text = "\n".join(
        [
            "# comment line",
            "fairpart v1",
            "",
            "agents 5",
            "parts 2",
            "sizes 4 1",
            "edge 0 1 3",
            "edge 1 2 2 5   # asymmetric",
        ]
    )
    instance = parse_instance(text, name="weighted")
    assert instance.n == 5 and instance.k == 2
    assert instance.sizes.sizes == (4, 1)
    assert instance.profile.weight(0, 1) == 3
    assert instance.profile.weight(1, 0) == 3
    assert instance.profile.weight(1, 2) == 2
    assert instance.profile.weight(2, 1) == 5
    assert instance.decomposition is None
    assert instance.name == "weighted"


def test_parse_decomposition():
    instance = parse_instance(CYCLE)
    decomposition = instance.decomposition
    assert isinstance(decomposition, NiceTreeDecomposition)
    assert len(decomposition) == 9
    assert decomposition.width == 2
    assert decomposition.root == 0
    order = decomposition.post_order()
    assert order[0] == 8 and order[-1] == 0


@pytest.mark.parametrize(
    "text, clause",
    [
        ("", "header"),
        ("fairpart v2\nagents 2\nparts 1\n", "header"),
        ("fairpart v1\nagents 2\n", "syntax"),
        ("fairpart v1\nagents 2\nparts 1\nedge 0 1 0\n", "zero weight on edge"),
        ("fairpart v1\nagents 2\nparts 1\nedge 0 1 1 0\n", "zero weight on edge"),
        ("fairpart v1\nagents 2\nparts 1\nedge 0 1 x\n", "syntax"),
        ("fairpart v1\nagents 2\nparts 1\nfriends 0 1\n", "syntax"),
        ("fairpart v1\nagents 2\nparts 1\nedge 0 1 1\nedge 1 0 1\n", "duplicate edge"),
        ("fairpart v1\nagents 3\nparts 2\nsizes 2 2\n", "sizes sum"),
        ("fairpart v1\nagents 2\nparts 1\ntd {\nnode 0 kind leaf parent none bag\n", "syntax"),
    ],
)
def test_malformed_instances(text, clause):
    with pytest.raises(InstanceError) as error:
        parse_instance(text)
    assert error.value.clause == clause


def test_decomposition_node_shape_is_checked():
    text = CYCLE.replace(
        "node 5 kind introduce 3 parent 4 bag 0 1 3", "node 5 kind introduce 0 parent 4 bag 0 1 3"
    )
    with pytest.raises(InstanceError) as error:
        parse_instance(text)
    assert error.value.clause == "decomposition introduce shape"


def test_decomposition_root_bag_must_be_empty():
    text = "fairpart v1\nagents 1\nparts 1\ntd {\nnode 0 kind introduce 0 parent none bag 0\nnode 1 kind leaf parent 0 bag\n}\n"
    with pytest.raises(InstanceError) as error:
        parse_instance(text)
    assert error.value.clause == "decomposition root"


def test_decomposition_edge_coverage_clause():
    lines = [
        "fairpart v1",
        "agents 2",
        "parts 1",
        "edge 0 1 1",
        "td {",
        "node 0 kind forget 1 parent none bag",
        "node 1 kind introduce 1 parent 0 bag 1",
        "node 2 kind forget 0 parent 1 bag",
        "node 3 kind introduce 0 parent 2 bag 0",
        "node 4 kind leaf parent 3 bag",
        "}",
    ]
    with pytest.raises(InstanceError) as error:
        parse_instance("\n".join(lines))
    assert error.value.clause == "decomposition edge coverage"


def test_instance_round_trip(tmpdir, small_tree):
    filename = str(tmpdir.join("tree.txt"))
    write_instance(small_tree, filename)
    again = read_instance(filename)
    assert again == small_tree
    assert again.name == filename

    cycle = parse_instance(CYCLE)
    assert parse_instance(serialize_instance(cycle)) == cycle


def test_sizes_line_only_when_unbalanced(small_tree):
    assert "sizes" not in serialize_instance(small_tree)
    skewed = small_tree.with_sizes([2, 4, 2])
    assert "sizes 4 2 2" in serialize_instance(skewed).splitlines()
    assert parse_instance(serialize_instance(skewed)).sizes == skewed.sizes


def test_partition_format(tmpdir):
    partition = Partition.from_parts([[0, 3], [1, 2, 4]])
    text = serialize_partition(partition)
    assert text.splitlines() == ["fairpart-partition v1", "part 0 0 3", "part 1 1 2 4"]
    assert parse_partition(text) == partition

    filename = str(tmpdir.join("p.txt"))
    write_partition(partition, filename)
    assert read_partition(filename, n=5) == partition


@pytest.mark.parametrize(
    "text, clause",
    [
        ("part 0 0 1\n", "header"),
        ("fairpart-partition v1\npart 0 0\npart 0 1\n", "syntax"),
        ("fairpart-partition v1\npart 0 0\npart 2 1\n", "part index"),
        ("fairpart-partition v1\npart 0 0 1\npart 1 1\n", "overlap"),
        ("fairpart-partition v1\npart 0 0\npart 1 1\n", "cover"),
    ],
)
def test_malformed_partitions(text, clause):
    with pytest.raises(InstanceError) as error:
        parse_partition(text, n=3)
    assert error.value.clause == clause


def test_write_report(tmpdir, path3):
    report = check_partition(path3, Partition([0, 0, 1]), "EF")
    filename = str(tmpdir.join("report.txt"))
    write_report(report, filename)
    with open(filename) as handle:
        lines = handle.read().splitlines()
    assert lines[0] == "agent 0 EF pass"
    assert lines[2] == "agent 2 EF fail envies 0 own 0 reaches 1"


def test_msgpack_round_trip(tmpdir):
    filename = str(tmpdir.join("records.msgpack"))
    records = {"instance": ["a", "b"], "seconds": [0.5, 1.25], "work": [3, None]}
    dump(records, filename=filename)
    assert load(filename) == records
