import itertools
import networkx as nx
import numpy as np
import pytest
from fractions import Fraction
from fairpart.data.parser import read_instance, write_instance
from fairpart.exceptions import InstanceError
from fairpart.fairness.audit import check_partition
from fairpart.fairness.shares import mms_share_exact
from fairpart.forge import (
    FOUND,
    NONE,
    PASS,
    bin_packing,
    equitable_split,
    expectation_path,
    gen_binpacking_path,
    gen_binpacking_tree,
    gen_bipartite_vc2,
    gen_ef_not_prop,
    gen_equitable_star,
    gen_mms_nonexistence,
    gen_mms_not_prop,
    gen_prop_not_ef,
    gen_random,
    read_expectation,
    write_expectation,
)
from fairpart.solvers.oracle import exists_fair


def test_equitable_split():
    S = [1, 2, 3, 4]
    chosen = equitable_split(S)
    assert len(chosen) == 2
    assert sum(S[i] for i in chosen) == 5
    assert equitable_split([1, 1, 1, 5]) is None
    assert equitable_split([2, 2, 2]) is None


def test_bin_packing():
    bins = bin_packing([2, 2, 2, 2], 2, 4)
    loads = [0, 0]
    for b in bins:
        loads[b] += 2
    assert loads == [4, 4]
    assert bin_packing([2, 5, 3], 2, 5) == [1, 0, 1]
    assert bin_packing([4, 3, 3], 2, 5) is None
    assert bin_packing([2, 2], 2, 3) is None


@pytest.mark.parametrize(
    "forged",
    [
        gen_mms_nonexistence(2),
        gen_mms_nonexistence(3),
        gen_prop_not_ef(3),
        gen_prop_not_ef(4),
        gen_binpacking_path([2, 5, 3], 2, 5),
        gen_bipartite_vc2([1, 1, 1, 1]),
        gen_binpacking_tree([2, 2, 2, 2], 2, 4),
    ],
    ids=lambda forged: forged.instance.name,
)
def test_bundled_partitions_get_their_verdicts(forged):
    assert forged.partition is not None
    forged.partition.validate(forged.instance.sizes)
    for notion, verdict in forged.verdicts.items():
        report = check_partition(forged.instance, forged.partition, notion)
        assert report.passed == (verdict == PASS), notion


@pytest.mark.parametrize(
    "forged",
    [
        gen_mms_nonexistence(2),
        gen_ef_not_prop(2),
        gen_ef_not_prop(3),
        gen_mms_not_prop(2),
        gen_mms_not_prop(3),
        gen_bipartite_vc2([1, 1, 1, 1], variant="mms"),
        gen_binpacking_path([2, 5, 3], 2, 5),
        gen_binpacking_path([4, 3, 3], 2, 5),
        gen_binpacking_tree([3, 3, 2], 2, 4),
        gen_bipartite_vc2([9, 9, 9, 11], strict=True),
    ],
    ids=lambda forged: "{}-{}".format(forged.instance.name, forged.instance.n),
)
def test_existence_matches_oracle(forged):
    assert forged.exists
    for notion, answer in forged.exists.items():
        found = exists_fair(forged.instance, notion) is not None
        assert found == (answer == FOUND), notion


def test_path_values():
    forged = gen_binpacking_path([2, 5, 3], 2, 5)
    assert forged.params["values"] == [1, 2, 1, 3, 4, 5, 6, 5, 7, 8]
    assert forged.partition.to_lists() == [[2, 3, 4, 5, 6], [0, 1, 7, 8, 9]]
    assert forged.instance.profile.weight(0, 1) == 2
    assert forged.instance.profile.weight(1, 0) == 1

    prop = gen_binpacking_path([2, 2], 2, 2, scheme="prop")
    assert prop.params["values"] == [2, 4, 2, 8]
    assert list(prop.exists.items()) == [("PROP", FOUND)]


def test_path_without_packing():
    forged = gen_binpacking_path([4, 3, 3], 2, 5)
    assert forged.partition is None
    assert dict(forged.exists) == {"EF": NONE, "EFX0": NONE}
    small = gen_binpacking_path([3, 3], 2, 3)
    assert small.partition is not None
    assert gen_binpacking_path([4, 2], 2, 3).exists == {}


def test_tree_gadget_shape():
    forged = gen_binpacking_tree([2, 2, 2, 2], 2, 4)
    instance = forged.instance
    assert instance.n == 12 and instance.k == 3
    assert instance.graph.is_forest()
    assert instance.graph.degree(0) == 7
    assert forged.partition.to_lists()[2] == [0, 1, 2, 3]

    without = gen_binpacking_tree([3, 3, 2], 2, 4)
    assert without.partition is None
    assert set(without.exists.values()) == {NONE}


def test_bipartite_variants():
    strict = gen_bipartite_vc2([9, 9, 9, 11], strict=True)
    assert strict.partition is None
    assert dict(strict.exists) == {"PROP": NONE, "EF": NONE, "EFX0": NONE, "EFX": NONE}

    ef1 = gen_bipartite_vc2([1, 1, 1, 1], variant="ef1")
    assert ef1.instance.graph.has_edge(0, 1)
    assert ef1.instance.n == 8
    assert list(ef1.verdicts.items()) == [("EF1", PASS)]

    mms = gen_bipartite_vc2([1, 1, 1, 1], variant="mms")
    assert mms.instance.n == 6
    assert mms.params["B"] == 2


def test_equitable_star():
    forged = gen_equitable_star([1, 2, 3, 4], offset="auto")
    assert forged.params["offset"] == 6
    assert forged.params["equitable"] is True
    assert forged.params["sigma"] == Fraction(17)
    profile = forged.instance.profile
    assert mms_share_exact(profile, 0, forged.instance.sizes) == 17

    uneven = gen_equitable_star([1, 1, 1, 5], offset="auto")
    assert uneven.params["equitable"] is False
    assert mms_share_exact(uneven.instance.profile, 0, uneven.instance.sizes) == 12
    assert uneven.params["sigma"] == Fraction(14)

    plain = gen_equitable_star([1, 2, 3, 4])
    assert "equitable" not in plain.params
    assert plain.instance.profile.weight(3, 0) == 3


@pytest.mark.parametrize(
    "generate",
    [
        lambda: gen_mms_nonexistence(1),
        lambda: gen_prop_not_ef(2),
        lambda: gen_ef_not_prop(1),
        lambda: gen_equitable_star([3]),
        lambda: gen_equitable_star([1, 0]),
        lambda: gen_binpacking_path([1, 3], 2, 2),
        lambda: gen_binpacking_path([2, 2], 2, 3),
        lambda: gen_binpacking_path([2, 2], 2, 2, scheme="sum"),
        lambda: gen_bipartite_vc2([1, 2, 3]),
        lambda: gen_bipartite_vc2([1, 3], strict=True),
        lambda: gen_bipartite_vc2([1, 1], variant="ef2"),
        lambda: gen_binpacking_tree([2, 2, 2], 2, 3),
        lambda: gen_random(5, 2, family="cycle"),
        lambda: gen_random(5, 2, weight_max=0),
    ],
)
def test_bad_parameters(generate):
    with pytest.raises(InstanceError) as error:
        generate()
    assert error.value.clause == "parameter"


def test_random_instances_are_reproducible():
    first = gen_random(9, 3, family="general", weight_max=4, seed=7)
    assert first == gen_random(9, 3, family="general", weight_max=4, seed=7)
    assert first.name == "random-general-9-7"
    assert first.n == 9 and first.k == 3


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_families(seed):
    tree = gen_random(8, 2, family="tree", seed=seed)
    assert tree.graph.number_of_edges == 7
    assert len(tree.graph.components()) == 1
    assert tree.profile.is_binary

    assert gen_random(6, 2, family="path", seed=seed).graph.path_order() is not None

    forest = gen_random(10, 2, family="forest", seed=seed).graph
    assert forest.is_forest()

    bipartite = gen_random(8, 2, family="bipartite", seed=seed).graph
    assert nx.is_bipartite(bipartite.to_networkx())

    symmetric = gen_random(7, 2, weight_max=5, seed=seed, symmetric=True)
    assert symmetric.profile.classify().symmetric


def test_expectation_sidecar(tmpdir):
    forged = gen_mms_nonexistence(2)
    filename = str(tmpdir.join("mms.txt"))
    write_instance(forged.instance, filename)
    path = write_expectation(forged, filename)
    assert path == expectation_path(filename)

    document = read_expectation(filename)
    assert document["exists"] == {"MMS": NONE, "EF1": FOUND}
    assert document["verdicts"]["EF1"] == PASS
    assert document["partition"] == forged.partition.to_lists()
    assert read_instance(filename) == forged.instance

    star = gen_equitable_star([1, 2, 3, 4], offset="auto")
    write_expectation(star, filename)
    assert read_expectation(filename)["params"]["sigma"] == "17"


def _has_equal_halves(S):
    total = sum(S)
    if total % 2:
        return False
    return any(
        2 * sum(S[i] for i in half) == total
        for half in itertools.combinations(range(len(S)), len(S) // 2)
    )


def _packs(S, B, c):
    for bins in itertools.product(range(B), repeat=len(S)):
        loads = [0] * B
        for s, b in zip(S, bins):
            loads[b] += s
        if all(load == c for load in loads):
            return True
    return False


@pytest.mark.slow
def test_equitable_star_share_decides_equal_halves():
    rng = np.random.default_rng(7)
    for _ in range(20):
        size = int(rng.choice([2, 4, 6, 8]))
        S = rng.integers(1, 7, size=size).tolist()
        forged = gen_equitable_star(S, offset="auto")
        share = mms_share_exact(forged.instance.profile, 0, forged.instance.sizes)
        expected = _has_equal_halves(S)
        assert (share >= forged.params["sigma"]) == expected, S
        assert forged.params["equitable"] == expected, S


@pytest.mark.slow
@pytest.mark.parametrize(
    "generate, S, B, c",
    [
        (gen_binpacking_path, [2, 2, 4], 2, 4),
        (gen_binpacking_path, [3, 3, 2], 2, 4),
        (gen_binpacking_path, [2, 6], 2, 4),
        (gen_binpacking_path, [4, 3, 3], 2, 5),
        (gen_binpacking_path, [3, 3, 3, 3], 2, 6),
        (gen_binpacking_tree, [3, 5], 2, 4),
        (gen_binpacking_tree, [2, 6], 2, 4),
        (gen_binpacking_tree, [2, 2, 4], 2, 4),
        (gen_binpacking_tree, [2, 2, 2, 2], 2, 4),
        (gen_binpacking_tree, [3, 3, 2], 2, 4),
    ],
)
def test_gadget_existence_follows_packing(generate, S, B, c):
    packs = _packs(S, B, c)
    assert (bin_packing(S, B, c) is not None) == packs
    forged = generate(S, B, c)
    assert forged.exists
    for notion in forged.exists:
        found = exists_fair(forged.instance, notion) is not None
        assert found == packs, notion
