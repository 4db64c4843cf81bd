"""Line-oriented text formats

Instance files::

    fairpart v1
    agents <n>
    parts <k>
    sizes <n_1> ... <n_k>            (optional, balanced when absent)
    edge <a> <b> <w_ab> [<w_ba>]     (w_ba defaults to w_ab)
    td {                              (optional nice tree decomposition)
    node <id> kind <leaf|introduce a|forget a|join> parent <id|none> bag <a ...>
    }

Partition files::

    fairpart-partition v1
    part <i> <a> <b> ...

Blank lines and text after ``#`` are ignored everywhere.
"""
import codecs
import logging
from fairpart.data.decomposition import (
    DecompositionNode,
    NiceTreeDecomposition,
    INTRODUCE,
    FORGET,
    KINDS,
)
from fairpart.data.instance import (
    FriendshipGraph,
    Instance,
    Partition,
    SizeVector,
    UtilityProfile,
)
from fairpart.exceptions import InstanceError


logger = logging.getLogger()

INSTANCE_HEADER = "fairpart v1"
PARTITION_HEADER = "fairpart-partition v1"


def _lines(text):
    """Yield (line number, tokens) for meaningful lines"""
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield number, line.split()


def _integers(tokens, number, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InstanceError("syntax", "line {}: {} must be integers".format(number, what))


def _parse_node(tokens, number):
    """node <id> kind <kind> [agent] parent <id|none> bag <a ...>"""
    try:
        if tokens[0] != "node" or tokens[2] != "kind":
            raise IndexError
        node_id = int(tokens[1])
        kind = tokens[3]
        if kind not in KINDS:
            raise InstanceError("syntax", "line {}: unknown node kind {!r}".format(number, kind))
        position = 4
        vertex = None
        if kind in (INTRODUCE, FORGET):
            vertex = int(tokens[4])
            position = 5
        if tokens[position] != "parent" or tokens[position + 2] != "bag":
            raise IndexError
        parent = tokens[position + 1]
        parent = None if parent == "none" else int(parent)
        bag = [int(t) for t in tokens[position + 3 :]]
    except (IndexError, ValueError):
        raise InstanceError("syntax", "line {}: malformed node line".format(number))

    return DecompositionNode(node_id, kind, bag, parent=parent, vertex=vertex)


def parse_instance(text, name=None):
    """Parse instance-file content

    Parameters
    ----------
    text : str
        Content in the fairpart v1 format.
    name : str, optional
        Name attached to the instance.

    Returns
    -------
    instance : Instance
        Graph, utilities, k and sizes (balanced when not given), plus the
        verified decomposition if the file carries one.
    """
    lines = _lines(text)

    try:
        number, tokens = next(lines)
    except StopIteration:
        raise InstanceError("header", "empty instance file")
    if " ".join(tokens) != INSTANCE_HEADER:
        raise InstanceError("header", "line {}: expected {!r}".format(number, INSTANCE_HEADER))

    n = k = sizes = None
    edges = []
    weights = {}
    nodes = None
    decomposition_nodes = None

    for number, tokens in lines:
        keyword = tokens[0]

        if nodes is not None and keyword != "}":
            nodes.append(_parse_node(tokens, number))
            continue

        if keyword == "agents":
            if len(tokens) != 2:
                raise InstanceError("syntax", "line {}: agents <n>".format(number))
            (n,) = _integers(tokens[1:], number, "agent count")
        elif keyword == "parts":
            if len(tokens) != 2:
                raise InstanceError("syntax", "line {}: parts <k>".format(number))
            (k,) = _integers(tokens[1:], number, "part count")
        elif keyword == "sizes":
            sizes = _integers(tokens[1:], number, "sizes")
        elif keyword == "edge":
            if len(tokens) not in (4, 5):
                raise InstanceError("syntax", "line {}: edge <a> <b> <w_ab> [<w_ba>]".format(number))
            values = _integers(tokens[1:], number, "edge fields")
            a, b, w_ab = values[:3]
            w_ba = values[3] if len(values) == 4 else w_ab
            if w_ab == 0 or w_ba == 0:
                raise InstanceError("zero weight on edge", "line {}: {} {}".format(number, a, b))
            edges.append((a, b))
            weights[(a, b)] = w_ab
            weights[(b, a)] = w_ba
        elif keyword == "td":
            if decomposition_nodes is not None:
                raise InstanceError("syntax", "line {}: second td block".format(number))
            if tokens != ["td", "{"]:
                raise InstanceError("syntax", "line {}: expected 'td {{'".format(number))
            nodes = []
        elif keyword == "}":
            if nodes is None:
                raise InstanceError("syntax", "line {}: unmatched '}}'".format(number))
            decomposition_nodes = nodes
            nodes = None
        else:
            raise InstanceError("syntax", "line {}: unknown keyword {!r}".format(number, keyword))

    if nodes is not None:
        raise InstanceError("syntax", "unterminated td block")
    if n is None:
        raise InstanceError("syntax", "missing 'agents' line")
    if k is None:
        raise InstanceError("syntax", "missing 'parts' line")

    graph = FriendshipGraph(n, edges)
    profile = UtilityProfile(graph, weights)

    decomposition = None
    if decomposition_nodes is not None:
        decomposition = NiceTreeDecomposition(decomposition_nodes)

    return Instance(profile, k, sizes=sizes, decomposition=decomposition, name=name)


def serialize_instance(instance):
    """Render an instance in the fairpart v1 format"""
    profile = instance.profile
    lines = [
        INSTANCE_HEADER,
        "agents {}".format(instance.n),
        "parts {}".format(instance.k),
    ]

    if instance.sizes != SizeVector.balanced(instance.n, instance.k):
        lines.append("sizes " + " ".join(str(s) for s in instance.sizes))

    for a, b in instance.graph.edges:
        w_ab = profile.weight(a, b)
        w_ba = profile.weight(b, a)
        if w_ab == w_ba:
            lines.append("edge {} {} {}".format(a, b, w_ab))
        else:
            lines.append("edge {} {} {} {}".format(a, b, w_ab, w_ba))

    if instance.decomposition is not None:
        lines.append("td {")
        for node_id in sorted(instance.decomposition.nodes):
            node = instance.decomposition[node_id]
            kind = node.kind
            if node.vertex is not None:
                kind = "{} {}".format(kind, node.vertex)
            parent = "none" if node.parent is None else node.parent
            bag = " ".join(str(a) for a in sorted(node.bag))
            lines.append(
                "node {} kind {} parent {} bag {}".format(node_id, kind, parent, bag).rstrip()
            )
        lines.append("}")

    return "\n".join(lines) + "\n"


def read_instance(filename):
    """Parse an instance file from disk"""
    with codecs.open(filename, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_instance(text, name=filename)


def write_instance(instance, filename):
    """Write an instance file to disk"""
    with codecs.open(filename, "w", encoding="utf-8") as f:
        f.write(serialize_instance(instance))


def parse_partition(text, n=None):
    """Parse partition-file content

    Parameters
    ----------
    text : str
        Content in the fairpart-partition v1 format.
    n : int, optional
        Expected number of agents.

    Returns
    -------
    partition : Partition
    """
    lines = _lines(text)
    try:
        number, tokens = next(lines)
    except StopIteration:
        raise InstanceError("header", "empty partition file")
    if " ".join(tokens) != PARTITION_HEADER:
        raise InstanceError("header", "line {}: expected {!r}".format(number, PARTITION_HEADER))

    parts = {}
    for number, tokens in lines:
        if tokens[0] != "part" or len(tokens) < 2:
            raise InstanceError("syntax", "line {}: part <i> <agents ...>".format(number))
        values = _integers(tokens[1:], number, "part fields")
        index = values[0]
        if index in parts:
            raise InstanceError("syntax", "line {}: part {} repeated".format(number, index))
        parts[index] = values[1:]

    k = len(parts)
    if sorted(parts) != list(range(k)):
        raise InstanceError("part index", "parts must be numbered 0..{}".format(k - 1))

    return Partition.from_parts([parts[i] for i in range(k)], n=n)


def serialize_partition(partition):
    """Render a partition in the fairpart-partition v1 format"""
    lines = [PARTITION_HEADER]
    for index, members in enumerate(partition.to_lists()):
        lines.append(" ".join(["part", str(index)] + [str(a) for a in members]))
    return "\n".join(lines) + "\n"


def read_partition(filename, n=None):
    with codecs.open(filename, "r", encoding="utf-8") as f:
        text = f.read()
    return parse_partition(text, n=n)


def write_partition(partition, filename):
    with codecs.open(filename, "w", encoding="utf-8") as f:
        f.write(serialize_partition(partition))


def write_report(report, filename):
    """Write an AuditReport, one `agent <a> <NOTION> <pass|fail> ...` per line"""
    with codecs.open(filename, "w", encoding="utf-8") as f:
        for line in report.to_lines():
            f.write(line + "\n")
