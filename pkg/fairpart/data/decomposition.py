import logging
from fairpart.exceptions import InstanceError


logger = logging.getLogger()


LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"

KINDS = (LEAF, INTRODUCE, FORGET, JOIN)


class DecompositionNode(object):
    """A node of a nice tree decomposition

    Parameters
    ----------
    node_id : int
        Identifier, unique within the decomposition.
    kind : str
        One of "leaf", "introduce", "forget" and "join".
    bag : iterable
        Agents of the bag.
    parent : int or None
        Identifier of the parent node, None for the root.
    vertex : int, optional
        The introduced or forgotten agent.
    """

    def __init__(self, node_id, kind, bag, parent=None, vertex=None):
        if kind not in KINDS:
            raise InstanceError("decomposition kind", "node {}: {!r}".format(node_id, kind))
        if kind in (INTRODUCE, FORGET) and vertex is None:
            raise InstanceError(
                "decomposition kind", "node {}: {} needs an agent".format(node_id, kind)
            )
        self.node_id = int(node_id)
        self.kind = kind
        self.bag = frozenset(int(a) for a in bag)
        self.parent = None if parent is None else int(parent)
        self.vertex = None if vertex is None else int(vertex)
        self.children = ()

    def as_tuple(self):
        return (self.node_id, self.kind, self.vertex, self.parent, tuple(sorted(self.bag)))

    def __repr__(self):
        label = self.kind if self.vertex is None else "{} {}".format(self.kind, self.vertex)
        return "<node {} {} bag={}>".format(self.node_id, label, sorted(self.bag))


class NiceTreeDecomposition(object):
    """A rooted nice tree decomposition

    Parameters
    ----------
    nodes : iterable
        DecompositionNode objects. Exactly one of them has no parent.
    """

    def __init__(self, nodes):
        self.nodes = {}
        for node in nodes:
            if node.node_id in self.nodes:
                raise InstanceError("decomposition node id", "{} repeated".format(node.node_id))
            self.nodes[node.node_id] = node

        if not self.nodes:
            raise InstanceError("decomposition root", "no nodes")

        children = {node_id: [] for node_id in self.nodes}
        roots = []
        for node in self.nodes.values():
            if node.parent is None:
                roots.append(node.node_id)
            elif node.parent not in self.nodes:
                raise InstanceError(
                    "decomposition tree",
                    "node {} has unknown parent {}".format(node.node_id, node.parent),
                )
            else:
                children[node.parent].append(node.node_id)

        if len(roots) != 1:
            raise InstanceError("decomposition root", "{} roots".format(len(roots)))

        for node_id, ids in children.items():
            self.nodes[node_id].children = tuple(sorted(ids))

        self.root = roots[0]

        reached = 0
        stack = [self.root]
        while stack:
            node_id = stack.pop()
            reached += 1
            stack.extend(self.nodes[node_id].children)
        if reached != len(self.nodes):
            raise InstanceError("decomposition tree", "nodes unreachable from the root")

    def __len__(self):
        return len(self.nodes)

    def __getitem__(self, node_id):
        return self.nodes[node_id]

    @property
    def width(self):
        return max(len(node.bag) for node in self.nodes.values()) - 1

    def post_order(self):
        """Node ids, children before parents"""
        order = []
        stack = [(self.root, False)]
        while stack:
            node_id, expanded = stack.pop()
            if expanded:
                order.append(node_id)
                continue
            stack.append((node_id, True))
            for child in reversed(self.nodes[node_id].children):
                stack.append((child, False))
        return order

    def verify(self, graph):
        """Check the decomposition against a friendship graph

        Raises InstanceError naming the first violated clause: root bag,
        node shapes, agent range, vertex and edge coverage, connectivity.
        """
        nodes = self.nodes

        if nodes[self.root].bag:
            raise InstanceError("decomposition root", "root bag must be empty")

        for node in nodes.values():
            kids = [nodes[c] for c in node.children]
            if any(not 0 <= a < graph.n for a in node.bag):
                raise InstanceError("decomposition agent range", repr(node))

            if node.kind == LEAF:
                ok = not kids and not node.bag
            elif node.kind == INTRODUCE:
                ok = (
                    len(kids) == 1
                    and node.vertex not in kids[0].bag
                    and node.bag == kids[0].bag | {node.vertex}
                )
            elif node.kind == FORGET:
                ok = (
                    len(kids) == 1
                    and node.vertex in kids[0].bag
                    and node.bag == kids[0].bag - {node.vertex}
                )
            else:
                ok = len(kids) == 2 and kids[0].bag == node.bag == kids[1].bag

            if not ok:
                raise InstanceError("decomposition {} shape".format(node.kind), repr(node))

        covered = set()
        tops = {}
        for node in nodes.values():
            covered |= node.bag
            parent_bag = frozenset() if node.parent is None else nodes[node.parent].bag
            for a in node.bag - parent_bag:
                tops[a] = tops.get(a, 0) + 1

        missing = set(range(graph.n)) - covered
        if missing:
            raise InstanceError(
                "decomposition vertex coverage", "agents {}".format(sorted(missing))
            )

        for a, count in tops.items():
            if count != 1:
                raise InstanceError("decomposition connectivity", "agent {}".format(a))

        where = {a: set() for a in range(graph.n)}
        for node in nodes.values():
            for a in node.bag:
                where[a].add(node.node_id)
        for a, b in graph.edges:
            if not where[a] & where[b]:
                raise InstanceError("decomposition edge coverage", "edge {} {}".format(a, b))

    def __eq__(self, other):
        if isinstance(other, NiceTreeDecomposition):
            return sorted(n.as_tuple() for n in self.nodes.values()) == sorted(
                n.as_tuple() for n in other.nodes.values()
            )
        return NotImplemented

    def __hash__(self):
        return hash(len(self.nodes))

    def __repr__(self):
        return "NiceTreeDecomposition(nodes={}, width={})".format(len(self.nodes), self.width)
