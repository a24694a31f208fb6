"""
Coxeter graphs, finite-type classification and exact arithmetic in finite
Coxeter groups through the crystallographic reflection representation.
"""
from collections import deque
from dataclasses import dataclass
import logging
import re
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher
import numpy as np

_log = logging.getLogger("coxeter")

DEFAULT_LABEL = 3
ENUMERATION_CAP = 2000
MEMO_LIMIT = 2 ** 16
# 4 cos^2(pi / m) for the crystallographic labels, split as (A_ij, A_ji).
CARTAN_ENTRIES = {2: (0, 0), 3: (-1, -1), 4: (-1, -2), 6: (-1, -3)}


class GraphError(ValueError):
    pass


class NotFiniteTypeError(ValueError):
    pass


class EnumerationLimitError(ValueError):
    pass


class CoxeterGraph(object):
    """
    Labeled simple graph encoding a Coxeter matrix.

    Absent pairs have label 2; edges carry labels >= 3. The vertex order is
    significant: it fixes matrix indices and every "least index" choice.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Tuple] = ()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex names in %s" % (self.vertices,))
        self._index = {name: i for i, name in enumerate(self.vertices)}
        labels = {}
        for edge in edges:
            if len(edge) == 2:
                a, b = edge
                m = DEFAULT_LABEL
            else:
                a, b, m = edge
            if a not in self._index or b not in self._index:
                raise GraphError("edge %s-%s mentions an undeclared vertex" % (a, b))
            if a == b:
                raise GraphError("loop at %s" % a)
            if not isinstance(m, (int, np.integer)) or m < 3:
                raise GraphError("edge %s-%s has label %r, expected an integer >= 3" % (a, b, m))
            key = frozenset((a, b))
            if key in labels:
                raise GraphError("multiple edge %s-%s" % (a, b))
            labels[key] = int(m)
        self._labels = labels
        self._cache = {}

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, CoxeterGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._labels == other._labels

    def __hash__(self):
        return hash((self.vertices, frozenset(self._labels.items())))

    def __repr__(self):
        return "CoxeterGraph(%s, %s)" % (list(self.vertices), self.edges())

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, name):
        return name in self._index

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GraphError("%s is not a vertex of %s" % (name, self)) from None

    def m(self, a: str, b: str) -> int:
        if a == b:
            return 1
        return self._labels.get(frozenset((a, b)), 2)

    def edges(self) -> List[Tuple[str, str, int]]:
        result = []
        for i, a in enumerate(self.vertices):
            for b in self.vertices[i + 1:]:
                m = self.m(a, b)
                if m > 2:
                    result.append((a, b, m))
        return result

    def neighbors(self, name: str) -> List[str]:
        return [b for b in self.vertices if b != name and self.m(name, b) > 2]

    def sort_vertices(self, names: Iterable[str]) -> Tuple[str, ...]:
        return tuple(sorted(set(names), key=self.index))

    def induced(self, subset: Iterable[str]) -> "CoxeterGraph":
        """
        The induced subgraph on ``subset``, keeping this graph's vertex order.
        """
        names = self.sort_vertices(subset)
        for name in names:
            self.index(name)
        chosen = set(names)
        return CoxeterGraph(names, [e for e in self.edges()
                                    if e[0] in chosen and e[1] in chosen])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        for a, b, m in self.edges():
            g.add_edge(a, b, m=m)
        return g

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return nx.is_connected(self.to_networkx())

    def components(self) -> List["CoxeterGraph"]:
        return [self.induced(c) for c in sorted(
            nx.connected_components(self.to_networkx()),
            key=lambda comp: min(self.index(v) for v in comp))]

    def coxeter_matrix(self) -> np.ndarray:
        l = self.rank
        matrix = np.ones((l, l), dtype=np.int64)
        for i, a in enumerate(self.vertices):
            for j, b in enumerate(self.vertices):
                matrix[i, j] = self.m(a, b)
        return matrix

    def cartan_matrix(self) -> np.ndarray:
        if "cartan" not in self._cache:
            l = self.rank
            cartan = 2 * np.eye(l, dtype=np.int64)
            for a, b, m in self.edges():
                if m not in CARTAN_ENTRIES:
                    raise NotFiniteTypeError(
                        "label %d on %s-%s is not crystallographic" % (m, a, b))
                i, j = self.index(a), self.index(b)
                cartan[i, j], cartan[j, i] = CARTAN_ENTRIES[m]
            cartan.flags.writeable = False
            self._cache["cartan"] = cartan
        return self._cache["cartan"]

    def reflection_matrices(self) -> Tuple[np.ndarray, ...]:
        if "reflections" not in self._cache:
            cartan = self.cartan_matrix()
            matrices = []
            for i in range(self.rank):
                s = np.eye(self.rank, dtype=np.int64)
                s[i, :] -= cartan[i, :]
                s.flags.writeable = False
                matrices.append(s)
            self._cache["reflections"] = tuple(matrices)
        return self._cache["reflections"]

    def positive_roots(self) -> np.ndarray:
        """
        Positive roots in the simple-root basis, found by breadth-first
        search from the simple roots. Rows are roots.
        """
        if "roots" not in self._cache:
            require_finite_type(self)
            reflections = self.reflection_matrices()
            simple = [tuple(row) for row in np.eye(self.rank, dtype=np.int64)]
            seen = set(simple)
            order = list(simple)
            queue = deque(simple)
            while queue:
                root = np.array(queue.popleft(), dtype=np.int64)
                for s in reflections:
                    image = s.dot(root)
                    if (image < 0).any():
                        continue
                    key = tuple(int(c) for c in image)
                    if key not in seen:
                        seen.add(key)
                        order.append(key)
                        queue.append(key)
            roots = np.array(order, dtype=np.int64).reshape(len(order), self.rank)
            roots.flags.writeable = False
            _log.debug("%d positive roots for %s", len(roots), self.vertices)
            self._cache["roots"] = roots
        return self._cache["roots"]

    def cached(self, key, factory):
        """
        Per-graph memo used by the Garside tables. Values are immutable,
        so a racing recomputation stores an equal value.
        """
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]


def parse_graph(text: str) -> CoxeterGraph:
    """
    Parse the graph text format: ``vertex <name>`` and
    ``edge <name> <name> [m]`` lines, ``#`` comments.
    """
    vertices = []
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "vertex" and len(fields) == 2:
            vertices.append(fields[1])
        elif fields[0] == "edge" and len(fields) in (3, 4):
            try:
                m = int(fields[3]) if len(fields) == 4 else DEFAULT_LABEL
            except ValueError:
                raise GraphError("line %d: bad label %r" % (lineno, fields[3])) from None
            edges.append((fields[1], fields[2], m))
        else:
            raise GraphError("line %d: cannot parse %r" % (lineno, line))
    return CoxeterGraph(vertices, edges)


def read_graph(path: str) -> CoxeterGraph:
    with open(path) as f:
        return parse_graph(f.read())


def format_graph(graph: CoxeterGraph) -> str:
    lines = ["vertex %s" % v for v in graph.vertices]
    for a, b, m in graph.edges():
        lines.append("edge %s %s" % (a, b) if m == DEFAULT_LABEL else "edge %s %s %d" % (a, b, m))
    return "\n".join(lines) + "\n"


class StandardType(NamedTuple):
    family: str
    rank: int

    _RE = re.compile(r"^([ABDEFG])_?(\d+)$")
    _MIN_RANK = {"A": 1, "B": 2, "D": 4}
    _FIXED = {"E": (6, 7, 8), "F": (4,), "G": (2,)}

    @classmethod
    def parse(cls, text: str) -> "StandardType":
        match = cls._RE.match(text.strip())
        if match is None:
            raise GraphError("unknown Coxeter type %r" % text)
        result = cls(match.group(1), int(match.group(2)))
        result.validate()
        return result

    def validate(self):
        if self.family in self._MIN_RANK:
            ok = self.rank >= self._MIN_RANK[self.family]
        else:
            ok = self.rank in self._FIXED.get(self.family, ())
        if not ok:
            raise GraphError("unsupported Coxeter type %s%d" % (self.family, self.rank))

    def __str__(self):
        return "%s%d" % (self.family, self.rank)

    def vertex_names(self) -> List[str]:
        return ["x%d" % i for i in range(1, self.rank + 1)]

    def instantiate(self) -> CoxeterGraph:
        """
        The graph with the canonical numbering: A path; B with the 4-edge
        on x1-x2; D with leaves x1, x2 on x3; E with the branch vertex last.
        """
        self.validate()
        l = self.rank
        x = self.vertex_names()
        path = [(x[i], x[i + 1], 3) for i in range(l - 1)]
        if self.family == "A":
            edges = path
        elif self.family == "B":
            edges = [(x[0], x[1], 4)] + path[1:]
        elif self.family == "D":
            edges = [(x[0], x[2], 3), (x[1], x[2], 3)] + path[2:]
        elif self.family == "E":
            branch = {6: 2, 7: 3, 8: 4}[l]
            edges = path[:l - 2] + [(x[branch], x[l - 1], 3)]
        elif self.family == "F":
            edges = [(x[0], x[1], 3), (x[1], x[2], 4), (x[2], x[3], 3)]
        else:
            edges = [(x[0], x[1], 6)]
        return CoxeterGraph(x, edges)


def standard_types(rank: int) -> List[StandardType]:
    candidates = [StandardType("A", rank), StandardType("B", rank), StandardType("D", rank),
                  StandardType("E", rank), StandardType("F", rank), StandardType("G", rank)]
    result = []
    for t in candidates:
        try:
            t.validate()
        except GraphError:
            continue
        result.append(t)
    return result


def _edge_label_match(e1, e2):
    return e1["m"] == e2["m"]


def classify_finite_type(graph: CoxeterGraph) -> Optional[Tuple[StandardType, Dict[str, str]]]:
    """
    Identify a connected graph with a crystallographic finite type.
    :return: (type, map from input vertices to the standard x1..xl), or None.
    """
    if not graph.is_connected():
        _log.debug("%s is not connected", graph.vertices)
        return None
    edges = graph.edges()
    if len(edges) != graph.rank - 1:
        return None
    source = graph.to_networkx()
    for candidate in standard_types(graph.rank):
        standard = candidate.instantiate()
        matcher = GraphMatcher(source, standard.to_networkx(), edge_match=_edge_label_match)
        best = None
        for mapping in matcher.isomorphisms_iter():
            key = tuple(standard.index(mapping[v]) for v in graph.vertices)
            if best is None or key < best[0]:
                best = key, dict(mapping)
        if best is not None:
            return candidate, {v: best[1][v] for v in graph.vertices}
    return None


def is_finite_type(graph: CoxeterGraph) -> bool:
    if not graph.vertices:
        return True
    return all(classify_finite_type(c) is not None for c in graph.components())


def require_finite_type(graph: CoxeterGraph):
    if not is_finite_type(graph):
        raise NotFiniteTypeError("%s is not of crystallographic finite type" % (graph.vertices,))


@dataclass(frozen=True)
class ChordDiagram:
    """
    Chords in a disk; ``endpoints[i]`` holds the two boundary positions of
    chord i among 0..2l-1 in cyclic order.
    """
    endpoints: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        positions = [p for pair in self.endpoints for p in pair]
        count = 2 * len(self.endpoints)
        if any(len(pair) != 2 for pair in self.endpoints):
            raise GraphError("each chord needs exactly two endpoints")
        if sorted(positions) != list(range(count)):
            raise GraphError("chord endpoints must be the distinct positions 0..%d" % (count - 1))

    @classmethod
    def from_sequence(cls, labels: Sequence) -> "ChordDiagram":
        """
        Build from a boundary reading where each chord label appears twice.
        Chords are numbered by first appearance.
        """
        positions = {}
        order = []
        for pos, label in enumerate(labels):
            if label not in positions:
                positions[label] = []
                order.append(label)
            positions[label].append(pos)
        if any(len(p) != 2 for p in positions.values()):
            raise GraphError("every chord label must appear exactly twice")
        return cls(tuple(tuple(positions[label]) for label in order))

    def __len__(self):
        return len(self.endpoints)

    def crosses(self, i: int, j: int) -> bool:
        a, b = sorted(self.endpoints[i])
        c, d = self.endpoints[j]
        return (a < c < b) != (a < d < b)


@dataclass(frozen=True)
class EmbeddedGraph:
    vertices: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        known = set(self.vertices)
        seen = set()
        for a, b in self.edges:
            if a not in known or b not in known:
                raise GraphError("edge %s-%s mentions an undeclared vertex" % (a, b))
            if a == b:
                raise GraphError("loop at %s" % a)
            key = frozenset((a, b))
            if key in seen:
                raise GraphError("multiple edge %s-%s" % (a, b))
            seen.add(key)


def chord_to_coxeter(diagram: ChordDiagram, prefix: str = "x") -> CoxeterGraph:
    names = ["%s%d" % (prefix, i + 1) for i in range(len(diagram))]
    edges = [(names[i], names[j], 3)
             for i in range(len(diagram)) for j in range(i + 1, len(diagram))
             if diagram.crosses(i, j)]
    return CoxeterGraph(names, edges)


def embedded_graph_to_coxeter(graph: EmbeddedGraph, prefix: str = "a") -> CoxeterGraph:
    names = ["%s%d" % (prefix, i + 1) for i in range(len(graph.edges))]
    edges = []
    for i, e in enumerate(graph.edges):
        for j in range(i + 1, len(graph.edges)):
            if set(e) & set(graph.edges[j]):
                edges.append((names[i], names[j], 3))
    return CoxeterGraph(names, edges)


class CoxeterElement(object):
    """
    An element of W(graph) held as its integer matrix on the simple-root
    basis together with the inverse matrix.

    Products are interned per graph, so every distinct element has one
    instance and its descents, generator neighbours and other derived
    values are computed once.
    """

    __slots__ = ("graph", "matrix", "inverse_matrix", "_key", "_length", "_descents")

    def __init__(self, graph: CoxeterGraph, matrix: np.ndarray, inverse_matrix: np.ndarray):
        self.graph = graph
        self.matrix = matrix
        self.inverse_matrix = inverse_matrix
        self._key = None
        self._length = None
        self._descents = {}

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.matrix.tobytes()
        return self._key

    def __eq__(self, other):
        if not isinstance(other, CoxeterElement):
            return NotImplemented
        return self.graph == other.graph and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "CoxeterElement(%s)" % (" ".join(self.reduced_word()) or "1")

    def _check(self, other: "CoxeterElement"):
        if self.graph is not other.graph and self.graph != other.graph:
            raise GraphError("elements belong to different Coxeter graphs")

    def cached(self, name, factory):
        """
        Memo for values derived from this element alone. Equal elements
        share entries, and every table of the graph is dropped at once when
        one of them reaches MEMO_LIMIT.
        """
        table = _memo_table(self.graph, name)
        try:
            return table[self.key]
        except KeyError:
            return _remember(self.graph, table, self.key, factory())

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        self._check(other)
        return _intern(CoxeterElement(self.graph, self.matrix.dot(other.matrix),
                                      other.inverse_matrix.dot(self.inverse_matrix)))

    def __invert__(self) -> "CoxeterElement":
        return self.cached("inverse", lambda: _intern(
            CoxeterElement(self.graph, self.inverse_matrix, self.matrix)))

    def left_multiply(self, i: int) -> "CoxeterElement":
        """s_i * self"""
        return self.cached(("left", i), lambda: _generator_by_index(self.graph, i) * self)

    def right_multiply(self, i: int) -> "CoxeterElement":
        """self * s_i"""
        return self.cached(("right", i), lambda: self * _generator_by_index(self.graph, i))

    @property
    def is_identity(self) -> bool:
        return self.key == identity(self.graph).key

    @property
    def length(self) -> int:
        """
        Number of positive roots sent to negative roots.
        """
        if self._length is None:
            roots = self.graph.positive_roots()
            images = roots.dot(self.matrix.T)
            self._length = int((images < 0).any(axis=1).sum())
        return self._length

    def descent_indices(self, side: str = "left") -> FrozenSet[int]:
        try:
            return self._descents[side]
        except KeyError:
            pass
        if side == "right":
            columns = self.matrix
        elif side == "left":
            columns = self.inverse_matrix
        else:
            raise ValueError("side must be 'left' or 'right', got %r" % side)
        # every column is a root, so the sign of its sum is its sign
        sums = columns.sum(axis=0).tolist()
        found = self._descents[side] = frozenset(i for i, total in enumerate(sums) if total < 0)
        return found

    def reduced_word(self) -> Tuple[str, ...]:
        """
        Reduced word built by repeatedly stripping the least left descent.
        """
        def build():
            word = []
            current = self
            while True:
                desc = current.descent_indices("left")
                if not desc:
                    return tuple(word)
                i = min(desc)
                word.append(self.graph.vertices[i])
                current = current.left_multiply(i)
        return self.cached("reduced-word", build)


def _memo_table(graph: CoxeterGraph, name) -> dict:
    return graph.cached("memo", dict).setdefault(name, {})


def _remember(graph: CoxeterGraph, table: dict, key, value):
    if len(table) >= MEMO_LIMIT:
        for other in list(graph.cached("memo", dict).values()):
            other.clear()
    return table.setdefault(key, value)


def _intern(element: CoxeterElement) -> CoxeterElement:
    table = _memo_table(element.graph, "elements")
    found = table.get(element.key)
    if found is None:
        found = _remember(element.graph, table, element.key, element)
    return found


def identity(graph: CoxeterGraph) -> CoxeterElement:
    def build():
        eye = np.eye(graph.rank, dtype=np.int64)
        eye.flags.writeable = False
        return _intern(CoxeterElement(graph, eye, eye))
    return graph.cached("identity", build)


def _generator_by_index(graph: CoxeterGraph, i: int) -> CoxeterElement:
    def build():
        return tuple(_intern(CoxeterElement(graph, s, s)) for s in graph.reflection_matrices())
    return graph.cached("generators", build)[i]


def generator(graph: CoxeterGraph, name: str) -> CoxeterElement:
    return _generator_by_index(graph, graph.index(name))


def element_from_word(graph: CoxeterGraph, names: Iterable[str]) -> CoxeterElement:
    result = identity(graph)
    for name in names:
        result = result * generator(graph, name)
    return result


def multiply(u: CoxeterElement, v: CoxeterElement) -> CoxeterElement:
    return u * v


def invert(u: CoxeterElement) -> CoxeterElement:
    return ~u


def descents(u: CoxeterElement, side: str = "left") -> FrozenSet[str]:
    return frozenset(u.graph.vertices[i] for i in u.descent_indices(side))


def longest_element(graph: CoxeterGraph) -> CoxeterElement:
    """
    w_0, built by right-multiplying the least-index generator that is not
    yet a right descent until every generator is one.
    """
    def build():
        require_finite_type(graph)
        everything = frozenset(range(graph.rank))
        w = identity(graph)
        while True:
            missing = everything - w.descent_indices("right")
            if not missing:
                return w
            w = w.right_multiply(min(missing))
    return graph.cached("w0", build)


def longest_word(graph: CoxeterGraph) -> Tuple[str, ...]:
    """
    The reduced word of w_0 produced by the greedy construction.
    """
    def build():
        require_finite_type(graph)
        everything = frozenset(range(graph.rank))
        w = identity(graph)
        word = []
        while True:
            missing = everything - w.descent_indices("right")
            if not missing:
                return tuple(word)
            i = min(missing)
            word.append(graph.vertices[i])
            w = w.right_multiply(i)
    return graph.cached("w0-word", build)


def strip_common_prefix(u: CoxeterElement, v: CoxeterElement) \
        -> Tuple[Tuple[int, ...], CoxeterElement, CoxeterElement]:
    """
    Greedily strip the least common left descent of u and v until none is
    left.

    :return: the stripped generator indices in order, then the remainders \
             of u and v.
    """
    u._check(v)
    table = _memo_table(u.graph, "common-prefix")
    pair = (u.key, v.key)
    try:
        return table[pair]
    except KeyError:
        pass
    letters = []
    rest_u, rest_v = u, v
    while True:
        common = rest_u.descent_indices("left") & rest_v.descent_indices("left")
        if not common:
            break
        i = min(common)
        letters.append(i)
        rest_u = rest_u.left_multiply(i)
        rest_v = rest_v.left_multiply(i)
    return _remember(u.graph, table, pair, (tuple(letters), rest_u, rest_v))


def weak_order_gcd(u: CoxeterElement, v: CoxeterElement) -> CoxeterElement:
    """
    Meet in the left weak order: greedily strip common left descents.
    """
    letters, _, _ = strip_common_prefix(u, v)
    result = identity(u.graph)
    for i in letters:
        result = result.right_multiply(i)
    return result


def enumerate_small_group(graph: CoxeterGraph, cap: int = ENUMERATION_CAP) -> List[CoxeterElement]:
    """
    Breadth-first enumeration of W(graph), in order of length.
    """
    start = identity(graph)
    seen = {start.key}
    elements = [start]
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(graph.rank):
            ws = w.right_multiply(i)
            if ws.key not in seen:
                if len(elements) >= cap:
                    raise EnumerationLimitError(
                        "W(%s) has more than %d elements" % (",".join(graph.vertices), cap))
                seen.add(ws.key)
                elements.append(ws)
                queue.append(ws)
    return elements


def graph_from_args(args) -> CoxeterGraph:
    """
    The graph named on the command line by ``--graph FILE`` or ``--type T``.
    """
    if getattr(args, "graph", None):
        return read_graph(args.graph)
    if getattr(args, "type", None):
        return StandardType.parse(args.type).instantiate()
    raise GraphError("pass either --graph FILE or --type T")


def classify_graph(args) -> int:
    """
    Print the finite type of a graph file, one factor per connected
    component, then how each vertex maps onto the standard numbering.
    """
    graph = read_graph(args.graph)
    factors = []
    for component in graph.components():
        found = classify_finite_type(component)
        if found is None:
            raise NotFiniteTypeError("component {%s} is not of crystallographic finite type"
                                     % ", ".join(component.vertices))
        factors.append(found)
    _log.info("%s has %d components", args.graph, len(factors))
    print(" x ".join(str(t) for t, _ in factors) or "1")
    for t, mapping in factors:
        for vertex, target in mapping.items():
            print("%s %s.%s" % (vertex, t, target))
    return 0
