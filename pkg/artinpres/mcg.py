"""
Coxeter graphs and relator schemas presenting mapping class groups of
punctured surfaces as quotients of Artin groups.

Vertices are named x0.., y1.., z, u1.., v1..; ``ROLE_DOCS`` gives the
Dehn twist or braid twist each one stands for.
"""
from dataclasses import dataclass
import logging
from math import comb
from typing import Dict, Iterable, List, NamedTuple, Sequence, Tuple

from clint.textui import progress

from artinpres.coxeter import CoxeterGraph, GraphError, NotFiniteTypeError, StandardType, \
    classify_finite_type
from artinpres.garside import delta_word
from artinpres.presentation import FORMATTERS, Presentation, PresentationError, \
    artin_presentation, tietze_eliminate
from artinpres.transcripts import write_transcripts
from artinpres.words import Word, invert_word

_log = logging.getLogger("mcg")

FLAVORS = ("full", "pure")
ROLE_DOCS = {"x": "a_%s", "y": "b_%s", "z": "c", "u": "d_%s", "v": "tau_%s"}


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceParams:
    """
    Genus g, boundary parameter r (the surface has r + 1 boundary
    components), n punctures. ``closed`` selects the closed surface of genus g.
    """
    g: int
    r: int = 0
    n: int = 0
    flavor: str = "full"
    closed: bool = False

    def validate(self):
        if self.g < 1 or self.r < 0 or self.n < 0:
            raise ParameterError("need g >= 1, r >= 0, n >= 0, got %s" % (self,))
        if self.flavor not in FLAVORS:
            raise ParameterError("unknown flavor %r" % self.flavor)
        if self.closed and self.r != 0:
            raise ParameterError("a closed surface has r = 0, got r = %d" % self.r)
        if self.closed and self.flavor == "pure":
            raise ParameterError("no presentation of the pure mapping class group "
                                 "of a closed surface is available")
        return self

    def __str__(self):
        return "g=%d r=%d n=%d %s%s" % (self.g, self.r, self.n, self.flavor,
                                        " closed" if self.closed else "")


def x(i):
    return "x%d" % i


def y(i):
    return "y%d" % i


def u(i):
    return "u%d" % i


def v(i):
    return "v%d" % i


Z = "z"


def role_of(name: str) -> str:
    return name[0]


def role_doc(name: str) -> str:
    template = ROLE_DOCS[role_of(name)]
    return template % name[1:] if "%s" in template else template


@dataclass(frozen=True)
class GraphFamily:
    params: SurfaceParams
    graph: CoxeterGraph

    @property
    def roles(self) -> Dict[str, str]:
        return {name: role_of(name) for name in self.graph.vertices}

    def __contains__(self, name):
        return name in self.graph


def vertex_inventory(p: SurfaceParams) -> List[str]:
    """
    Vertex names in the fixed order: x's, y's, z, u's, v's.
    """
    if p.flavor == "pure":
        xs = [x(i) for i in range(p.n + p.r + 1)]
    elif p.closed:
        xs = [x(0), x(1)] if p.n >= 1 else [x(0)]
    else:
        top = p.r + 1 if (p.n >= 1 or p.r >= 1) else p.r
        xs = [x(i) for i in range(top + 1)]
    ys = [y(i) for i in range(1, 2 * p.g)]
    zs = [Z] if p.g >= 2 else []
    us = [u(i) for i in range(1, p.r + 1)]
    vs = [v(i) for i in range(1, p.n)] if p.flavor == "full" else []
    return xs + ys + zs + us + vs


def build_graph(p: SurfaceParams, extra_edges: Iterable[Tuple] = ()) -> GraphFamily:
    """
    Every x vertex hangs on y1, the y's form a path with z on y3, the v's
    form a path whose first vertex meets the last x vertex with label 4.
    The u vertices are isolated unless ``extra_edges`` connects them.
    """
    p.validate()
    names = vertex_inventory(p)
    present = set(names)
    edges = [(name, y(1), 3) for name in names if role_of(name) == "x"]
    edges.extend((y(i), y(i + 1), 3) for i in range(1, 2 * p.g - 1))
    if Z in present:
        edges.append((Z, y(3), 3))
    if v(1) in present:
        last_x = x(1) if p.closed else x(p.r + 1)
        edges.append((last_x, v(1), 4))
        edges.extend((v(i), v(i + 1), 3) for i in range(1, p.n - 1))
    edges.extend(extra_edges)
    return GraphFamily(p, CoxeterGraph(names, edges))


class Term(NamedTuple):
    """
    One factor of a relation template: a generator power, or a power of
    the fundamental element of a vertex set with the type it must have.
    """
    vertices: Tuple[str, ...]
    power: int
    is_delta: bool
    expected: str = ""


def gen(name: str, k: int = 1) -> Term:
    return Term((name,), k, False)


def delta(vertices: Sequence[str], k: int = 1, expected: str = "") -> Term:
    return Term(tuple(vertices), k, True, expected)


class Relation(NamedTuple):
    schema: str
    tag: str
    lhs: Tuple[Term, ...]
    rhs: Tuple[Term, ...]

    def deltas(self) -> List[Term]:
        return [t for t in self.lhs + self.rhs if t.is_delta]


def _tag(schema: str, **indices) -> str:
    if not indices:
        return schema
    return "%s(%s)" % (schema, ",".join("%s=%d" % kv for kv in indices.items()))


Y4 = (y(1), y(2), y(3), Z)
Y6 = (y(1), y(2), y(3), y(4), y(5), Z)


def _conjugate_x(i: int, j: int) -> Tuple[Term, ...]:
    arg = (x(i + 1), x(j), y(1))
    return delta(arg, -1, "A3"), gen(x(i)), delta(arg, 1, "A3")


def _fundamental_relations(p: SurfaceParams, prefix: str) -> List[Relation]:
    result = []
    if p.g >= 2:
        result.append(Relation(prefix + "1", prefix + "1", (delta(Y4, 4, "A4"),),
                               (delta((x(0),) + Y4, 2, "A5"),)))
    if p.g >= 3:
        result.append(Relation(prefix + "2", prefix + "2", (delta(Y6, 2, "E6"),),
                               (delta((x(0),) + Y6, 1, "E7"),)))
    return result


def _commutation_relations(p: SurfaceParams, top: int,
                           prefixes: Tuple[str, str]) -> List[Relation]:
    result = []
    for i in range(top + 1):
        for j in range(i):
            c = _conjugate_x(i, j)
            for k in range(j):
                result.append(Relation(prefixes[0], _tag(prefixes[0], k=k, j=j, i=i),
                                       (gen(x(k)),) + c, c + (gen(x(k)),)))
    if p.g >= 2:
        for i in range(top + 1):
            for j in range(i):
                c = _conjugate_x(i, j)
                result.append(Relation(prefixes[1], _tag(prefixes[1], j=j, i=i),
                                       (gen(y(2)),) + c, c + (gen(y(2)),)))
    return result


def _boundary_twist(i: int) -> Tuple[Term, ...]:
    """
    The expression of u_{i+1} for i >= 1.
    """
    return (delta((x(i), x(i + 1)) + Y4, 1, "D6"), delta((x(i + 1),) + Y4, -2, "A5"),
            delta((x(0), x(i + 1), y(1)), 2, "A3"), delta((x(0), x(i), x(i + 1), y(1)), -1, "D4"))


def _first_boundary_twist() -> Tuple[Term, ...]:
    return delta((x(0), x(1)) + Y4, 1, "D6"), delta((x(1),) + Y4, -2, "A5")


def _puncture_relation(schema: str, tag: str, i: int) -> Relation:
    return Relation(schema, tag,
                    (delta((x(i), x(i + 1)) + Y4, 1, "D6"), delta((x(i + 1),) + Y4, -2, "A5")),
                    (delta((x(0), x(i), x(i + 1), y(1)), 1, "D4"),
                     delta((x(0), x(i + 1), y(1)), -2, "A3")))


def _first_puncture_relation(schema: str) -> Relation:
    return Relation(schema, schema, (delta((x(0), x(1)) + Y4, 1, "D6"),),
                    (delta((x(1),) + Y4, 2, "A5"),))


def _bounded_relations(p: SurfaceParams) -> List[Relation]:
    r, n, g = p.r, p.n, p.g
    result = _fundamental_relations(p, "R")
    result.extend(_commutation_relations(p, r, ("R3", "R4")))
    if g >= 2 and r >= 1:
        result.append(Relation("R5", "R5", (gen(u(1)),), _first_boundary_twist()))
    if g >= 2:
        for i in range(1, r):
            result.append(Relation("R6", _tag("R6", i=i), (gen(u(i + 1)),), _boundary_twist(i)))
    if n >= 2:
        result.append(Relation("R7", "R7", (delta((x(r), x(r + 1), y(1), v(1)), 1, "B4"),),
                               (delta((x(r + 1), y(1), v(1)), 2, "B3"),)))
    if n >= 1 and g >= 2 and r == 0:
        result.append(_first_puncture_relation("R8a"))
    if n >= 1 and g >= 2 and r >= 1:
        result.append(_puncture_relation("R8b", "R8b", r))
    return result


def _punctured_closed_relations(p: SurfaceParams) -> List[Relation]:
    g, n = p.g, p.n
    vs = tuple(v(i) for i in range(1, n))
    braid = (x(1),) + vs
    braid_type = "B%d" % n if n >= 2 else "A1"
    result = _fundamental_relations(p, "R")
    if n >= 2:
        result.append(Relation("R7", "R7", (delta((x(0), x(1), y(1), v(1)), 1, "B4"),),
                               (delta((x(1), y(1), v(1)), 2, "B3"),)))
    if g >= 2:
        result.append(_first_puncture_relation("R8a"))
        spine = (Z,) + tuple(y(i) for i in range(2, 2 * g))
        lhs = (gen(x(0), 2 * g - n - 2), delta(braid, 1, braid_type))
        result.append(Relation("R9a", "R9a", lhs, (delta(spine, 2, _d_type(2 * g - 1)),)))
    else:
        result.append(Relation("R9b", "R9b", (gen(x(0), n),), (delta(braid, 1, braid_type),)))
        rhs = (delta(vs, 2, "A%d" % (n - 1)),) if vs else ()
        result.append(Relation("R9c", "R9c", (delta((x(0), y(1)), 4, "A2"),), rhs))
    return result


def _d_type(rank: int) -> str:
    return "A3" if rank == 3 else "D%d" % rank


def _closed_relations(p: SurfaceParams) -> List[Relation]:
    result = _fundamental_relations(p, "M")
    if p.g == 1:
        result.append(Relation("M3", "M3", (gen(x(0)), gen(y(1))) * 6, ()))
    else:
        spine = (y(2), y(3), Z) + tuple(y(i) for i in range(4, 2 * p.g))
        result.append(Relation("M3", "M3", (gen(x(0), 2 * p.g - 2),),
                               (delta(spine, 2, _d_type(2 * p.g - 1)),)))
    return result


def _pure_relations(p: SurfaceParams) -> List[Relation]:
    r, n, g = p.r, p.n, p.g
    result = _fundamental_relations(p, "PR")
    result.extend(_commutation_relations(p, r + n - 1, ("PR3", "PR4")))
    if g < 2:
        return result
    if r == 0:
        if n >= 1:
            result.append(_first_puncture_relation("PR5"))
        for i in range(1, n):
            result.append(_puncture_relation("PR6", _tag("PR6", i=i), i))
        return result
    result.append(Relation("PR5a", "PR5a", (gen(u(1)),), _first_boundary_twist()))
    for i in range(1, r):
        result.append(Relation("PR6a", _tag("PR6a", i=i), (gen(u(i + 1)),), _boundary_twist(i)))
    for i in range(r, n + r):
        result.append(_puncture_relation("PR6b", _tag("PR6b", i=i), i))
    return result


def relation_templates(p: SurfaceParams) -> List[Relation]:
    p.validate()
    if p.flavor == "pure":
        return _pure_relations(p)
    if p.closed:
        return _punctured_closed_relations(p) if p.n >= 1 else _closed_relations(p)
    return _bounded_relations(p)


def render_terms(graph: CoxeterGraph, terms: Sequence[Term]) -> Word:
    """
    Instantiate a template: Delta^k(X) is the greedy Delta word of X
    repeated k times, or the inverse of its |k|-th power.
    """
    letters = []
    for term in terms:
        if not term.is_delta:
            name = term.vertices[0]
            letters.extend([(name, 1 if term.power > 0 else -1)] * abs(term.power))
            continue
        if not term.vertices:
            continue
        word = delta_word(graph, term.vertices).letters
        if term.power < 0:
            word = invert_word(word)
        letters.extend(word * abs(term.power))
    return tuple(letters)


class EmittedRelation(NamedTuple):
    schema: str
    tag: str
    lhs: Word
    rhs: Word


def emit_relators(p: SurfaceParams, family: GraphFamily = None) -> List[EmittedRelation]:
    family = family or build_graph(p)
    result = []
    for rel in relation_templates(p):
        result.append(EmittedRelation(rel.schema, rel.tag, render_terms(family.graph, rel.lhs),
                                      render_terms(family.graph, rel.rhs)))
    _log.debug("%s: %d relations from schemas %s", p, len(result),
               sorted({r.schema for r in result}))
    return result


def presentation_of(p: SurfaceParams, extra_edges: Iterable[Tuple] = ()) -> Presentation:
    family = build_graph(p, extra_edges)
    base = artin_presentation(family.graph)
    emitted = emit_relators(p, family)
    result = base.extend([e.lhs + invert_word(e.rhs) for e in emitted],
                         [e.tag for e in emitted], [(e.lhs, e.rhs) for e in emitted])
    result.metadata.update((name, role_doc(name)) for name in family.graph.vertices)
    return result


def eliminate_boundary_twists(pres: Presentation, p: SurfaceParams) -> Presentation:
    """
    Remove u1..ur by Tietze moves along the relations expressing them.
    """
    if p.r == 0:
        return pres
    if p.g < 2:
        raise ParameterError("the u generators can only be eliminated when g >= 2")
    first, rest = ("PR5a", "PR6a") if p.flavor == "pure" else ("R5", "R6")
    for i in range(1, p.r + 1):
        tag = first if i == 1 else _tag(rest, i=i - 1)
        pres = tietze_eliminate(pres, u(i), pres.tag_index(tag))
    return pres


def classify_parabolic(family: GraphFamily,
                       vertices: Iterable[str]) -> Tuple[StandardType, Dict[str, str]]:
    sub = family.graph.induced(vertices)
    if not sub.is_connected():
        raise NotFiniteTypeError("{%s} is not connected" % ", ".join(sub.vertices))
    found = classify_finite_type(sub)
    if found is None:
        raise NotFiniteTypeError("{%s} is not of finite type" % ", ".join(sub.vertices))
    return found


class DeltaCheck(NamedTuple):
    tag: str
    vertices: Tuple[str, ...]
    expected: str
    found: str

    @property
    def ok(self) -> bool:
        return self.expected == self.found


class WellformedReport(NamedTuple):
    params: SurfaceParams
    checks: Tuple[DeltaCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> List[DeltaCheck]:
        return [c for c in self.checks if not c.ok]


def schema_wellformed(p: SurfaceParams) -> WellformedReport:
    family = build_graph(p)
    checks = []
    for rel in relation_templates(p):
        for term in rel.deltas():
            if not term.vertices:
                continue
            try:
                found = str(classify_parabolic(family, term.vertices)[0])
            except (GraphError, NotFiniteTypeError) as e:
                found = "error: %s" % e
            checks.append(DeltaCheck(rel.tag, term.vertices, term.expected, found))
    report = WellformedReport(p, tuple(checks))
    for failure in report.failures():
        _log.warning("%s %s: {%s} is %s, expected %s", p, failure.tag,
                     ", ".join(failure.vertices), failure.found, failure.expected)
    return report


def expected_generator_count(p: SurfaceParams) -> int:
    p.validate()
    g, r, n = p.g, p.r, p.n
    spine = (2 * g - 1) + (1 if g >= 2 else 0)
    if p.flavor == "pure":
        return (n + r + 1) + spine + r
    if p.closed:
        return (2 if n >= 1 else 1) + spine + max(n - 1, 0)
    xs = r + 2 if (n >= 1 or r >= 1) else r + 1
    return xs + spine + r + max(n - 1, 0)


def expected_relation_count(p: SurfaceParams) -> int:
    """
    Closed-form number of emitted relations, Artin relators excluded.
    """
    p.validate()
    g, r, n = p.g, p.r, p.n
    count = int(g >= 2) + int(g >= 3)
    if p.flavor == "pure":
        top = r + n - 1
        count += comb(top + 1, 3) + (comb(top + 1, 2) if g >= 2 else 0)
        if g >= 2:
            count += n if r == 0 else 1 + (r - 1) + n
        return count
    if p.closed:
        if n == 0:
            return count + 1
        # R8a and R9a when g >= 2, R9b and R9c when g = 1
        return count + int(n >= 2) + 2
    count += comb(r + 1, 3)
    if g >= 2:
        count += comb(r + 1, 2) + int(r >= 1) + max(r - 1, 0)
    count += int(n >= 2) + int(n >= 1 and g >= 2)
    return count


def matsumoto_schemas(p: SurfaceParams) -> List[str]:
    """
    Schema ids of the bounded (and, when closed, the closed) genus g
    presentation, in the pure naming when the flavor is pure.
    """
    prefix = "PR" if p.flavor == "pure" else ("M" if p.closed else "R")
    result = [prefix + "1"] if p.g >= 2 else []
    if p.g >= 3:
        result.append(prefix + "2")
    if p.closed:
        result.append("M3")
    return result


class AuditRow(NamedTuple):
    params: SurfaceParams
    problems: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems


def audit_point(p: SurfaceParams) -> AuditRow:
    problems = []
    report = schema_wellformed(p)
    problems.extend("%s {%s} is %s, expected %s"
                    % (c.tag, ",".join(c.vertices), c.found, c.expected)
                    for c in report.failures())
    try:
        pres = presentation_of(p)
    except (PresentationError, GraphError, NotFiniteTypeError) as e:
        return AuditRow(p, tuple(problems + ["presentation failed: %s" % e]))
    generators = expected_generator_count(p)
    if len(pres.generators) != generators:
        problems.append("%d generators, expected %d" % (len(pres.generators), generators))
    artin = generators * (generators - 1) // 2
    relations = expected_relation_count(p)
    if len(pres.relators) != artin + relations:
        problems.append("%d relators, expected %d" % (len(pres.relators), artin + relations))
    if p.n == 0 and p.r == 0:
        schemas = [s for s in pres.schema_ids() if s != "artin"]
        if schemas != matsumoto_schemas(p):
            problems.append("schemas %s differ from %s" % (schemas, matsumoto_schemas(p)))
    return AuditRow(p, tuple(problems))


def grid_points(g_max: int = 4, r_max: int = 3, n_max: int = 4) -> List[SurfaceParams]:
    points = []
    for g in range(1, g_max + 1):
        for r in range(r_max + 1):
            for n in range(n_max + 1):
                points.append(SurfaceParams(g, r, n, "full"))
                points.append(SurfaceParams(g, r, n, "pure"))
                if r == 0:
                    points.append(SurfaceParams(g, 0, n, "full", closed=True))
    return points


def grid_audit(g_max: int = 4, r_max: int = 3, n_max: int = 4, show_progress: bool = False,
               log_level: int = logging.INFO) -> List[AuditRow]:
    """
    Run the well-formedness and inventory checks over every supported
    parameter point of the grid.
    """
    log = logging.getLogger("grid")
    log.setLevel(log_level)
    points = grid_points(g_max, r_max, n_max)
    log.info("auditing %d parameter points", len(points))
    iterator = progress.bar(points, expected_size=len(points)) if show_progress else points
    rows = [audit_point(p) for p in iterator]
    bad = [row for row in rows if not row.ok]
    for row in bad:
        log.warning("%s: %s", row.params, "; ".join(row.problems))
    log.info("%d of %d points passed", len(rows) - len(bad), len(rows))
    return rows


def params_from_args(args) -> SurfaceParams:
    return SurfaceParams(args.g, args.r, args.n, args.flavor, args.closed).validate()


def render_presentation(args) -> str:
    p = params_from_args(args)
    pres = presentation_of(p)
    if args.eliminate_u:
        pres = eliminate_boundary_twists(pres, p)
    _log.info("%s: %d generators, %d relators", p, len(pres.generators), len(pres.relators))
    return FORMATTERS[args.format](pres)


def print_presentation(args) -> int:
    text = render_presentation(args)
    if args.output:
        with open(args.output, "w") as fout:
            fout.write(text + "\n")
        _log.info("wrote %s", args.output)
    else:
        print(text)
    return 0


def export_presentation(args) -> int:
    """
    Write either the surface presentation to ``--output`` or the shipped
    derivation transcripts into ``--transcripts``.
    """
    if args.transcripts:
        for path in write_transcripts(args.transcripts):
            _log.info("wrote %s", path)
        return 0
    if not args.output or args.g is None:
        raise ParameterError("export needs --g and --output FILE, or --transcripts DIR")
    return print_presentation(args)
