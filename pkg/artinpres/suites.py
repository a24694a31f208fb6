"""
Named suites of claims and the runner that executes them.
"""
from concurrent.futures import ThreadPoolExecutor
import itertools
import logging
import os
import time
from typing import Callable, Dict, List, NamedTuple, Sequence, Union

from clint.textui import progress
import numpy as np

from artinpres.coxeter import CoxeterGraph, StandardType, enumerate_small_group, weak_order_gcd
from artinpres.garside import ArtinWord, delta_word, inverse, is_left_weighted, normal_form, \
    parse_artin_word, random_word, render, tau, word_product, words_equal, conjugate_by_delta
from artinpres.mcg import SurfaceParams, audit_point, grid_points, matsumoto_schemas, \
    presentation_of
from artinpres.presentation import COSET_CAP, ExtensionData, Presentation, \
    abelianization_invariants, compose_extension, coset_enumeration_order, read_presentation, \
    rename_generators
from artinpres.transcripts import CLAIMS, claim_ids, claim_script, commutator_word, \
    quotient_presentation
from artinpres.verifier import SEARCH_DEPTH, bounded_search, check_derivation, read_script
from artinpres.words import parse_word

VERIFIED = "verified"
REFUTED = "refuted"
DEFAULT_SEED = 1
WORDS_PER_TYPE = 1000
MAX_WORD_LENGTH = 40
PROPERTY_TYPES = ("A3", "B3", "D4", "D6")
ORACLE_TYPES = ("A3", "B3", "D4")
CACHE_DIR_ENV = "ARTINPRES_CACHE_DIR"


def corrected(value) -> str:
    return "corrected(%s)" % value


class SuiteConfig(NamedTuple):
    seed: int = DEFAULT_SEED
    words: int = WORDS_PER_TYPE
    max_length: int = MAX_WORD_LENGTH
    depth: int = SEARCH_DEPTH
    cap: int = COSET_CAP
    show_progress: bool = False


Outcome = Union[bool, str]


class Claim(NamedTuple):
    id: str
    check: Callable[[SuiteConfig], Outcome]


class ClaimResult(NamedTuple):
    claim: str
    status: str
    elapsed: float
    detail: str = ""

    @property
    def refuted(self) -> bool:
        return self.status == REFUTED


class SuiteReport(NamedTuple):
    suite: str
    results: List[ClaimResult]

    @property
    def ok(self) -> bool:
        return not any(r.refuted for r in self.results)

    def machine_lines(self) -> List[str]:
        return ["claim %s %s" % (r.claim, r.status) for r in self.results]

    def table(self) -> str:
        width = max([len(r.claim) for r in self.results] + [5])
        lines = ["%-*s  %-14s  %8s" % (width, "claim", "status", "seconds")]
        for r in self.results:
            line = "%-*s  %-14s  %8.3f" % (width, r.claim, r.status, r.elapsed)
            if r.detail:
                line += "  " + r.detail
            lines.append(line)
        return "\n".join(lines)


def standard(text: str) -> CoxeterGraph:
    return StandardType.parse(text).instantiate()


def coxeter_word(graph: CoxeterGraph, k: int) -> ArtinWord:
    """(x1 x2 ... xl)^k"""
    return ArtinWord(graph, [(name, 1) for name in graph.vertices] * k)


def delta_of(graph: CoxeterGraph, subset: Sequence[str], k: int = 1) -> ArtinWord:
    """
    Delta^k of a vertex set whose components are all of finite type.
    """
    sub = graph.induced(subset)
    parts = [delta_word(graph, c.vertices) for c in sub.components()]
    return word_product(graph, parts) ** k


def names(prefix_range: Sequence[int]) -> List[str]:
    return ["x%d" % i for i in prefix_range]


# Explicit fundamental elements of the classical and exceptional types.

def _power_claim(type_text: str, delta_power: int, exponent: int) -> Claim:
    def check(_):
        graph = standard(type_text)
        return words_equal(delta_word(graph) ** delta_power, coxeter_word(graph, exponent))
    return Claim("prop2.8:%s" % type_text, check)


def _e7_claim(claimed: int = 15) -> Claim:
    def check(_):
        graph = standard("E7")
        target = normal_form(delta_word(graph))
        for k in range(1, 2 * claimed + 1):
            if normal_form(coxeter_word(graph, k)) == target:
                return VERIFIED if k == claimed else corrected(k)
        return REFUTED
    return Claim("prop2.8:E7", check)


def prop_2_8_claims() -> List[Claim]:
    claims = [_power_claim("A%d" % l, 2, l + 1) for l in range(1, 6)]
    claims.extend(_power_claim("B%d" % l, 1, l) for l in range(2, 5))
    claims.append(_power_claim("D4", 1, 3))
    claims.append(_power_claim("D5", 2, 8))
    claims.append(_power_claim("D6", 1, 5))
    claims.append(_power_claim("E6", 2, 12))
    claims.append(_e7_claim())
    return claims


def _recursion_claim(family: str, l: int) -> Claim:
    def check(_):
        graph = standard("%s6" % family)
        if family == "A":
            head = names(range(1, l + 1))
        elif family == "B":
            head = names(range(l, 1, -1)) + names(range(1, l + 1))
        else:
            head = names(range(l, 2, -1)) + ["x1", "x2"] + names(range(3, l + 1))
        lhs = delta_of(graph, names(range(1, l + 1)))
        rhs = ArtinWord(graph, [(n, 1) for n in head]) * delta_of(graph, names(range(1, l)))
        return words_equal(lhs, rhs)
    return Claim("prop2.9:%s%d" % (family, l), check)


def prop_2_9_claims() -> List[Claim]:
    claims = [_recursion_claim("A", l) for l in range(2, 7)]
    claims.extend(_recursion_claim("B", l) for l in range(2, 7))
    claims.extend(_recursion_claim("D", l) for l in range(3, 7))
    return claims


def _x(graph: CoxeterGraph, i: int, k: int = 1) -> ArtinWord:
    return ArtinWord(graph, [("x%d" % i, 1 if k > 0 else -1)] * abs(k))


def _conj(graph: CoxeterGraph, subset: Sequence[str], middle: ArtinWord) -> ArtinWord:
    """Delta^-1(X) middle Delta(X)"""
    d = delta_word(graph, subset)
    return ~d * middle * d


def lemma_3_5_claims() -> List[Claim]:
    claims = []
    for l in (4, 5, 6):
        def first(_, l=l):
            graph = standard("D%d" % l)
            short, long_ = names(range(2, l)), names(range(2, l + 1))
            a = _conj(graph, short, _x(graph, 1, -1) * _x(graph, 2))
            b = _conj(graph, long_, _x(graph, 2, -1) * _x(graph, 1))
            return words_equal(a * b, _x(graph, l) * a * _x(graph, l, -1))

        def second(_, l=l):
            graph = standard("D%d" % l)
            short, long_ = names(range(2, l)), names(range(2, l + 1))
            a = _conj(graph, long_, _x(graph, 2, -1) * _x(graph, 1))
            b = _conj(graph, short, _x(graph, 2, -1) * _x(graph, 1))
            return words_equal(a * b, _x(graph, l - 1) * a * _x(graph, l - 1, -1))

        claims.append(Claim("lemma3.5:D%d(1)" % l, first))
        claims.append(Claim("lemma3.5:D%d(2)" % l, second))
    return claims


def _lemma_3_6_first(_):
    graph = standard("D6")
    twist = _x(graph, 1, -1) * _x(graph, 2)
    w1, w2, w3 = (_conj(graph, s, twist) for s in
                  (["x1", "x3"], ["x1", "x3", "x4"], ["x1", "x3", "x4", "x5"]))
    lhs = (_x(graph, 2, -1) * _x(graph, 1) * ~w1 * ~w2 * ~w3 *
           _x(graph, 6) * w3 * _x(graph, 6, -1) * w1)
    rhs = delta_word(graph, names(range(2, 7))) ** -2 * delta_word(graph)
    return words_equal(lhs, rhs)


def _lemma_3_6_second(_):
    graph = standard("D4")
    inner = _conj(graph, ["x1", "x3", "x4"], _x(graph, 1, -1) * _x(graph, 2))
    w = _x(graph, 2, -1) * inner * _x(graph, 2)
    lhs = _x(graph, 1, -1) * _x(graph, 2) * w
    rhs = delta_word(graph, ["x1", "x3", "x4"]) ** -2 * delta_word(graph)
    return words_equal(lhs, rhs)


LEMMA_3_8_FIRST = ("x6 x5 x4 x3 x1 x2^-1 x3^-1 x4^-1 x5^-1 x6^-1 x5 x4 x3 x2 x1^-1 x3^-1 x4^-1 "
                   "x5^-1 x4 x3 x1 x2^-1 x3^-1 x4^-1 x2 x3 x2 x1^-1 x3^-1 x2^-1")
LEMMA_3_8_SECOND = "x2 x3 x2^-1 x1 x3^-1 x2^-1 x4 x3 x2 x1^-1 x3^-1 x4^-1"


def _lemma_3_8_first(_):
    graph = standard("D6")
    lhs = delta_word(graph, ["x1", "x3", "x4", "x5", "x6"]) ** 2 * ~delta_word(graph)
    return words_equal(lhs, parse_artin_word(graph, LEMMA_3_8_FIRST))


def _lemma_3_8_second(_):
    graph = standard("D4")
    lhs = delta_word(graph) * delta_word(graph, ["x1", "x3", "x4"]) ** -2
    return words_equal(lhs, parse_artin_word(graph, LEMMA_3_8_SECOND))


def lemma_3_6_claims() -> List[Claim]:
    return [Claim("lemma3.6(i)", _lemma_3_6_first), Claim("lemma3.6(ii)", _lemma_3_6_second)]


def lemma_3_8_claims() -> List[Claim]:
    return [Claim("lemma3.8(i)", _lemma_3_8_first), Claim("lemma3.8(ii)", _lemma_3_8_second)]


def lemma_3_4_claims() -> List[Claim]:
    def make(claim):
        def check(config):
            presentation = quotient_presentation()
            result = check_derivation(claim_script(claim, presentation))
            if result:
                return True
            logging.getLogger("suites").warning(
                "%s transcript rejected (%s), trying a bounded search", claim, result.reason)
            found = bounded_search(presentation, commutator_word(*CLAIMS[claim]), config.depth)
            if found is not None and check_derivation(found):
                return True
            return "%s: %s" % (REFUTED, result.reason)
        return Claim(claim, check)
    return [make(c) for c in claim_ids()]


def garside_properties(graph: CoxeterGraph, count: int, max_length: int,
                       rng: np.random.RandomState, show_progress: bool = False) -> List[str]:
    """
    Random-word checks of the normal form. Returns the failures.
    """
    failures = []
    t = tau(graph)
    delta = delta_word(graph)
    for s in graph.vertices:
        image = normal_form(delta * ArtinWord(graph, [(s, 1)]) * ~delta)
        if image != normal_form(ArtinWord(graph, [(t[s], 1)])):
            failures.append("Delta %s Delta^-1 is not %s" % (s, t[s]))
    words = range(count)
    if show_progress:
        words = progress.bar(words, expected_size=count)
    for _ in words:
        w = random_word(graph, max_length, rng)
        nf = normal_form(w)
        if not is_left_weighted(nf):
            failures.append("%s: normal form not left-weighted" % w)
        if normal_form(render(nf)) != nf:
            failures.append("%s: normal form not idempotent" % w)
        product = ArtinWord(graph, render(nf).letters + render(normal_form(inverse(w))).letters)
        if not normal_form(product).is_identity:
            failures.append("%s: w w^-1 is not trivial" % w)
        if normal_form(delta * w * ~delta) != normal_form(conjugate_by_delta(w)):
            failures.append("%s: conjugation by Delta disagrees with tau" % w)
    return failures


def garside_claims() -> List[Claim]:
    def make(type_text):
        def check(config):
            seed = config.seed + PROPERTY_TYPES.index(type_text)
            failures = garside_properties(standard(type_text), config.words, config.max_length,
                                          np.random.RandomState(seed), config.show_progress)
            return True if not failures else "%s: %s" % (REFUTED, failures[0])
        return Claim("garside-props:%s" % type_text, check)
    return [make(t) for t in PROPERTY_TYPES]


def gcd_oracle(graph: CoxeterGraph) -> List[str]:
    elements = enumerate_small_group(graph)
    prefix_sets = {}
    for w in elements:
        prefix_sets[w.key] = {p.key for p in elements if p.length + (~p * w).length == w.length}
    by_key = {w.key: w for w in elements}
    failures = []
    for u, v in itertools.product(elements, repeat=2):
        common = prefix_sets[u.key] & prefix_sets[v.key]
        meet = max((by_key[k] for k in common), key=lambda p: p.length)
        if weak_order_gcd(u, v) != meet:
            failures.append("%s, %s" % (" ".join(u.reduced_word()), " ".join(v.reduced_word())))
    return failures


def gcd_claims() -> List[Claim]:
    def make(type_text):
        def check(_):
            failures = gcd_oracle(standard(type_text))
            return True if not failures else "%s: gcd(%s) differs" % (REFUTED, failures[0])
        return Claim("gcd-oracle:%s" % type_text, check)
    return [make(t) for t in ORACLE_TYPES]


def matsumoto_claims() -> List[Claim]:
    claims = []
    for g in range(1, 5):
        def pure(_, g=g):
            p = presentation_of(SurfaceParams(g, 0, 0, "pure"))
            full = presentation_of(SurfaceParams(g, 0, 0, "full"))
            schemas = [s for s in p.schema_ids() if s != "artin"]
            return (schemas == matsumoto_schemas(SurfaceParams(g, 0, 0, "pure")) and
                    p.generators == full.generators and p.relators == full.relators)

        def closed(_, g=g):
            params = SurfaceParams(g, 0, 0, "full", closed=True)
            schemas = [s for s in presentation_of(params).schema_ids() if s != "artin"]
            return schemas == matsumoto_schemas(params)

        claims.append(Claim("matsumoto:pure(g=%d)" % g, pure))
        claims.append(Claim("matsumoto:closed(g=%d)" % g, closed))
    return claims


def _cyclic(name: str, order: int = None) -> Presentation:
    relators = [((name, 1),) * order] if order else []
    return Presentation([name], relators, ["order(%s)" % name] if order else [])


def extension_claims() -> List[Claim]:
    def trivial_kernel(_):
        quotient = _cyclic("x", 2)
        data = ExtensionData(Presentation([]), quotient, [()], {})
        result = compose_extension(data)
        renamed = rename_generators(quotient, {"x": data.lift_name("x")})
        return result.generators == renamed.generators and result.relators == renamed.relators

    def infinite_cyclic(_):
        data = ExtensionData(_cyclic("k"), _cyclic("x", 2), [parse_word("k")],
                             {("x", "k"): parse_word("k")})
        result = compose_extension(data)
        return len(result.relators) == 2 and abelianization_invariants(result) == [0]

    def order_six(config):
        data = ExtensionData(_cyclic("a", 3), _cyclic("x", 2), [()],
                             {("x", "a"): parse_word("a^-1")})
        order = coset_enumeration_order(compose_extension(data), config.cap)
        return True if order == 6 else "%s: order %d" % (REFUTED, order)

    return [Claim("extension:trivial-kernel", trivial_kernel),
            Claim("extension:infinite-cyclic", infinite_cyclic),
            Claim("extension:order-six", order_six)]


def grid_claims() -> List[Claim]:
    def make(p):
        def check(_):
            row = audit_point(p)
            return True if row.ok else "%s: %s" % (REFUTED, row.problems[0])
        return Claim("grid:g=%d,r=%d,n=%d,%s%s" % (p.g, p.r, p.n, p.flavor,
                                                   ",closed" if p.closed else ""), check)
    return [make(p) for p in grid_points()]


SUITES = {
    "prop2.8": prop_2_8_claims,
    "prop2.9": prop_2_9_claims,
    "lemma3.4": lemma_3_4_claims,
    "lemma3.5": lemma_3_5_claims,
    "lemma3.6": lemma_3_6_claims,
    "lemma3.8": lemma_3_8_claims,
    "garside-props": garside_claims,
    "gcd-oracle": gcd_claims,
    "matsumoto": matsumoto_claims,
    "extension": extension_claims,
    "grid": grid_claims,
}  # type: Dict[str, Callable[[], List[Claim]]]


def suite_ids() -> List[str]:
    return list(SUITES) + ["all"]


def _run_claim(claim: Claim, config: SuiteConfig, log: logging.Logger) -> ClaimResult:
    started = time.perf_counter()
    try:
        outcome = claim.check(config)
    except Exception as e:
        log.exception("claim %s raised", claim.id)
        outcome = "%s: %s: %s" % (REFUTED, type(e).__name__, e)
    elapsed = time.perf_counter() - started
    if outcome is True:
        status, detail = VERIFIED, ""
    elif outcome is False:
        status, detail = REFUTED, ""
    else:
        status, _, detail = outcome.partition(": ")
    if status == REFUTED:
        log.warning("claim %s refuted %s", claim.id, detail)
    elif status != VERIFIED:
        log.warning("claim %s: %s", claim.id, status)
    return ClaimResult(claim.id, status, elapsed, detail)


def run_suite(suite: str, config: SuiteConfig = SuiteConfig(), workers: int = 1,
              log_level: int = logging.INFO) -> SuiteReport:
    """
    Execute every claim of ``suite``; results are sorted by claim id, so
    the report does not depend on ``workers``.
    """
    log = logging.getLogger("suites")
    log.setLevel(log_level)
    if suite == "all":
        claims = [c for make in SUITES.values() for c in make()]
    elif suite in SUITES:
        claims = SUITES[suite]()
    else:
        raise KeyError(suite)
    log.info("running %d claims of %s on %d workers", len(claims), suite, workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda c: _run_claim(c, config, log), claims))
    else:
        results = [_run_claim(c, config, log) for c in claims]
    results.sort(key=lambda r: r.claim)
    report = SuiteReport(suite, results)
    log.info("%s: %d claims, %d refuted", suite, len(results),
             sum(r.refuted for r in results))
    return report


def write_cache(report: SuiteReport) -> str:
    """
    Store the claim lines under $ARTINPRES_CACHE_DIR/<suite>.txt when the
    variable is set. Returns the path or an empty string.
    """
    directory = os.environ.get(CACHE_DIR_ENV)
    if not directory:
        return ""
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, "%s.txt" % report.suite)
    with open(path, "w") as fout:
        fout.write("\n".join(report.machine_lines()) + "\n")
    return path


def verify(args) -> int:
    """
    Check a derivation script file or run a named suite. Exit status 4
    when the script is rejected or a claim is refuted.
    """
    log_level = getattr(args, "log_level", logging.INFO)
    log = logging.getLogger("verify")
    log.setLevel(log_level)
    if args.script:
        presentation = read_presentation(args.presentation) if args.presentation else None
        result = check_derivation(read_script(args.script, presentation))
        print("valid" if result else "invalid: %s" % result.reason)
        return 0 if result else 4
    config = SuiteConfig(seed=args.seed, words=args.words, depth=args.depth, cap=args.cap,
                         show_progress=args.progress)
    report = run_suite(args.suite, config, workers=args.workers, log_level=log_level)
    print(report.table())
    print()
    print("\n".join(report.machine_lines()))
    path = write_cache(report)
    if path:
        log.info("wrote %s", path)
    return 0 if report.ok else 4
