import unittest

from artinpres.coxeter import CoxeterGraph, StandardType
from artinpres.presentation import ExtensionData, Presentation, PresentationError, \
    abelianization_invariants, artin_presentation, braid_product, compose_extension, \
    coset_enumeration_order, format_gap, format_machine, format_text, parse_machine, \
    parse_presentation, parse_text, read_presentation, rename_generators, tietze_eliminate
from artinpres.words import parse_word

DATA = "artinpres/tests/data/"


def cyclic(name, order=None):
    if order is None:
        return Presentation([name])
    return Presentation([name], [parse_word("%s^%d" % (name, order))], ["order(%s)" % name])


class PresentationTests(unittest.TestCase):
    def test_artin(self):
        p = artin_presentation(StandardType.parse("A2").instantiate())
        self.assertEqual(p.generators, ("x1", "x2"))
        self.assertEqual(p.relators, (parse_word("x1 x2 x1 x2^-1 x1^-1 x2^-1"),))
        self.assertEqual(p.tags, ("artin(x1,x2)",))
        self.assertEqual(p.relation_pairs,
                         [("artin(x1,x2)", (parse_word("x1 x2 x1"), parse_word("x2 x1 x2")))])

    def test_artin_counts(self):
        p = artin_presentation(StandardType.parse("D5").instantiate())
        self.assertEqual(len(p), 10)
        commuting = artin_presentation(CoxeterGraph(["a", "b"]))
        self.assertEqual(commuting.relators, (parse_word("a b a^-1 b^-1"),))

    def test_braid_product(self):
        self.assertEqual(braid_product("a", "b", 4), parse_word("a b a b"))
        self.assertEqual(braid_product("a", "b", 3), parse_word("a b a"))

    def test_normalized(self):
        p = Presentation(["a", "b"], [parse_word("a b a^-1"), parse_word("b b^-1 a")])
        self.assertEqual(p.relators, (parse_word("b"), parse_word("a")))

    def test_undeclared(self):
        with self.assertRaises(PresentationError):
            Presentation(["a"], [parse_word("a b")])
        with self.assertRaises(PresentationError):
            Presentation(["a"], [parse_word("a")], ["t"], [(parse_word("a"), parse_word("c"))])
        with self.assertRaises(PresentationError):
            Presentation(["a", "a"])
        with self.assertRaises(PresentationError):
            Presentation(["a"], [parse_word("a")], ["t", "u"])

    def test_tags(self):
        p = Presentation(["a", "b"], [parse_word("a"), parse_word("b"), parse_word("a b")],
                         ["R3(i=1)", "R3(i=2)", "R5"])
        self.assertEqual(p.schema_ids(), ["R3", "R5"])
        self.assertEqual(p.tag_index("R5"), 2)
        with self.assertRaises(PresentationError):
            p.tag_index("R9")

    def test_rename(self):
        p = artin_presentation(StandardType.parse("A2").instantiate())
        renamed = rename_generators(p, {"x1": "s"})
        self.assertEqual(renamed.generators, ("s", "x2"))
        self.assertEqual(renamed.relators[0][0], ("s", 1))
        with self.assertRaises(PresentationError):
            rename_generators(p, {"x1": "x2"})
        with self.assertRaises(PresentationError):
            rename_generators(p, {"x3": "s"})


class FormatTests(unittest.TestCase):
    def setUp(self):
        self.p = read_presentation(DATA + "a2.pres")

    def test_read(self):
        self.assertEqual(self.p.generators, ("x1", "x2"))
        self.assertEqual(self.p.tags, ("artin(x1,x2)",))
        self.assertEqual(self.p.metadata["x1"], "first braid twist")
        self.assertEqual(self.p, artin_presentation(StandardType.parse("A2").instantiate()))

    def test_machine_round_trip(self):
        again = parse_machine(format_machine(self.p))
        self.assertEqual(again, self.p)
        self.assertEqual(again.pairs, self.p.pairs)
        self.assertEqual(again.metadata, self.p.metadata)

    def test_text_round_trip(self):
        text = format_text(self.p)
        self.assertEqual(text, "< x1, x2 | x1 x2 x1 x2^-1 x1^-1 x2^-1 >")
        again = parse_presentation(text)
        self.assertEqual(again.generators, self.p.generators)
        self.assertEqual(again.relators, self.p.relators)

    def test_text_errors(self):
        with self.assertRaises(PresentationError):
            parse_text("x1, x2 | x1")
        with self.assertRaises(PresentationError):
            parse_text("< a | a ( >")
        with self.assertRaises(PresentationError):
            parse_machine("tag lonely\n")

    def test_gap(self):
        gap = format_gap(self.p)
        self.assertIn('F := FreeGroup("x1", "x2");;', gap)
        self.assertIn("x1*x2*x1*x2^-1*x1^-1*x2^-1", gap)
        self.assertIn("G := F / [", gap)
        self.assertEqual(format_gap(Presentation([])), "F := FreeGroup(0);;\nG := F / [];;\n")


class InvariantTests(unittest.TestCase):
    def test_abelianization(self):
        self.assertEqual(abelianization_invariants(read_presentation(DATA + "a2.pres")), [0])
        self.assertEqual(abelianization_invariants(artin_presentation(CoxeterGraph(["a", "b"]))),
                         [0, 0])
        self.assertEqual(abelianization_invariants(cyclic("a", 6)), [6])
        two_three = Presentation(["a", "b"], [parse_word("a^2"), parse_word("b^3")])
        self.assertEqual(abelianization_invariants(two_three), [6])
        self.assertEqual(abelianization_invariants(Presentation(["a", "b"], [parse_word("a^2")])),
                         [2, 0])
        self.assertEqual(abelianization_invariants(Presentation([])), [])

    def test_coset_enumeration(self):
        s3 = artin_presentation(StandardType.parse("A2").instantiate()).extend(
            [parse_word("x1^2")], ["order(x1)"])
        self.assertEqual(coset_enumeration_order(s3), 6)
        self.assertEqual(coset_enumeration_order(cyclic("a", 5)), 5)
        self.assertEqual(coset_enumeration_order(Presentation([])), 1)

    def test_coset_cap(self):
        with self.assertRaises(PresentationError):
            coset_enumeration_order(Presentation(["a", "b"]), max_cosets=100)

    def test_tietze(self):
        p = Presentation(["a", "b", "c"], [parse_word("a b c^-1"), parse_word("c a")],
                         ["def(c)", "rel"])
        q = tietze_eliminate(p, "c", 0)
        self.assertEqual(q.generators, ("a", "b"))
        self.assertEqual(q.relators, (parse_word("a b a"),))
        self.assertEqual(q.tags, ("rel",))
        with self.assertRaises(PresentationError):
            tietze_eliminate(Presentation(["a"], [parse_word("a a")]), "a", 0)
        with self.assertRaises(PresentationError):
            tietze_eliminate(p, "d", 0)

    def test_tietze_keeps_trivial_relators(self):
        p = Presentation(["a", "b", "c"], [parse_word("a b c^-1"), parse_word("c b^-1 a^-1")],
                         ["def(c)", "inverse"], [None, (parse_word("c"), parse_word("a b"))])
        q = tietze_eliminate(p, "c", 0)
        self.assertEqual(q.relators, ((),))
        self.assertEqual(q.tags, ("inverse",))
        self.assertEqual(q.pairs, ((parse_word("a b"), parse_word("a b")),))
        self.assertEqual(coset_enumeration_order(
            tietze_eliminate(Presentation(["a", "b"], [parse_word("b a^-2"), parse_word("b")],
                                          ["def(b)", "b"]), "b", 0)), 2)


class ExtensionTests(unittest.TestCase):
    def test_trivial_kernel(self):
        quotient = cyclic("x", 2)
        data = ExtensionData(Presentation([]), quotient, [()], {})
        result = compose_extension(data)
        self.assertEqual(result.generators, ("x_lift",))
        self.assertEqual(result.relators, rename_generators(quotient, {"x": "x_lift"}).relators)
        self.assertEqual(result.tags, ("lift(1)",))

    def test_infinite_cyclic(self):
        data = ExtensionData(cyclic("k"), cyclic("x", 2), [parse_word("k")],
                             {("x", "k"): parse_word("k")})
        result = compose_extension(data)
        self.assertEqual(result.generators, ("x_lift", "k"))
        self.assertEqual(result.tags, ("lift(1)", "conj(x_lift,k)"))
        self.assertEqual(abelianization_invariants(result), [0])

    def test_order_six(self):
        data = ExtensionData(cyclic("a", 3), cyclic("x", 2), [()],
                             {("x", "a"): parse_word("a^-1")}, {"x": "t"})
        result = compose_extension(data)
        self.assertEqual(result.generators, ("t", "a"))
        self.assertEqual(len(result), 3)
        self.assertEqual(coset_enumeration_order(result), 6)
        self.assertEqual(abelianization_invariants(result), [2])

    def test_invalid(self):
        kernel, quotient = cyclic("a", 3), cyclic("x", 2)
        with self.assertRaises(PresentationError):
            compose_extension(ExtensionData(kernel, quotient, [()], {}))
        with self.assertRaises(PresentationError):
            compose_extension(ExtensionData(kernel, quotient, [], {("x", "a"): ()}))
        with self.assertRaises(PresentationError):
            compose_extension(ExtensionData(kernel, quotient, [()], {("x", "a"): ()},
                                            {"x": "a"}))
        with self.assertRaises(PresentationError):
            compose_extension(ExtensionData(kernel, quotient, [parse_word("x")],
                                            {("x", "a"): ()}))


if __name__ == '__main__':
    unittest.main()
