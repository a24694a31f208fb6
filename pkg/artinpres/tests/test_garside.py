import argparse
import contextlib
import io
import unittest

import numpy as np

from artinpres.coxeter import GraphError, NotFiniteTypeError, StandardType, read_graph
from artinpres.garside import ArtinWord, conjugate_by_delta, delta_power_word, delta_word, \
    format_normal_form, is_left_weighted, is_trivial, normal_form, parse_artin_word, \
    parse_normal_form, print_delta, random_word, render, solve_words, tau, words_equal

DATA = "artinpres/tests/data/"


def standard(text):
    return StandardType.parse(text).instantiate()


def run(handler, **kwargs):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = handler(argparse.Namespace(**kwargs))
    return code, out.getvalue().strip()


class WordTests(unittest.TestCase):
    def setUp(self):
        self.a3 = standard("A3")

    def test_free_reduction(self):
        w = parse_artin_word(self.a3, "x1 x2 x2^-1 x3")
        self.assertEqual(str(w), "x1 x3")
        self.assertEqual(len(w), 2)
        self.assertEqual(w * ~w, ArtinWord(self.a3))

    def test_power(self):
        w = parse_artin_word(self.a3, "x1 x2")
        self.assertEqual(str(w ** 3), "x1 x2 x1 x2 x1 x2")
        self.assertEqual(w ** -1, ~w)
        self.assertTrue(w.is_positive)
        self.assertFalse((~w).is_positive)

    def test_unknown_generator(self):
        with self.assertRaises(GraphError):
            parse_artin_word(self.a3, "x4")
        with self.assertRaises(GraphError):
            parse_artin_word(self.a3, "x1") * parse_artin_word(standard("A2"), "x1")


class NormalFormTests(unittest.TestCase):
    def test_braid_relation(self):
        a2 = standard("A2")
        self.assertTrue(words_equal(parse_artin_word(a2, "x1 x2 x1"),
                                    parse_artin_word(a2, "x2 x1 x2")))
        self.assertFalse(words_equal(parse_artin_word(a2, "x1 x2"),
                                     parse_artin_word(a2, "x2 x1")))

    def test_central_power(self):
        nf = normal_form(parse_artin_word(standard("A3"), "(x1 x2 x3)^4"))
        self.assertEqual(nf.infimum, 2)
        self.assertEqual(nf.simples, ())
        self.assertEqual(format_normal_form(nf), "delta^2")

    def test_empty(self):
        nf = normal_form(ArtinWord(standard("A2")))
        self.assertTrue(nf.is_identity)
        self.assertEqual(format_normal_form(nf), "delta^0")

    def test_inverse_letter(self):
        nf = normal_form(parse_artin_word(standard("A2"), "x1^-1"))
        self.assertEqual(format_normal_form(nf), "delta^-1 [x1 x2]")
        self.assertEqual(nf.supremum, 0)
        self.assertEqual(nf.canonical_length, 1)

    def test_trivial(self):
        b3 = standard("B3")
        self.assertTrue(is_trivial(parse_artin_word(b3, "x1 x2 x1 x2 x2^-1 x1^-1 x2^-1 x1^-1")))
        self.assertFalse(is_trivial(parse_artin_word(b3, "x1 x2 x1 x2^-1 x1^-1 x2^-1")))

    def test_render(self):
        d4 = standard("D4")
        w = parse_artin_word(d4, "x1 x3^-1 x2 x4 x3 x3 x1^-1 x4^-1")
        nf = normal_form(w)
        self.assertTrue(words_equal(render(nf), w))
        self.assertEqual(normal_form(render(nf)), nf)
        self.assertTrue(is_left_weighted(nf))

    def test_parse_normal_form(self):
        b3 = standard("B3")
        nf = normal_form(parse_artin_word(b3, "x3 x2^-1 x1 x1 x2 x3^-1 x2"))
        self.assertEqual(parse_normal_form(b3, format_normal_form(nf)), nf)
        with self.assertRaises(ValueError):
            parse_normal_form(standard("A2"), "delta^0 [x1] [x2 x1]")
        with self.assertRaises(ValueError):
            parse_normal_form(standard("A2"), "[x1]")

    def test_random_words(self):
        rng = np.random.RandomState(1)
        for text in ("A3", "B3", "D4"):
            graph = standard(text)
            for _ in range(25):
                w = random_word(graph, 16, rng)
                self.assertLessEqual(len(w), 16)
                nf = normal_form(w)
                self.assertTrue(is_left_weighted(nf))
                self.assertTrue(normal_form(render(nf) * ~w).is_identity)

    def test_infinite_type(self):
        triangle = read_graph(DATA + "triangle.txt")
        with self.assertRaises(NotFiniteTypeError):
            normal_form(parse_artin_word(triangle, "p q"))


class DeltaTests(unittest.TestCase):
    def test_words(self):
        self.assertEqual(str(delta_word(standard("A2"))), "x1 x2 x1")
        b2 = delta_word(standard("B2"))
        self.assertEqual(len(b2), 4)
        self.assertTrue(words_equal(b2, parse_artin_word(standard("B2"), "(x1 x2)^2")))

    def test_coxeter_element_powers(self):
        cases = (("A4", 2, 5), ("B3", 1, 3), ("D4", 1, 3), ("D5", 2, 8), ("G2", 1, 3))
        for text, k, h in cases:
            graph = standard(text)
            c = ArtinWord(graph, [(name, 1) for name in graph.vertices])
            self.assertTrue(words_equal(delta_power_word(graph, None, k), c ** h), text)

    def test_parabolic(self):
        d4 = standard("D4")
        sub = delta_word(d4, ["x4", "x3", "x1"])
        self.assertEqual(len(sub), 6)
        self.assertTrue(words_equal(sub, parse_artin_word(d4, "x1 x3 x1 x4 x3 x1")))
        with self.assertRaises(NotFiniteTypeError):
            delta_word(d4, ["x1", "x2"])
        with self.assertRaises(NotFiniteTypeError):
            delta_word(d4, [])

    def test_negative_power(self):
        a3 = standard("A3")
        self.assertEqual(normal_form(delta_power_word(a3, None, -2)).infimum, -2)

    def test_tau(self):
        self.assertEqual(tau(standard("A3")), {"x1": "x3", "x2": "x2", "x3": "x1"})
        self.assertEqual(tau(standard("D4")), {name: name for name in standard("D4").vertices})
        self.assertEqual(tau(standard("D5"))["x1"], "x2")
        self.assertEqual(tau(standard("E6"))["x1"], "x5")
        self.assertEqual(tau(standard("B3"))["x1"], "x1")

    def test_delta_permutes_generators(self):
        names = ["A%d" % l for l in range(1, 8)] + ["B%d" % l for l in range(2, 8)] + \
            ["D%d" % l for l in range(4, 8)] + ["E6", "E7", "F4", "G2"]
        for text in names:
            graph = standard(text)
            delta = delta_word(graph)
            images = set()
            for s in graph.vertices:
                nf = normal_form(delta * ArtinWord(graph, [(s, 1)]) * ~delta)
                self.assertEqual(nf.infimum, 0, (text, s))
                self.assertEqual(len(nf.simples), 1, (text, s))
                image = nf.simples[0].reduced_word()
                self.assertEqual(len(image), 1, (text, s))
                self.assertEqual(image[0], tau(graph)[s], (text, s))
                images.add(image[0])
            self.assertEqual(images, set(graph.vertices), text)

    def test_conjugate_by_delta(self):
        a3 = standard("A3")
        w = parse_artin_word(a3, "x1 x2^-1 x3 x3")
        delta = delta_word(a3)
        self.assertEqual(str(conjugate_by_delta(w)), "x3 x2^-1 x1^2")
        self.assertTrue(words_equal(delta * w * ~delta, conjugate_by_delta(w)))


class CommandTests(unittest.TestCase):
    def test_solve_normal_form(self):
        code, out = run(solve_words, graph=None, type="A3", word=["(x1 x2 x3)^4"])
        self.assertEqual(code, 0)
        self.assertEqual(out, "delta^2")
        _, out = run(solve_words, graph=None, type="A3", word=[""])
        self.assertEqual(out, "delta^0")

    def test_solve_compare(self):
        _, out = run(solve_words, graph=None, type="A2", word=["x1 x2 x1", "x2 x1 x2"])
        self.assertEqual(out, "equal")
        _, out = run(solve_words, graph=DATA + "a3_path.txt", type=None, word=["x1 x3", "x1 x2"])
        self.assertEqual(out, "distinct")

    def test_solve_infinite(self):
        with self.assertRaises(NotFiniteTypeError):
            run(solve_words, graph=DATA + "triangle.txt", type=None, word=["p"])

    def test_delta(self):
        _, out = run(print_delta, graph=None, type="A2", subset=None)
        self.assertEqual(out, "x1 x2 x1")
        _, out = run(print_delta, graph=DATA + "d4_star.txt", type=None, subset=["a", "c"])
        self.assertEqual(out, "a c a")


if __name__ == '__main__':
    unittest.main()
