import unittest

from artinpres.words import WordSyntaxError, cyclic_reduce, format_letters, format_word, \
    free_reduce, generators_of, invert_word, parse_word, power_word, rotate, to_syllables


class ParseTests(unittest.TestCase):
    def test_letters(self):
        self.assertEqual(parse_word("x1 x2^-1"), (("x1", 1), ("x2", -1)))
        self.assertEqual(parse_word("x1^3"), (("x1", 1),) * 3)
        self.assertEqual(parse_word("y^-2"), (("y", -1),) * 2)

    def test_empty(self):
        self.assertEqual(parse_word(""), ())
        self.assertEqual(parse_word("1"), ())
        self.assertEqual(parse_word("   "), ())

    def test_groups(self):
        self.assertEqual(len(parse_word("(x1 x2 x3)^4")), 12)
        self.assertEqual(parse_word("(a b)^-1"), (("b", -1), ("a", -1)))
        self.assertEqual(parse_word("((a)^2 b)^2"), parse_word("a a b a a b"))

    def test_not_reduced(self):
        self.assertEqual(parse_word("a a^-1"), (("a", 1), ("a", -1)))

    def test_errors(self):
        for text in ("x1 (x2", "x1)", "x1 $", "^2", "a ^"):
            with self.assertRaises(WordSyntaxError, msg=text):
                parse_word(text)


class ReductionTests(unittest.TestCase):
    def test_free_reduce(self):
        self.assertEqual(free_reduce(parse_word("a b b^-1 a^-1 c")), (("c", 1),))
        self.assertEqual(free_reduce(parse_word("a b^-1 b a^-1")), ())

    def test_cyclic_reduce(self):
        self.assertEqual(cyclic_reduce(parse_word("a^-1 b a")), (("b", 1),))
        self.assertEqual(cyclic_reduce(parse_word("a b a")), parse_word("a b a"))

    def test_syllables(self):
        self.assertEqual(to_syllables(parse_word("a a b^-1 b^-1 b^-1 a")),
                         [("a", 2), ("b", -3), ("a", 1)])
        self.assertEqual(to_syllables(parse_word("a b b^-1 a")), [("a", 2)])

    def test_rotate(self):
        w = parse_word("a b c")
        self.assertEqual(rotate(w, 1), parse_word("b c a"))
        self.assertEqual(rotate(w, 4), parse_word("b c a"))
        self.assertEqual(rotate((), 3), ())

    def test_invert_and_power(self):
        w = parse_word("a b^-1")
        self.assertEqual(invert_word(w), parse_word("b a^-1"))
        self.assertEqual(power_word(w, -2), parse_word("b a^-1 b a^-1"))
        self.assertEqual(power_word(w, 0), ())


class FormatTests(unittest.TestCase):
    def test_format_word(self):
        self.assertEqual(format_word(parse_word("x1 x1 x2^-1")), "x1^2 x2^-1")
        self.assertEqual(format_word(parse_word("x1 x1^-1")), "1")

    def test_format_letters(self):
        self.assertEqual(format_letters(parse_word("a a b^-1")), "a a b^-1")
        self.assertEqual(format_letters(()), "1")
        w = parse_word("a a^-1 b")
        self.assertEqual(parse_word(format_letters(w)), w)

    def test_generators_of(self):
        self.assertEqual(generators_of(parse_word("b a b^-1 c")), ["b", "a", "c"])


if __name__ == '__main__':
    unittest.main()
