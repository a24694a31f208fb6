import argparse
import contextlib
import io
import os
import tempfile
import unittest

from artinpres.coxeter import NotFiniteTypeError
from artinpres.mcg import ParameterError, SurfaceParams, audit_point, build_graph, \
    classify_parabolic, eliminate_boundary_twists, emit_relators, expected_generator_count, \
    expected_relation_count, export_presentation, grid_audit, grid_points, matsumoto_schemas, \
    presentation_of, print_presentation, relation_templates, role_doc, schema_wellformed, \
    vertex_inventory
from artinpres.presentation import read_presentation
from artinpres.words import parse_word


def surface_args(**kwargs):
    defaults = dict(g=1, r=0, n=0, flavor="full", closed=False, format="text",
                    eliminate_u=False, output=None, transcripts=None)
    defaults.update(kwargs)
    return argparse.Namespace(**defaults)


class ParamsTests(unittest.TestCase):
    def test_invalid(self):
        for params in (SurfaceParams(0), SurfaceParams(1, -1), SurfaceParams(1, 0, -2),
                       SurfaceParams(1, flavor="braided"), SurfaceParams(2, 1, closed=True),
                       SurfaceParams(2, flavor="pure", closed=True)):
            with self.assertRaises(ParameterError, msg=str(params)):
                params.validate()

    def test_str(self):
        self.assertEqual(str(SurfaceParams(2, 1, 3, "pure")), "g=2 r=1 n=3 pure")
        self.assertEqual(str(SurfaceParams(1, closed=True)), "g=1 r=0 n=0 full closed")


class GraphTests(unittest.TestCase):
    def test_inventory(self):
        self.assertEqual(vertex_inventory(SurfaceParams(1)), ["x0", "y1"])
        self.assertEqual(vertex_inventory(SurfaceParams(2, 1, 2)),
                         ["x0", "x1", "x2", "y1", "y2", "y3", "z", "u1", "v1"])
        self.assertEqual(vertex_inventory(SurfaceParams(1, 0, 3, closed=True)),
                         ["x0", "x1", "y1", "v1", "v2"])
        self.assertEqual(vertex_inventory(SurfaceParams(2, 1, 2, "pure")),
                         ["x0", "x1", "x2", "x3", "y1", "y2", "y3", "z", "u1"])

    def test_edges(self):
        graph = build_graph(SurfaceParams(2, 0, 2)).graph
        self.assertEqual(graph.m("x0", "y1"), 3)
        self.assertEqual(graph.m("x1", "y1"), 3)
        self.assertEqual(graph.m("x0", "x1"), 2)
        self.assertEqual(graph.m("z", "y3"), 3)
        self.assertEqual(graph.m("x1", "v1"), 4)
        self.assertEqual(graph.neighbors("y2"), ["y1", "y3"])

    def test_isolated_u(self):
        family = build_graph(SurfaceParams(2, 2, 0))
        self.assertEqual(family.graph.neighbors("u1"), [])
        linked = build_graph(SurfaceParams(2, 2, 0), [("u1", "y2", 3)])
        self.assertEqual(linked.graph.neighbors("u1"), ["y2"])
        self.assertEqual(family.roles["u2"], "u")

    def test_parabolic_types(self):
        family = build_graph(SurfaceParams(3, 1, 0))
        found, _ = classify_parabolic(family, ["x0", "y1", "y2", "y3", "z"])
        self.assertEqual(str(found), "A5")
        found, _ = classify_parabolic(family, ["x0", "x1", "y1", "y2", "y3", "z"])
        self.assertEqual(str(found), "D6")
        found, _ = classify_parabolic(family, ["x0", "y1", "y2", "y3", "y4", "y5", "z"])
        self.assertEqual(str(found), "E7")
        with self.assertRaises(NotFiniteTypeError):
            classify_parabolic(family, ["x0", "y2"])

    def test_role_docs(self):
        self.assertEqual(role_doc("x0"), "a_0")
        self.assertEqual(role_doc("y3"), "b_3")
        self.assertEqual(role_doc("z"), "c")
        self.assertEqual(role_doc("u2"), "d_2")
        self.assertEqual(role_doc("v1"), "tau_1")


class EmitterTests(unittest.TestCase):
    def test_torus(self):
        p = presentation_of(SurfaceParams(1))
        self.assertEqual(p.generators, ("x0", "y1"))
        self.assertEqual(p.schema_ids(), ["artin"])
        self.assertEqual(len(p), 1)

    def test_genus_three(self):
        p = presentation_of(SurfaceParams(3))
        self.assertEqual(p.schema_ids(), ["artin", "R1", "R2"])
        self.assertEqual(p.metadata["z"], "c")
        self.assertEqual(p.metadata["y5"], "b_5")

    def test_closed_torus_with_punctures(self):
        p = presentation_of(SurfaceParams(1, 0, 2, closed=True))
        pairs = dict(p.relation_pairs)
        self.assertIn("R9b", pairs)
        self.assertIn("R9c", pairs)
        self.assertEqual(pairs["R9b"][0], parse_word("x0 x0"))
        self.assertEqual(len(pairs["R9b"][1]), 4)
        self.assertEqual(set(name for name, _ in pairs["R9b"][1]), {"x1", "v1"})

    def test_closed_genus_two(self):
        p = presentation_of(SurfaceParams(2, closed=True))
        self.assertEqual(p.schema_ids(), ["artin", "M1", "M3"])

    def test_pure(self):
        self.assertEqual(presentation_of(SurfaceParams(2, 0, 0, "pure")).schema_ids(),
                         ["artin", "PR1"])
        tags = presentation_of(SurfaceParams(2, 0, 2, "pure")).tags
        self.assertIn("PR5", tags)
        self.assertIn("PR6(i=1)", tags)
        tags = presentation_of(SurfaceParams(2, 2, 1, "pure")).tags
        self.assertIn("PR5a", tags)
        self.assertIn("PR6a(i=1)", tags)
        self.assertIn("PR6b(i=2)", tags)

    def test_commutation_tags(self):
        tags = [r.tag for r in relation_templates(SurfaceParams(2, 2, 0))]
        self.assertIn("R3(k=0,j=1,i=2)", tags)
        self.assertIn("R4(j=0,i=1)", tags)
        self.assertIn("R5", tags)
        self.assertIn("R6(i=1)", tags)

    def test_emitted_are_words(self):
        for rel in emit_relators(SurfaceParams(3, 1, 2)):
            self.assertTrue(rel.lhs or rel.rhs, rel.tag)

    def test_eliminate_u(self):
        params = SurfaceParams(2, 2, 1)
        p = presentation_of(params)
        q = eliminate_boundary_twists(p, params)
        self.assertEqual(len(q.generators), len(p.generators) - 2)
        self.assertEqual(len(q.relators), len(p.relators) - 2)
        self.assertEqual(len(q.tags), len(q.relators))
        self.assertLess(set(q.tags), set(p.tags))
        self.assertNotIn("u1", q.generators)
        self.assertNotIn("u2", q.generators)
        self.assertNotIn("R5", q.tags)
        self.assertIs(eliminate_boundary_twists(p, SurfaceParams(2)), p)
        with self.assertRaises(ParameterError):
            eliminate_boundary_twists(presentation_of(SurfaceParams(1, 1)), SurfaceParams(1, 1))


class InventoryTests(unittest.TestCase):
    def test_generator_counts(self):
        self.assertEqual(expected_generator_count(SurfaceParams(3, 2, 2)), 13)
        self.assertEqual(expected_generator_count(SurfaceParams(2, 0, 1, "pure")), 6)
        self.assertEqual(expected_generator_count(SurfaceParams(1, 0, 2, closed=True)), 4)

    def test_relation_counts(self):
        self.assertEqual(expected_relation_count(SurfaceParams(1)), 0)
        self.assertEqual(expected_relation_count(SurfaceParams(3)), 2)
        self.assertEqual(expected_relation_count(SurfaceParams(3, closed=True)), 3)
        self.assertEqual(expected_relation_count(SurfaceParams(1, 0, 2, closed=True)), 3)
        self.assertEqual(expected_relation_count(SurfaceParams(2, 2, 0)),
                         len(relation_templates(SurfaceParams(2, 2, 0))))

    def test_matsumoto(self):
        self.assertEqual(matsumoto_schemas(SurfaceParams(1)), [])
        self.assertEqual(matsumoto_schemas(SurfaceParams(3)), ["R1", "R2"])
        self.assertEqual(matsumoto_schemas(SurfaceParams(3, flavor="pure")), ["PR1", "PR2"])
        self.assertEqual(matsumoto_schemas(SurfaceParams(3, closed=True)), ["M1", "M2", "M3"])

    def test_wellformed(self):
        for params in (SurfaceParams(3, 2, 3), SurfaceParams(4, 0, 4, closed=True),
                       SurfaceParams(2, 3, 2, "pure"), SurfaceParams(1, 0, 4, closed=True)):
            report = schema_wellformed(params)
            self.assertTrue(report.ok, report.failures())

    def test_audit(self):
        for params in (SurfaceParams(1), SurfaceParams(2, 1, 1), SurfaceParams(3, 0, 0, "pure"),
                       SurfaceParams(4, 3, 4), SurfaceParams(2, 0, 3, closed=True)):
            row = audit_point(params)
            self.assertTrue(row.ok, row.problems)

    def test_grid(self):
        self.assertEqual(len(grid_points()), 180)
        rows = grid_audit(2, 1, 2)
        self.assertEqual(len(rows), 2 * 2 * 3 * 2 + 2 * 3)
        self.assertTrue(all(row.ok for row in rows), [r for r in rows if not r.ok])


class CommandTests(unittest.TestCase):
    def test_present(self):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            self.assertEqual(print_presentation(surface_args()), 0)
        self.assertEqual(out.getvalue().strip(), "< x0, y1 | x0 y1 x0 y1^-1 x0^-1 y1^-1 >")

    def test_present_pure_closed(self):
        with self.assertRaises(ParameterError):
            print_presentation(surface_args(flavor="pure", closed=True))

    def test_export_presentation(self):
        with tempfile.TemporaryDirectory(prefix="artinpres-test-mcg") as tmpdir:
            path = os.path.join(tmpdir, "g2.pres")
            export_presentation(surface_args(g=2, n=1, format="machine", output=path))
            p = read_presentation(path)
        self.assertEqual(p, presentation_of(SurfaceParams(2, 0, 1)))
        self.assertEqual(p.metadata["x1"], "a_1")

    def test_export_transcripts(self):
        with tempfile.TemporaryDirectory(prefix="artinpres-test-mcg") as tmpdir:
            export_presentation(surface_args(g=None, transcripts=tmpdir))
            self.assertEqual(len(os.listdir(tmpdir)), 3)

    def test_export_needs_target(self):
        with self.assertRaises(ParameterError):
            export_presentation(surface_args(g=2))


if __name__ == '__main__':
    unittest.main()
