import cmath
import math
import tempfile
from pathlib import Path

from django.conf import settings
from django.test import SimpleTestCase

from picardlab.exceptions import NonAscendingError, NonPositiveError, TableParseError
from picardlab.spectral import (
    SpectralTable, dyadic_sum, edge_count, explicit_rhs, load_table, picard_volume, sharp_sum, smoothed_sum,
    spectral_exp_sum, weyl_synthetic_table, write_table,
)


class TableTest(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _write(self, text: str) -> Path:
        path = self.dir / 'table.txt'
        path.write_text(text, encoding='utf-8')
        return path

    def test_fixture_is_labelled_synthetic(self):
        table = load_table(settings.PICARDLAB['FIXTURE_DIR'] / 'synthetic_eigenvalues.txt')
        self.assertTrue(table.synthetic)
        self.assertGreater(len(table), 40)
        expected = weyl_synthetic_table(len(table))
        for loaded, computed in zip(table.values, expected.values):
            self.assertAlmostEqual(loaded, computed, places=9)

    def test_volume(self):
        self.assertAlmostEqual(picard_volume(), 0.915965594177219 / 3, places=12)

    def test_comments_and_source(self):
        table = load_table(self._write("# source: test run\n\n9.5\n# skipped\n11.25\n"))
        self.assertEqual(table.values, (9.5, 11.25))
        self.assertEqual(table.source, 'test run')
        self.assertFalse(table.synthetic)

    def test_empty_table(self):
        self.assertEqual(len(load_table(self._write(""))), 0)

    def test_rejects_bad_tables(self):
        with self.assertRaises(TableParseError):
            load_table(self._write("9.5\nnine\n"))
        with self.assertRaises(NonAscendingError):
            load_table(self._write("9.5\n9.5\n"))
        with self.assertRaises(NonPositiveError):
            load_table(self._write("-1\n9.5\n"))
        with self.assertRaises(NonAscendingError):
            SpectralTable(values=(3.0, 2.0))

    def test_warns_below_the_spectral_floor(self):
        with self.assertLogs('picardlab.spectral', 'WARNING'):
            load_table(self._write("1.0\n9.5\n"))

    def test_write_then_load(self):
        table = weyl_synthetic_table(5)
        path = self.dir / 'written.txt'
        write_table(table, path)
        loaded = load_table(path)
        self.assertTrue(loaded.synthetic)
        self.assertEqual(len(loaded), 5)


class SpectralSumTest(SimpleTestCase):
    def setUp(self):
        self.table = SpectralTable(values=(5.0, 7.0, 9.5, 30.0), source='test')

    def test_exponential_sum(self):
        X = math.e
        expected = sum(cmath.exp(1j * r) for r in (5.0, 7.0, 9.5))
        self.assertLess(abs(spectral_exp_sum(self.table, 10.0, X) - expected), 1e-12)
        self.assertEqual(spectral_exp_sum(self.table, 1.0, X), 0)

    def test_arguments(self):
        with self.assertRaises(ValueError):
            spectral_exp_sum(self.table, 0.0, 2.0)
        with self.assertRaises(ValueError):
            spectral_exp_sum(self.table, 5.0, 1.0)

    def test_smoothed_matches_sharp_away_from_edges(self):
        smoothed = smoothed_sum(self.table, 6.0, 0.1, 3.0)
        sharp = sharp_sum(self.table, 6.0, 12.0, 3.0)
        self.assertLess(abs(smoothed - sharp), 1e-12)

    def test_dyadic_blocks(self):
        one_level = dyadic_sum(self.table, 12.0, 0.1, 3.0, 1)
        self.assertEqual(one_level, smoothed_sum(self.table, 6.0, 0.1, 3.0))
        two_levels = dyadic_sum(self.table, 24.0, 0.1, 3.0, 2)
        self.assertLess(abs(two_levels - sharp_sum(self.table, 6.0, 24.0, 3.0)), 1e-12)

    def test_edge_count(self):
        self.assertEqual(edge_count(self.table, 12.0, 0.1, 1), 0)
        near_edge = SpectralTable(values=(5.0, 6.2, 9.5), source='test')
        self.assertEqual(edge_count(near_edge, 12.0, 0.1, 1), 1)


class ExplicitFormulaTest(SimpleTestCase):
    def test_empty_table(self):
        result = explicit_rhs(SpectralTable(), 7.0, 50.0)
        self.assertEqual(result.value, 1250.0)
        self.assertTrue(result.in_range)
        self.assertEqual(result.terms.size, 0)

    def test_single_term(self):
        r, X = 9.5, 100.0
        result = explicit_rhs(SpectralTable(values=(r,)), 10.0, X)
        term = X ** (1 + 1j * r) / (1 + 1j * r)
        self.assertAlmostEqual(result.value, X * X / 2 + 2 * term.real, places=8)

    def test_out_of_range_warns(self):
        with self.assertLogs('picardlab.spectral', 'WARNING'):
            result = explicit_rhs(SpectralTable(), 20.0, 50.0)
        self.assertFalse(result.in_range)
