import json
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from picardlab.reports import CheckResult


class PicardlabCommandTest(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def _run(self, *args) -> str:
        out = StringIO()
        call_command('picardlab', *args, stdout=out)
        return out.getvalue()

    def test_rho_report(self):
        payload = json.loads(self._run('rho', '--q', '2', '--n', '0'))
        self.assertEqual(payload['command'], 'rho')
        self.assertTrue(payload['passed'])
        row = payload['rows'][0]
        self.assertEqual(row['value'], 2)
        self.assertEqual(row['detail']['argument'], '-4')
        self.assertEqual(row['detail']['crt_count'], 2)
        self.assertEqual(payload['config']['params']['q'], '2')

    def test_csv_to_file(self):
        target = self.dir / 'rho.csv'
        self.assertEqual(self._run('rho', '--q', '1+i', '--format', 'csv', '--output', str(target)), '')
        lines = target.read_text(encoding='utf-8').splitlines()
        self.assertTrue(lines[0].startswith('name,anchor,value_re,value_im'))
        self.assertEqual(len(lines), 2)

    def test_explicit_formula_with_empty_table(self):
        table = self.dir / 'empty.txt'
        table.write_text("# source: none\n", encoding='utf-8')
        payload = json.loads(self._run('explicit-formula', '--eigenvalues', str(table), '--X', '50', '--T', '7'))
        row = payload['rows'][0]
        self.assertEqual(row['value'], 1250.0)
        self.assertTrue(row['detail']['in_range'])
        self.assertEqual(row['detail']['eigenvalues'], 0)

    def test_geodesics_report(self):
        payload = json.loads(self._run('geodesics', '--H', '3', '--conj-height', '1'))
        self.assertTrue(payload['passed'])
        rows = {row['anchor']: row for row in payload['rows']}
        displacement = rows['axis-displacement']
        self.assertEqual(displacement['detail']['elements'], 76)
        self.assertEqual(displacement['detail']['off_axis_deficit'], 0.0)
        self.assertTrue(rows['prime-geodesic-count']['detail']['complete'])
        self.assertTrue(rows['class-inventory-stability']['value'])

    def test_usage_errors_exit_with_two(self):
        for args in (('rho', '--q', '0'), ('rho', '--q', '3+2j'), ('kloosterman', '--qmax-norm', '0'),
                     ('zeta', '--format', 'xml'), ('rho', '--seed', '-1'),
                     ('spectral-sum', '--eigenvalues', str(self.dir / 'missing.txt'))):
            with self.assertRaises(CommandError) as ctx:
                self._run(*args)
            self.assertEqual(ctx.exception.returncode, 2, args)

    def test_bad_table_exits_with_two(self):
        table = self.dir / 'bad.txt'
        table.write_text("9.5\n7.0\n", encoding='utf-8')
        with self.assertRaises(CommandError) as ctx:
            self._run('spectral-sum', '--eigenvalues', str(table))
        self.assertEqual(ctx.exception.returncode, 2)

    def test_domain_error_exits_with_two(self):
        table = self.dir / 'empty.txt'
        table.write_text("", encoding='utf-8')
        with self.assertRaises(CommandError) as ctx:
            self._run('explicit-formula', '--eigenvalues', str(table), '--X', '1')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_failed_check_exits_with_one(self):
        failing = CheckResult.compare('forced', 'forced-failure', 1.0, 1.0, 0.0)
        with patch('picardlab.management.commands.picardlab.build_jobs', return_value=[lambda: failing]):
            out = StringIO()
            with self.assertRaises(CommandError) as ctx:
                call_command('picardlab', 'zeta', stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertFalse(json.loads(out.getvalue())['passed'])
