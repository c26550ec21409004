import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pydantic
from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from tqdm import tqdm

from picardlab.checks import build_jobs
from picardlab.reports import COMMANDS, Report, RunConfig
from picardlab.validators import InputValidator

logger = logging.getLogger(__name__)

GAUSSIAN_FLAGS = {
    'kloosterman': ('m', 'n', 'c'),
    'rho': ('q', 'n'),
}
INT_FLAGS = {
    'kloosterman': ('qmax_norm', 'nmax_norm'),
    'identity': ('qmax_norm',),
    'zeta': ('truncation_norm',),
    'geodesics': ('H', 'conj_height'),
    'spectral-sum': ('levels',),
    'explicit-formula': ('H', 'conj_height'),
}
FLOAT_FLAGS = {
    'spectral-sum': ('T', 'X', 'G'),
    'explicit-formula': ('T', 'X'),
}
NONZERO = {'q', 'c'}
CONFIG_FIELDS = {'qmax_norm', 'nmax_norm', 'truncation_norm', 'H', 'conj_height'}


def _flag(dest: str) -> str:
    return '--' + dest.replace('_', '-')


class Command(BaseCommand):
    help = "Run numerical checks for Kloosterman sums, zeta functions and the prime geodesic theorem on PSL(2, Z[i])"

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)
        for name in COMMANDS:
            sub = subparsers.add_parser(name)
            sub.add_argument('--format', default='json', help="Output format: json or csv")
            sub.add_argument('--tolerance', type=float, help="Residual tolerance for pass/fail rows")
            sub.add_argument('--seed', type=int, help="Seed for randomized panels")
            sub.add_argument('--output', help="Write the report to this file instead of stdout")
            for dest in GAUSSIAN_FLAGS.get(name, ()):
                sub.add_argument(_flag(dest), dest=dest, help="Gaussian integer, e.g. 3-2i")
            for dest in INT_FLAGS.get(name, ()):
                sub.add_argument(_flag(dest), dest=dest, type=int)
            for dest in FLOAT_FLAGS.get(name, ()):
                sub.add_argument(_flag(dest), dest=dest, type=float)
            if name in ('spectral-sum', 'explicit-formula'):
                sub.add_argument('--eigenvalues', help="Eigenvalue table (one spectral parameter per line)")

    def _validated_config(self, name: str, options: dict) -> RunConfig:
        params = {}
        for dest in GAUSSIAN_FLAGS.get(name, ()):
            if options.get(dest) is None:
                continue
            validate = InputValidator.validate_nonzero_gaussian if dest in NONZERO \
                else InputValidator.validate_gaussian
            params[dest] = str(validate(options[dest]))
        overrides = {}
        for dest in INT_FLAGS.get(name, ()):
            if options.get(dest) is None:
                continue
            value = InputValidator.validate_positive_int(options[dest], _flag(dest))
            if dest in CONFIG_FIELDS:
                overrides[dest] = value
            else:
                params[dest] = value
        for dest in FLOAT_FLAGS.get(name, ()):
            if options.get(dest) is not None:
                params[dest] = InputValidator.validate_positive_float(options[dest], _flag(dest))
        if options.get('tolerance') is not None:
            overrides['tolerance'] = InputValidator.validate_positive_float(options['tolerance'], '--tolerance')
        if options.get('seed') is not None:
            if options['seed'] < 0:
                raise ValidationError("--seed must be non-negative")
            overrides['seed'] = options['seed']
        params['progress'] = options.get('verbosity', 1) >= 2
        return RunConfig.from_settings(
            name,
            format=InputValidator.validate_format(options['format']),
            eigenvalue_path=InputValidator.validate_eigenvalue_path(options.get('eigenvalues')),
            params=params,
            **overrides,
        )

    def handle(self, *args, **options):
        name = options['subcommand']
        try:
            config = self._validated_config(name, options)
        except ValidationError as exc:
            raise CommandError('; '.join(exc.messages), returncode=2)
        except pydantic.ValidationError as exc:
            raise CommandError(str(exc), returncode=2)

        try:
            jobs = build_jobs(config)
            with ThreadPoolExecutor(max_workers=config.threads) as executor:
                results = executor.map(lambda job: job(), jobs)
                rows = list(tqdm(results, total=len(jobs), desc=name, disable=options['verbosity'] < 2))
        except ValueError as exc:
            logger.error("%s failed: %s", name, exc)
            raise CommandError(str(exc), returncode=2)

        report = Report(command=name, config=config.model_dump(exclude={'params'}) | {'params': config.params},
                        rows=rows)
        text = report.render(config.format)
        if options.get('output'):
            Path(options['output']).write_text(text, encoding='utf-8')
        else:
            self.stdout.write(text)

        failed = [row.name for row in rows if not row.passed]
        if failed:
            logger.warning("%s: %d of %d checks failed", name, len(failed), len(rows))
            raise CommandError(f"{len(failed)} check(s) failed: {', '.join(failed)}", returncode=1)
