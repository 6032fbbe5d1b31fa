from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.exceptions import ConfigError, NomaError, ParameterDomainError

from .config import parse_config
from .emitters import FORMATS, emit, render
from .sweeps import ENGINES, SweepSpec, figure_spec, run_sweep


CONFIG_FAILURE = 2
CHECK_FAILURE = 1


def unsigned_64(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise ValueError('seed must fit in 64 unsigned bits')
    return value


def positive_int(text):
    value = int(text)
    if value < 1:
        raise ValueError('must be >= 1')
    return value


class NomaCommand(BaseCommand):
    """Shared flags and error translation of every noma_perf command.

    Configuration and I/O problems exit with code 2, every other domain
    error with code 1.
    """

    def add_arguments(self, parser):
        parser.add_argument('--config', help='path to a key = value file')
        parser.add_argument(
            '--set', action='append', default=[], dest='overrides',
            metavar='KEY=VALUE', help='override one config key',
        )
        parser.add_argument('--out', help='output file (stdout if absent)')
        parser.add_argument('--format', choices=FORMATS, default='csv')
        parser.add_argument(
            '--trials', type=positive_int, default=settings.NOMA_MC_TRIALS,
        )
        parser.add_argument(
            '--seed', type=unsigned_64, default=settings.NOMA_SEED,
        )
        parser.add_argument(
            '--threads', type=positive_int, default=settings.NOMA_THREADS,
        )

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except ConfigError as exc:
            raise CommandError(str(exc), returncode=CONFIG_FAILURE) from exc
        except OSError as exc:
            raise CommandError(
                f'I/O error: {exc}', returncode=CONFIG_FAILURE,
            ) from exc
        except NomaError as exc:
            raise CommandError(
                f'{type(exc).__name__}: {exc}', returncode=CHECK_FAILURE,
            ) from exc

    def run(self, **options):
        raise NotImplementedError

    def load_setup(self, options):
        return parse_config(options['config'], options['overrides'])

    def write(self, text, options):
        if options['out']:
            with open(options['out'], 'w', encoding='utf-8',
                      newline='') as target:
                target.write(text)
        else:
            self.stdout.write(text, ending='')

    def write_rows(self, rows, options):
        if options['out']:
            emit(rows, options['format'], options['out'])
        else:
            self.stdout.write(render(rows, options['format']), ending='')


class PointCommand(NomaCommand):
    """One-point table at the configured SNR for one query."""

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--engine', choices=ENGINES + ('all',), default=ENGINES[0],
        )

    def query(self, options):
        raise NotImplementedError

    def run(self, **options):
        setup = self.load_setup(options)
        engines = ENGINES if options['engine'] == 'all' else (
            options['engine'],
        )
        try:
            spec = SweepSpec(
                axis='snr_db',
                grid=(setup.cfg.snr_db,),
                queries=(self.query(options),),
                engines=engines,
                mc_trials=options['trials'],
                seed=options['seed'],
            )
        except ParameterDomainError as exc:
            raise ConfigError(str(exc)) from exc
        rows = run_sweep(
            spec, setup.cfg, options['threads'], settings.NOMA_MC_BLOCK,
        )
        self.write_rows(rows, options)


class FigureCommand(NomaCommand):
    """Data of one reproduced figure, as a preset sweep."""

    figure = None

    def sweep_configs(self, cfg, options):
        return [cfg]

    def run(self, **options):
        setup = self.load_setup(options)
        rows = []
        for cfg in self.sweep_configs(setup.cfg, options):
            spec = figure_spec(
                self.figure, cfg, options['trials'], options['seed'],
            )
            rows.extend(run_sweep(
                spec, cfg, options['threads'], settings.NOMA_MC_BLOCK,
            ))
        self.write_rows(rows, options)
