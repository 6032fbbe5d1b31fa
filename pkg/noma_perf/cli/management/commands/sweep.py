from django.conf import settings

from cli.mixins import NomaCommand
from cli.sweeps import AXES, ENGINES, GOODPUT, SweepSpec, run_sweep
from core.exceptions import ConfigError


def parse_grid(text):
    """``a,b,c`` or ``start:stop:step`` (stop included)."""
    if ':' in text:
        start, stop, step = (float(v) for v in text.split(':'))
        if step <= 0:
            raise ValueError('step must be positive')
        values, index = [], 0
        while start + index * step <= stop + 1e-9 * step:
            values.append(round(start + index * step, 10))
            index += 1
        return tuple(values)
    return tuple(float(v) for v in text.split(','))


def parse_query(text):
    if text == GOODPUT:
        return GOODPUT
    stream, user_order = (int(v) for v in text.split(','))
    return (stream, user_order)


class Command(NomaCommand):
    help = 'Evaluate queries on a grid of SNR, radius or correlation values.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--axis', choices=AXES)
        parser.add_argument(
            '--grid', help='"a,b,c" or "start:stop:step"',
        )
        parser.add_argument(
            '--query', action='append', default=[],
            help='"m,k" or "goodput"; repeatable',
        )
        parser.add_argument(
            '--engine', choices=ENGINES, action='append', default=[],
        )

    def run(self, **options):
        setup = self.load_setup(options)
        if not options['axis'] or not options['grid']:
            raise ConfigError('--axis and --grid are required')
        if not options['query']:
            raise ConfigError('at least one --query is needed')
        try:
            spec = SweepSpec(
                axis=options['axis'],
                grid=parse_grid(options['grid']),
                queries=tuple(map(parse_query, options['query'])),
                engines=tuple(options['engine']) or (ENGINES[0],),
                mc_trials=options['trials'],
                seed=options['seed'],
            )
        except ValueError as exc:
            # ParameterDomainError is a ValueError too
            raise ConfigError(f'bad sweep flag: {exc}') from exc
        rows = run_sweep(
            spec, setup.cfg, options['threads'], settings.NOMA_MC_BLOCK,
        )
        self.write_rows(rows, options)
