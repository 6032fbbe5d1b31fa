from cli.mixins import FigureCommand
from core.exceptions import ConfigError, ParameterDomainError


class Command(FigureCommand):
    help = 'Outage versus average SNR, one block of rows per cell radius.'
    figure = 'fig1'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument(
            '--radius', type=float, action='append', default=[],
            help='cell radius in m; repeatable',
        )

    def sweep_configs(self, cfg, options):
        try:
            return [cfg.replace(radius=r) for r in options['radius']] or [cfg]
        except ParameterDomainError as exc:
            raise ConfigError(str(exc), key='radius') from exc
