from cli.mixins import FigureCommand


class Command(FigureCommand):
    help = 'Goodput versus average SNR.'
    figure = 'fig2'
