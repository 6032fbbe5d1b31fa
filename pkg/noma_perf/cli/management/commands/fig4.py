from cli.mixins import FigureCommand


class Command(FigureCommand):
    help = 'Goodput versus transmit correlation.'
    figure = 'fig4'
