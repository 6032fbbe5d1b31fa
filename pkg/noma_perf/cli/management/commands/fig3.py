from cli.mixins import FigureCommand


class Command(FigureCommand):
    help = 'Goodput versus cell radius.'
    figure = 'fig3'
