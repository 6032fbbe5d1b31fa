from cli.mixins import PointCommand
from cli.sweeps import GOODPUT


class Command(PointCommand):
    help = 'Average bits delivered per transmission.'

    def query(self, options):
        return GOODPUT
