from cli.mixins import PointCommand


class Command(PointCommand):
    help = 'Outage probability of the k-th nearest user on stream m.'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--stream', type=int, default=1)
        parser.add_argument('--user-order', type=int, default=1)

    def query(self, options):
        return (options['stream'], options['user_order'])
