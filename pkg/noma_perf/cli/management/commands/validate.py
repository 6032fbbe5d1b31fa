from django.conf import settings
from django.core.management.base import CommandError

from cli.mixins import CHECK_FAILURE, NomaCommand
from cli.validation import failed_checks, render_report, run_validation


class Command(NomaCommand):
    help = 'Cross-check Monte Carlo and closed forms; exit 1 on failure.'

    def run(self, **options):
        setup = self.load_setup(options)
        report = run_validation(
            setup,
            n_trials=options['trials'],
            seed=options['seed'],
            threads=options['threads'],
            block_size=settings.NOMA_MC_BLOCK,
        )
        self.write(render_report(report), options)
        failed = failed_checks(report)
        if failed:
            raise CommandError(
                f'failed checks: {", ".join(failed)}',
                returncode=CHECK_FAILURE,
            )
