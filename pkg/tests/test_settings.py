from django.conf import settings


class TestSettings:

    def test_settings(self):
        assert not settings.DEBUG, 'Проверьте, что DEBUG в настройках Django выключен'
        assert settings.DATABASES == {}, (
            'Проверьте, что проект не использует базу данных'
        )
        for app in ('core', 'special', 'analytic', 'montecarlo', 'cli'):
            assert app in settings.INSTALLED_APPS, (
                f'Проверьте, что приложение {app} добавлено в INSTALLED_APPS'
            )

    def test_defaults(self):
        defaults = settings.NOMA_DEFAULT_CONFIG
        assert defaults['snr_db'] == 60.0, 'Проверьте SNR по умолчанию: 60 дБ'
        assert defaults['radius_m'] == 30.0, 'Проверьте радиус соты по умолчанию: 30 м'
        assert settings.NOMA_MC_TRIALS >= 1000, (
            'Проверьте, что число испытаний Монте-Карло не меньше 1000'
        )
        assert settings.NOMA_THREADS >= 1, 'Проверьте, что NOMA_THREADS >= 1'

    def test_logging(self):
        handler = settings.LOGGING['handlers']['console']
        assert handler['stream'] == 'ext://sys.stderr', (
            'Проверьте, что логи пишутся в stderr, а не в файлы результатов'
        )
