from django.apps import AppConfig


class MonteCarloConfig(AppConfig):
    name = 'montecarlo'
