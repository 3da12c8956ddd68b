from django.apps import AppConfig


class LogmodappConfig(AppConfig):
    name = 'logmodapp'
    verbose_name = 'Log modifications of fine saturated monoids'
