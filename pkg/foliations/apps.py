from django.apps import AppConfig


class FoliationsConfig(AppConfig):
    name = 'foliations'
    verbose_name = "Foliations with an invariant nodal curve"
