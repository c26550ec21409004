from django.apps import AppConfig


class PicardlabConfig(AppConfig):
    name = 'picardlab'
    verbose_name = 'Picard manifold checks'
