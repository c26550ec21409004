class PicardlabError(ValueError):
    """Base class for every error raised by the toolkit."""


class UndefinedError(PicardlabError):
    pass


class NotInvertibleError(PicardlabError):
    pass


class PoleError(PicardlabError):
    pass


class RegimeError(PicardlabError):
    """Raised when an evaluator is asked for a value outside its supported regime."""


class WeightTooWideError(PicardlabError):
    pass


class UnsupportedDiscriminantError(PicardlabError):
    pass


class NoMultiplierError(PicardlabError):
    pass


class IncompleteBoxError(PicardlabError):
    pass


class TableError(PicardlabError):
    pass


class TableParseError(TableError):
    pass


class NonAscendingError(TableError):
    pass


class NonPositiveError(TableError):
    pass
