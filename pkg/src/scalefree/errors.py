"""Exceptions raised by the analysis modules."""


class ScaleFreeError(Exception):
    """Base class for every error raised by this package."""


class ManifestError(ScaleFreeError):
    pass


class DuplicateCategory(ManifestError):
    pass


class PathNotFound(ManifestError):
    pass


class EmptyDocument(ScaleFreeError):
    """A document or token sequence with zero tokens after normalization."""


class EmptyCategory(ScaleFreeError):
    pass


class FewerThanTwoPoints(ScaleFreeError):
    pass


class NonPositiveCoordinate(ScaleFreeError):
    pass


class TooFewSegments(ScaleFreeError):
    pass


class UndefinedForSingletonVocabulary(ScaleFreeError):
    pass
