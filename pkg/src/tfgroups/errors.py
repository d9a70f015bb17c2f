"""Exception hierarchy.

Every domain failure raised by the package derives from :class:`TFGError`,
which the command-line front end maps to exit status 1.
"""


class TFGError(Exception):
    """Base class for domain errors."""


class NotPrimitive(TFGError):
    pass


class NotInLanguage(TFGError):
    pass


class TooShort(TFGError):
    pass


class SearchCeilingExceeded(TFGError):
    pass


class RadiusTooSmall(TFGError):
    pass


class NotAPartition(TFGError):
    pass


class NotBijective(TFGError):
    pass


class OverlapViolation(TFGError):
    """U, TU, T^2 U are not pairwise disjoint."""


class AperiodicityRequired(TFGError):
    """Group arithmetic was requested on a system not known to be aperiodic."""


class DaggerRequired(TFGError):
    """The operation needs a system without repeated letters in its 5-words."""


class InvalidSeed(TFGError):
    pass


class TowerTooShort(TFGError):
    pass


class SeedOrbitNotSeparated(TFGError):
    pass


class UnsupportedOffset(TFGError):
    pass
