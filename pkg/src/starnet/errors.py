"""Exception types shared across the package."""


class StarnetError(Exception):
    """Base class for all package-specific errors."""


class ParseError(StarnetError):
    """Malformed expression or file input."""


class NotDivisible(StarnetError):
    """Exact polynomial division left a nonzero remainder."""


class NotAPower(StarnetError):
    """Polynomial is not a perfect k-th power over the field."""


class DuplicateLine(StarnetError):
    pass


class ZeroCovector(StarnetError):
    pass


class UnknownLine(StarnetError):
    pass


class UnknownBuiltin(StarnetError):
    pass


class NotAPartition(StarnetError):
    pass


class NonPositiveMultiplicity(StarnetError):
    pass


class NotAPencil(StarnetError):
    """Class polynomials are not members of a single pencil."""


class DegeneratePencil(StarnetError):
    """The two generators of the pencil are proportional."""


class NotSmall(StarnetError):
    """Component extraction requires a small fibration with a multiple fiber."""


class MultipleMultipleFibers(StarnetError):
    """More than one multiple fiber; use the per-character expansion instead."""


class InvalidOrbifoldData(StarnetError):
    pass
