"""Exceptions raised by the shadowlab engine.

Every error derives from ``ShadowLabError`` so management commands can turn
any engine failure into a ``CommandError`` with a single ``except`` clause.
"""


class ShadowLabError(Exception):
    """Base class for all shadowlab errors."""


class SeriesError(ShadowLabError):
    """Bad series precision or a malformed list of leading coefficients."""


class RankError(ShadowLabError):
    """A rank or length lies outside the range an operation accepts."""


class LatticeError(ShadowLabError):
    """Singular basis, non-integral Gram matrix or a non-unimodular lattice."""


class NoSuchLatticeError(LatticeError):
    """The invariants given would force a negative number of vectors."""


class CodeError(ShadowLabError):
    """The code is not self-dual, too large to sweep, or otherwise invalid."""


class NoSuchCodeError(CodeError):
    """No self-dual code can have the weight counts given."""


class NotInSpanError(ShadowLabError):
    """An enumerator left a non-zero residual against the invariant basis."""


class CatalogError(ShadowLabError):
    """Unknown catalog name or a catalog entry that fails its invariants."""


class DataFormatError(CatalogError):
    """A gram, glue or generator file could not be parsed."""


class MismatchError(ShadowLabError):
    """Two sides of an identity disagree.

    Attributes:
        exponent: The first quarter-exponent (or weight) where they differ.
        expected: The coefficient predicted by the identity.
        computed: The coefficient found by enumeration.
    """

    def __init__(self, message, exponent=None, expected=None, computed=None):
        super().__init__(message)
        self.exponent = exponent
        self.expected = expected
        self.computed = computed
