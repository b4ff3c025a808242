"""Exception types shared across the package."""


class LieHopfError(Exception):
    """Base class for all errors raised by liehopf."""


class AlphabetError(LieHopfError, ValueError):
    """Operands live over different alphabets, or an alphabet is malformed."""


class TruncationError(LieHopfError, ValueError):
    """A computation would exceed the truncation degree of a presentation."""


class PresentationError(LieHopfError, ValueError):
    """A Hopf presentation violates a structural invariant."""


class DimensionError(LieHopfError, ValueError):
    """Matrix/vector shapes do not agree."""


class ComplexError(LieHopfError, ValueError):
    """A simplicial complex is not closed under taking subsets."""


class TorsionError(LieHopfError):
    """Cohomology has torsion where a free module is required."""
