"""Exception types raised by the eoflex library."""


class CodeError(Exception):
    """Base class for all eoflex errors."""


class ParameterError(CodeError, ValueError):
    """A (tau, p, k) triple that cannot define a code."""


class NonPositiveTau(ParameterError):
    pass


class KTooSmall(ParameterError):
    pass


class PNotOdd(ParameterError):
    """p is not an odd integer >= 3."""


class DivisorConditionViolated(ParameterError):
    """p has a divisor other than 1 that is <= k-1."""

    def __init__(self, p: int, k: int, divisor: int):
        self.divisor = divisor
        super().__init__(
            f"p={p} has divisor {divisor} <= k-1={k - 1}; "
            "every divisor of p other than 1 must exceed k-1"
        )


class CommonRowsExceedArray(ParameterError):
    pass


class IndexOutOfRing(CodeError, IndexError):
    pass


class ParityColumnNotUpdatable(CodeError, ValueError):
    pass


class TooManyErasures(CodeError, ValueError):
    pass


class RowParityMissing(CodeError, ValueError):
    """Row-parity column is required but marked erased."""


class DiagParityMissing(CodeError, ValueError):
    """Diagonal-parity column is required but marked erased."""


class ParityMissing(CodeError, ValueError):
    """Both parity columns are required but at least one is erased."""


class ChainStall(CodeError, RuntimeError):
    """The chain decoder could not make progress.

    For parameter sets whose two-erasure system is full rank this signals
    an implementation bug; it also fires, by design, on the rank-deficient
    column pairs of non-MDS parameter sets instead of returning garbage.
    """


class Underdetermined(CodeError, RuntimeError):
    """The erasure system is rank deficient (non-MDS instance)."""


class PNotPrime(ParameterError):
    pass


class PTooSmall(ParameterError):
    pass


class ShardError(CodeError):
    """Base class for shard-file problems."""


class TooManyMissing(ShardError):
    pass


class HeaderMismatch(ShardError):
    pass


class CrcFailure(ShardError):
    pass
