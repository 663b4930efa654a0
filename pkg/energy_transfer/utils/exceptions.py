"""
Error taxonomy shared by the library and the command-line front end
"""


class EnergyTransferError(Exception):
    """Base class for every error raised by this package"""


class InputError(EnergyTransferError, ValueError):
    """Malformed or inconsistent user input (matrices, words, partitions, series)"""


class EmptyPathError(InputError):
    pass


class NotConsecutiveError(InputError):
    pass


class MixedDegreeError(InputError):
    pass


class InvalidPartitionError(InputError):
    pass


class IncompatibleSeriesError(InputError):
    pass


class NegativeExponentError(InputError):
    pass


class UnsupportedRequestError(EnergyTransferError):
    """A well-formed request the package refuses to answer (infinite sets, divergent products)"""


class UnboundedEnumerationError(UnsupportedRequestError):
    pass


class ConvergenceError(UnsupportedRequestError):
    pass


class TransferInvariantError(EnergyTransferError, RuntimeError):
    """An internal invariant failed; always a bug or a counterexample worth reporting"""


class CrossingLimitError(TransferInvariantError):
    pass


class RelationMismatchError(TransferInvariantError):
    pass
