"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PolyuniError(ValueError):
    """Base class for all data errors raised by polyuni."""


class AsymmetricAdjacency(PolyuniError):
    pass


class DuplicateNeighbor(PolyuniError):
    pass


class SelfLoop(PolyuniError):
    pass


class NotGenusZero(PolyuniError):
    pass


class NotTwoConnected(PolyuniError):
    pass


class NotThreeConnected(PolyuniError):
    pass


class DegreeTooLow(PolyuniError):
    pass


class PreconditionNotTwoConnected(NotTwoConnected):
    pass


class PreconditionFailed(PolyuniError):
    pass


class NoObstructionFound(PolyuniError):
    pass


class ClassificationFailed(PolyuniError):
    pass


class BoundTooLarge(PolyuniError):
    pass


class InfeasibleSequence(PolyuniError):
    pass


class BoundExceeded(PolyuniError):
    pass


class Undecided(PolyuniError):
    pass


class PlanarCodeError(PolyuniError):
    """Decode failure; ``offset`` is the byte position where it was detected."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class BadHeader(PlanarCodeError):
    pass


class TruncatedRecord(PlanarCodeError):
    pass


class VertexOutOfRange(PlanarCodeError):
    pass
