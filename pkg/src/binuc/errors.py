"""Exception hierarchy shared by all binuc modules."""

from __future__ import annotations


class BinucError(Exception):
    """Base class for every error raised by this package."""


class LatticeError(BinucError):
    pass


class DuplicateLabel(LatticeError):
    pass


class UnknownLabel(LatticeError):
    pass


class CycleDetected(LatticeError):
    pass


class NotBounded(LatticeError):
    pass


class NotALattice(LatticeError):
    """Some pair lacks a meet or a join; ``witness`` is that pair of labels."""

    def __init__(self, message: str, witness: tuple[str, str] | None = None):
        super().__init__(message)
        self.witness = witness


class NotComparable(LatticeError):
    pass


class UnknownFamily(LatticeError):
    pass


class BadParams(LatticeError):
    pass


class NotBinuclearInput(LatticeError):
    pass


class NotBinuclearLattice(LatticeError):
    pass


class NoBound(LatticeError):
    """A meet or join of two binuclear intervals does not exist.

    ``candidate`` is the interval produced by the pop formula and ``witness``
    a common bound that is not comparable to it in the required direction
    (``None`` when the candidate itself is not binuclear).
    """

    kind = "bound"

    def __init__(self, first, second, candidate, witness, candidate_binuclear: bool):
        self.first = first
        self.second = second
        self.candidate = candidate
        self.witness = witness
        self.candidate_binuclear = candidate_binuclear
        super().__init__(
            f"no {self.kind} for {first} and {second}: candidate {candidate}"
            f" (binuclear={candidate_binuclear}), witness {witness}"
        )


class NoMeet(NoBound):
    kind = "meet"


class NoJoin(NoBound):
    kind = "join"


class NotJoinIrreducible(LatticeError):
    pass


class NotMeetIrreducible(LatticeError):
    pass


class KappaUndefined(LatticeError):
    """K(j) has no maximum; ``maximal`` lists its maximal elements."""

    def __init__(self, element: int, maximal: list[int]):
        super().__init__(f"kappa undefined at {element}: maximal elements {maximal}")
        self.element = element
        self.maximal = maximal


class PreconditionFailed(BinucError):
    pass


class Mismatch(BinucError):
    pass


class AlgebraError(BinucError):
    pass


class BadRank(AlgebraError):
    pass


class SchemaError(AlgebraError):
    pass


class InvariantViolation(AlgebraError):
    def __init__(self, message: str, entry=None):
        super().__init__(message)
        self.entry = entry


class TooLarge(AlgebraError):
    pass


class ClosureViolation(AlgebraError):
    pass


class NotATorsionClass(AlgebraError):
    pass


class NotBinuclear(AlgebraError):
    pass


class BijectionFailure(AlgebraError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotBijective(BijectionFailure):
    pass


class DependentGenerators(AlgebraError):
    pass


class CounterexampleFound(AlgebraError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
