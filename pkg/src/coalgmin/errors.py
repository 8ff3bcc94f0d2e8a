"""Exception types used across the library.

Construction errors carry the offending value so callers can report precise
diagnostics; the CLI maps every subclass of :class:`CoalgminError` to exit
code 2 unless stated otherwise.
"""


class CoalgminError(Exception):
    """Base class of all library-specific errors."""


class MalformedStructure(CoalgminError):
    """A successor structure violates the invariants of its functor."""


class PartialMap(CoalgminError):
    """A state map is not total where totality is required."""


class InvalidMorphism(CoalgminError):
    """A morphism's map is not a function between the declared carriers."""


class SpecMismatch(CoalgminError):
    """Two values built for different functors were combined."""


class SupportEscapesSubset(CoalgminError):
    def __init__(self, state: str):
        super().__init__(f"successor {state!r} lies outside the requested subset")
        self.state = state


class WeightedWithoutPool(CoalgminError):
    """Weighted structure enumeration requires a finite weight pool."""


class ValidationError(CoalgminError):
    """A coalgebra or document failed validation; carries every violation."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        lines = "; ".join(f"{v.code}: {v.message}" for v in self.violations)
        super().__init__(lines or "validation failed")


class DomainMismatch(CoalgminError):
    """Morphism composition where cod(inner) differs from dom(outer)."""


class NotAHomomorphism(CoalgminError):
    def __init__(self, witness: str):
        super().__init__(f"map violates the homomorphism law at state {witness!r}")
        self.witness = witness


class WellDefinednessViolation(CoalgminError):
    """Image structure disagreed across a fiber; indicates a library bug."""


class NotAPartition(CoalgminError):
    """Blocks are empty, overlapping, or do not cover the carrier."""


class IncompatiblePartition(CoalgminError):
    def __init__(self, block, x: str, y: str):
        super().__init__(
            f"states {x!r} and {y!r} of block {tuple(block)!r} have different "
            "successor structures modulo the partition"
        )
        self.block = tuple(block)
        self.x = x
        self.y = y


class SquareDoesNotCommute(CoalgminError):
    def __init__(self, witness: str):
        super().__init__(f"square does not commute at {witness!r}")
        self.witness = witness


class NotSurjective(CoalgminError):
    """The map on the epi side of a fill-in square is not surjective."""


class NotInjective(CoalgminError):
    """The map on the mono side of a fill-in square is not injective."""


class OracleBoundExceeded(CoalgminError):
    """An enumeration oracle was asked about an instance above its bound."""


class SearchBoundExceeded(CoalgminError):
    """Homomorphism search exceeded its configured candidate budget."""


class CyclicReachablePart(CoalgminError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__(
            "reachable part contains a cycle: " + " -> ".join(self.cycle)
        )


class WrongFunctor(CoalgminError):
    """Operation applied to a coalgebra of an unsupported functor."""


class ParseError(CoalgminError):
    def __init__(self, line, reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line else ""
        super().__init__(where + reason)
