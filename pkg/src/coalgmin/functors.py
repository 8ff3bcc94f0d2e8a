"""The four built-in system-type functors and their successor structures.

A functor value fixes the shape of one state's successor structure and the
action of state maps on it.  Everything downstream (homomorphism checking,
partition refinement, reachability) is generic over this interface, so adding
a functor means implementing exactly the methods of :class:`FunctorSpec`.

Structures are immutable, canonical and hashable: two structures are
semantically equal iff they compare equal, which is what lets the refinement
loop group states by their successor signatures with a plain dict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .errors import (
    MalformedStructure,
    PartialMap,
    SpecMismatch,
    SupportEscapesSubset,
    WeightedWithoutPool,
)

# Exact weights.  Equality of weighted structures must be decidable for the
# refinement fixpoint to be meaningful, so floats are out.
Weight = Fraction

RATIONALS = "rational"
NATURALS = "natural"


@dataclass(frozen=True)
class DfaStruct:
    """Acceptance flag plus one successor per symbol, in alphabet order."""

    accepting: bool
    moves: tuple[tuple[str, str], ...]

    def target(self, symbol: str) -> str:
        for sym, tgt in self.moves:
            if sym == symbol:
                return tgt
        raise KeyError(symbol)

    def move_dict(self) -> dict[str, str]:
        return dict(self.moves)


@dataclass(frozen=True)
class SetStruct:
    successors: frozenset[str]


@dataclass(frozen=True)
class LabelledStruct:
    edges: frozenset[tuple[str, str]]  # (label, target)


@dataclass(frozen=True)
class WeightedStruct:
    """Finite map target -> nonzero weight, stored sorted by target id."""

    weights: tuple[tuple[str, Weight], ...]

    def weight_dict(self) -> dict[str, Weight]:
        return dict(self.weights)


FStructure = Union[DfaStruct, SetStruct, LabelledStruct, WeightedStruct]


def _check_distinct(symbols: Sequence[str], what: str) -> tuple[str, ...]:
    symbols = tuple(symbols)
    if not symbols:
        raise ValueError(f"{what} must be nonempty")
    if len(set(symbols)) != len(symbols):
        raise ValueError(f"{what} contains duplicates: {symbols!r}")
    if not all(isinstance(s, str) for s in symbols):
        raise ValueError(f"{what} entries must be strings")
    return symbols


class FunctorSpec:
    """Interface shared by the built-in functors.

    ``preserves_inverse_images`` is advisory: it records for which functors
    quotients of reachable systems stay reachable, hence for which the two
    minimization aspects commute.  It is attested for the rational-weighted
    case (weights may cancel) and validated empirically for the others by the
    property suites.
    """

    kind: str = ""
    structure_type: type = object
    preserves_inverse_images: bool = True
    preserves_weak_kernel_pairs: bool = True

    # -- construction -----------------------------------------------------

    def check_structure(self, t: FStructure) -> None:
        """Raise MalformedStructure unless t is well-formed for this functor."""
        raise NotImplementedError

    # -- the functor's action and queries ----------------------------------

    def fmap(self, mapping: Mapping[str, str], t: FStructure) -> FStructure:
        raise NotImplementedError

    def support(self, t: FStructure) -> frozenset[str]:
        raise NotImplementedError

    def enumerate_structures(
        self,
        carrier: Sequence[str],
        weight_pool: Optional[Iterable] = None,
    ) -> Iterator[FStructure]:
        raise NotImplementedError

    def local_signature(self, t: FStructure):
        """Invariant of t under renaming of states; used to prune iso search."""
        raise NotImplementedError

    # -- shared helpers ----------------------------------------------------

    def _applied(self, mapping: Mapping[str, str], state: str) -> str:
        try:
            return mapping[state]
        except KeyError:
            raise PartialMap(f"map is undefined at state {state!r}") from None

    def require_structure(self, t: FStructure) -> None:
        if not isinstance(t, self.structure_type):
            raise SpecMismatch(
                f"expected a {self.structure_type.__name__} for functor "
                f"{self.kind!r}, got {type(t).__name__}"
            )


@dataclass(frozen=True)
class DfaFunctor(FunctorSpec):
    """Deterministic automata: an acceptance bit and one successor per symbol."""

    alphabet: tuple[str, ...]

    kind = "dfa"
    structure_type = DfaStruct

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _check_distinct(self.alphabet, "alphabet"))

    def struct(self, accepting: bool, moves: Mapping[str, str]) -> DfaStruct:
        missing = [a for a in self.alphabet if a not in moves]
        if missing:
            raise MalformedStructure(f"transition map lacks symbols {missing!r}")
        extra = [a for a in moves if a not in self.alphabet]
        if extra:
            raise MalformedStructure(f"transition map has unknown symbols {extra!r}")
        return DfaStruct(bool(accepting), tuple((a, moves[a]) for a in self.alphabet))

    def check_structure(self, t: FStructure) -> None:
        self.require_structure(t)
        if tuple(sym for sym, _ in t.moves) != self.alphabet:
            raise MalformedStructure(
                f"transition entries {t.moves!r} do not match alphabet {self.alphabet!r}"
            )

    def fmap(self, mapping, t):
        return DfaStruct(
            t.accepting,
            tuple((sym, self._applied(mapping, tgt)) for sym, tgt in t.moves),
        )

    def support(self, t):
        return frozenset(tgt for _, tgt in t.moves)

    def enumerate_structures(self, carrier, weight_pool=None):
        carrier = tuple(carrier)
        for accepting in (False, True):
            for targets in itertools.product(carrier, repeat=len(self.alphabet)):
                yield DfaStruct(accepting, tuple(zip(self.alphabet, targets)))

    def local_signature(self, t):
        return t.accepting


@dataclass(frozen=True)
class PowersetFunctor(FunctorSpec):
    """Transition systems: a finite set of successors."""

    kind = "powerset"
    structure_type = SetStruct

    def struct(self, successors: Iterable[str]) -> SetStruct:
        return SetStruct(frozenset(successors))

    def check_structure(self, t: FStructure) -> None:
        self.require_structure(t)

    def fmap(self, mapping, t):
        return SetStruct(frozenset(self._applied(mapping, s) for s in t.successors))

    def support(self, t):
        return t.successors

    def enumerate_structures(self, carrier, weight_pool=None):
        carrier = tuple(carrier)
        for mask in range(1 << len(carrier)):
            yield SetStruct(
                frozenset(s for i, s in enumerate(carrier) if mask >> i & 1)
            )

    def local_signature(self, t):
        return len(t.successors)


@dataclass(frozen=True)
class LabelledFunctor(FunctorSpec):
    """Labelled transition systems: a finite set of (label, successor) edges."""

    labels: tuple[str, ...]

    kind = "labelled-powerset"
    structure_type = LabelledStruct

    def __post_init__(self):
        object.__setattr__(self, "labels", _check_distinct(self.labels, "labels"))

    def struct(self, edges: Iterable[tuple[str, str]]) -> LabelledStruct:
        edges = frozenset((str(l), str(s)) for l, s in edges)
        bad = sorted(l for l, _ in edges if l not in self.labels)
        if bad:
            raise MalformedStructure(f"unknown labels {bad!r}")
        return LabelledStruct(edges)

    def check_structure(self, t: FStructure) -> None:
        self.require_structure(t)
        bad = sorted(l for l, _ in t.edges if l not in self.labels)
        if bad:
            raise MalformedStructure(f"unknown labels {bad!r}")

    def fmap(self, mapping, t):
        return LabelledStruct(
            frozenset((l, self._applied(mapping, s)) for l, s in t.edges)
        )

    def support(self, t):
        return frozenset(s for _, s in t.edges)

    def enumerate_structures(self, carrier, weight_pool=None):
        slots = [(l, s) for l in self.labels for s in carrier]
        for mask in range(1 << len(slots)):
            yield LabelledStruct(
                frozenset(e for i, e in enumerate(slots) if mask >> i & 1)
            )

    def local_signature(self, t):
        return tuple(sorted(l for l, _ in t.edges))


def _as_weight(value) -> Weight:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedStructure(f"bad weight literal {value!r}: {exc}") from None
    raise MalformedStructure(f"weights must be exact rationals, got {value!r}")


@dataclass(frozen=True)
class WeightedFunctor(FunctorSpec):
    """Weighted systems over a commutative monoid of exact weights.

    ``monoid`` is ``"rational"`` or ``"natural"``; the natural case is the bag
    functor (finite multisets).  Zero weight means no transition, so zero
    entries are never stored.
    """

    monoid: str

    kind = "weighted"
    structure_type = WeightedStruct

    def __post_init__(self):
        if self.monoid not in (RATIONALS, NATURALS):
            raise ValueError(f"unknown monoid {self.monoid!r}")

    @property
    def preserves_inverse_images(self) -> bool:
        # Rational weights may cancel, which can disconnect quotient states.
        return self.monoid == NATURALS

    @property
    def preserves_weak_kernel_pairs(self) -> bool:
        return self.monoid == NATURALS

    def check_weight(self, w: Weight) -> None:
        if w == 0:
            raise MalformedStructure("zero weight entries must be dropped")
        if self.monoid == NATURALS and (w.denominator != 1 or w < 0):
            raise MalformedStructure(
                f"natural-weighted structures need positive integer weights, got {w}"
            )

    def struct(self, weights: Mapping[str, object]) -> WeightedStruct:
        entries = []
        for state in sorted(weights):
            w = _as_weight(weights[state])
            self.check_weight(w)
            entries.append((str(state), w))
        return WeightedStruct(tuple(entries))

    def check_structure(self, t: FStructure) -> None:
        self.require_structure(t)
        targets = [s for s, _ in t.weights]
        if targets != sorted(set(targets)):
            raise MalformedStructure(f"weight entries not canonical: {t.weights!r}")
        for _, w in t.weights:
            if not isinstance(w, Fraction):
                raise MalformedStructure(f"non-exact weight {w!r}")
            self.check_weight(w)

    def fmap(self, mapping, t):
        sums: dict[str, Weight] = {}
        for state, w in t.weights:
            image = self._applied(mapping, state)
            sums[image] = sums.get(image, Fraction(0)) + w
        return WeightedStruct(
            tuple((s, w) for s, w in sorted(sums.items()) if w != 0)
        )

    def support(self, t):
        return frozenset(s for s, _ in t.weights)

    def enumerate_structures(self, carrier, weight_pool=None):
        if weight_pool is None:
            raise WeightedWithoutPool(
                "enumerating weighted structures needs a finite weight pool"
            )
        pool = sorted({_as_weight(w) for w in weight_pool})
        for w in pool:
            self.check_weight(w)
        choices = (None, *pool)
        carrier = tuple(carrier)
        for picks in itertools.product(choices, repeat=len(carrier)):
            yield WeightedStruct(
                tuple((s, w) for s, w in zip(carrier, picks) if w is not None)
            )

    def local_signature(self, t):
        return tuple(sorted(w for _, w in t.weights))


# ---------------------------------------------------------------------------
# Spec-level operations.  Thin wrappers so call sites read uniformly.
# ---------------------------------------------------------------------------


def fmap(spec: FunctorSpec, mapping: Mapping[str, str], t: FStructure) -> FStructure:
    """Apply a state map to a successor structure (the functor's action)."""
    spec.require_structure(t)
    return spec.fmap(mapping, t)


def support(spec: FunctorSpec, t: FStructure) -> frozenset[str]:
    """The state ids occurring in t."""
    spec.require_structure(t)
    return spec.support(t)


def structures_equal(spec: FunctorSpec, t1: FStructure, t2: FStructure) -> bool:
    """Semantic equality of two structures of the same functor."""
    spec.require_structure(t1)
    spec.require_structure(t2)
    return t1 == t2


def restrict_structure(spec: FunctorSpec, t: FStructure, subset: Iterable[str]) -> FStructure:
    """Re-scope t to a sub-carrier; requires support(t) inside the subset."""
    allowed = frozenset(subset)
    escaping = sorted(spec.support(t) - allowed)
    if escaping:
        raise SupportEscapesSubset(escaping[0])
    return t


def enumerate_structures(
    spec: FunctorSpec,
    carrier: Sequence[str],
    weight_pool: Optional[Iterable] = None,
) -> Iterator[FStructure]:
    """Every well-formed structure over the carrier, each once, fixed order."""
    return spec.enumerate_structures(carrier, weight_pool)
