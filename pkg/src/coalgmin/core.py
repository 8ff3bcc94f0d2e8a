"""Coalgebras, morphisms, image factorization, and partition quotients.

A coalgebra is a finite carrier of string state ids together with a total
structure map into the functor's successor structures.  A pointed coalgebra
additionally distinguishes an initial state.  Values are immutable; every
operation here is pure.

The factorization system in use is (surjective, injective) on finite
carriers.  ``factorize`` splits a homomorphism through its image coalgebra and
``diagonal_fill_in`` realizes the unique-diagonal axiom on raw state maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

from .errors import (
    DomainMismatch,
    IncompatiblePartition,
    InvalidMorphism,
    NotAHomomorphism,
    NotAPartition,
    NotInjective,
    NotSurjective,
    SpecMismatch,
    SquareDoesNotCommute,
    ValidationError,
    WellDefinednessViolation,
)
from .functors import FStructure, FunctorSpec, fmap, structures_equal


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    witness: Optional[str] = None


@dataclass(frozen=True)
class Coalgebra:
    """A carrier plus one successor structure per state.

    The raw constructor performs no checking so that invalid values can be
    built and then inspected by :func:`validate_coalgebra`; use
    :meth:`Coalgebra.make` in normal code.
    """

    functor: FunctorSpec
    states: tuple[str, ...]
    structure: Mapping[str, FStructure]

    @classmethod
    def make(cls, functor, states, structure) -> "Coalgebra":
        c = cls(functor, tuple(states), dict(structure))
        require_valid(c)
        return c

    def struct_of(self, state: str) -> FStructure:
        return self.structure[state]

    @property
    def is_empty(self) -> bool:
        return not self.states

    def state_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}


@dataclass(frozen=True)
class PointedCoalgebra:
    """A coalgebra with a distinguished initial state."""

    base: Coalgebra
    point: str

    @classmethod
    def make(cls, functor, states, structure, point) -> "PointedCoalgebra":
        c = cls(Coalgebra(functor, tuple(states), dict(structure)), point)
        require_valid(c)
        return c

    @property
    def functor(self) -> FunctorSpec:
        return self.base.functor

    @property
    def states(self) -> tuple[str, ...]:
        return self.base.states

    @property
    def structure(self) -> Mapping[str, FStructure]:
        return self.base.structure

    def struct_of(self, state: str) -> FStructure:
        return self.base.structure[state]

    @property
    def is_empty(self) -> bool:
        return False

    def state_index(self) -> dict[str, int]:
        return self.base.state_index()


AnyCoalgebra = Union[Coalgebra, PointedCoalgebra]


def underlying(c: AnyCoalgebra) -> Coalgebra:
    return c.base if isinstance(c, PointedCoalgebra) else c


def point_of(c: AnyCoalgebra) -> Optional[str]:
    return c.point if isinstance(c, PointedCoalgebra) else None


def repoint(c: AnyCoalgebra, base: Coalgebra, point: Optional[str]) -> AnyCoalgebra:
    """Wrap ``base`` as the same kind as ``c``."""
    if isinstance(c, PointedCoalgebra):
        if point is None:
            raise ValueError("pointed result needs a point")
        return PointedCoalgebra(base, point)
    return base


def validate_coalgebra(c: AnyCoalgebra) -> list[Violation]:
    """Check all invariants; return one violation per problem found."""
    base = underlying(c)
    out: list[Violation] = []
    seen = set()
    for s in base.states:
        if s in seen:
            out.append(Violation("duplicate-state", f"state {s!r} listed twice", s))
        seen.add(s)
    carrier = frozenset(base.states)
    for s in base.states:
        if s not in base.structure:
            out.append(Violation("missing-structure", f"state {s!r} has no structure", s))
            continue
        t = base.structure[s]
        try:
            base.functor.check_structure(t)
        except Exception as exc:  # MalformedStructure or SpecMismatch
            code = "malformed-structure"
            if "zero weight" in str(exc):
                code = "zero-weight-entry"
            out.append(Violation(code, f"state {s!r}: {exc}", s))
            continue
        for tgt in sorted(base.functor.support(t)):
            if tgt not in carrier:
                out.append(
                    Violation(
                        "dangling-state",
                        f"structure of {s!r} references unknown state {tgt!r}",
                        tgt,
                    )
                )
    for s in base.structure:
        if s not in carrier:
            out.append(
                Violation("dangling-state", f"structure given for unknown state {s!r}", s)
            )
    p = point_of(c)
    if p is not None and p not in carrier:
        out.append(Violation("point-not-in-carrier", f"point {p!r} not a state", p))
    return out


def require_valid(c: AnyCoalgebra) -> None:
    violations = validate_coalgebra(c)
    if violations:
        raise ValidationError(violations)


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Morphism:
    """A total state map between two coalgebras of the same kind.

    Construction checks only that the map is a function dom -> cod; whether it
    is a homomorphism is the business of :func:`check_homomorphism`.
    """

    dom: AnyCoalgebra
    cod: AnyCoalgebra
    mapping: Mapping[str, str]

    def __post_init__(self):
        cod_states = set(underlying(self.cod).states)
        for s in underlying(self.dom).states:
            if s not in self.mapping:
                raise InvalidMorphism(f"map undefined at state {s!r}")
            if self.mapping[s] not in cod_states:
                raise InvalidMorphism(
                    f"map sends {s!r} to {self.mapping[s]!r}, not a codomain state"
                )

    def __call__(self, state: str) -> str:
        return self.mapping[state]

    @property
    def pointed(self) -> bool:
        return isinstance(self.dom, PointedCoalgebra) and isinstance(
            self.cod, PointedCoalgebra
        )

    def is_surjective(self) -> bool:
        dom_states = underlying(self.dom).states
        return {self.mapping[s] for s in dom_states} == set(underlying(self.cod).states)

    def is_injective(self) -> bool:
        dom_states = underlying(self.dom).states
        return len({self.mapping[s] for s in dom_states}) == len(dom_states)

    def is_bijective(self) -> bool:
        return self.is_surjective() and self.is_injective()


def identity_morphism(c: AnyCoalgebra) -> Morphism:
    return Morphism(c, c, {s: s for s in underlying(c).states})


def compose_morphisms(outer: Morphism, inner: Morphism) -> Morphism:
    """outer after inner; the codomain of ``inner`` must be ``outer``'s domain."""
    if inner.cod != outer.dom:
        raise DomainMismatch("codomain of inner morphism differs from outer domain")
    mapping = {s: outer.mapping[inner.mapping[s]] for s in underlying(inner.dom).states}
    return Morphism(inner.dom, outer.cod, mapping)


def hom_failures(h: Morphism) -> tuple[str, ...]:
    """States at which the homomorphism law fails, in carrier order.

    For pointed endpoints the point is reported first if it is not preserved.
    Empty result means h is a (pointed) homomorphism.
    """
    dom, cod = underlying(h.dom), underlying(h.cod)
    if dom.functor != cod.functor:
        raise SpecMismatch("morphism endpoints use different functors")
    failures = []
    if h.pointed and h.mapping[h.dom.point] != h.cod.point:
        failures.append(h.dom.point)
    spec = dom.functor
    for x in dom.states:
        expected = cod.struct_of(h.mapping[x])
        actual = fmap(spec, h.mapping, dom.struct_of(x))
        if not structures_equal(spec, expected, actual):
            if x not in failures:
                failures.append(x)
    return tuple(failures)


def check_homomorphism(h: Morphism) -> bool:
    return not hom_failures(h)


def require_homomorphism(h: Morphism) -> Morphism:
    failures = hom_failures(h)
    if failures:
        raise NotAHomomorphism(failures[0])
    return h


# ---------------------------------------------------------------------------
# Diagonal fill-in on raw state maps
# ---------------------------------------------------------------------------


def diagonal_fill_in(
    e: Mapping[str, str],
    m: Mapping[str, str],
    f: Mapping[str, str],
    g: Mapping[str, str],
) -> dict[str, str]:
    """The unique d with m.d = g and d.e = f, for e surjective and m injective.

    The square g.e = m.f is over carriers A = keys(e) = keys(f),
    B = keys(g) and C = keys(m); d is defined on B by pulling any e-preimage
    back through f, which is forced because e is surjective and m injective.
    """
    a_states = set(e)
    if set(f) != a_states:
        raise InvalidMorphism("e and f must share their domain")
    b_states = set(g)
    if not set(e.values()) <= b_states:
        raise InvalidMorphism("e must land in the domain of g")
    if set(e.values()) != b_states:
        raise NotSurjective("left map of the fill-in square is not surjective")
    if len(set(m.values())) != len(m):
        raise NotInjective("bottom map of the fill-in square is not injective")
    if not set(f.values()) <= set(m):
        raise InvalidMorphism("f must land in the domain of m")
    for a in sorted(a_states):
        if g[e[a]] != m[f[a]]:
            raise SquareDoesNotCommute(a)
    d: dict[str, str] = {}
    for a in sorted(a_states):
        b = e[a]
        if b in d and d[b] != f[a]:
            # cannot happen: m injective forces f constant on e-fibers
            raise SquareDoesNotCommute(a)
        d[b] = f[a]
    return d


# ---------------------------------------------------------------------------
# Image factorization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    """h = m . e with e surjective onto the image and m injective."""

    e: Morphism
    image: AnyCoalgebra
    m: Morphism


def factorize(h: Morphism) -> Factorization:
    """Split a validated homomorphism through its image coalgebra.

    The image carrier is exactly the set of codomain states hit by h, in
    codomain carrier order; its structure is forced by applying h to the
    structures of any preimage, with an explicit well-definedness check
    across each fiber.
    """
    require_homomorphism(h)
    dom, cod = underlying(h.dom), underlying(h.cod)
    spec = dom.functor
    hit = {h.mapping[x] for x in dom.states}
    image_states = tuple(y for y in cod.states if y in hit)
    structure: dict[str, FStructure] = {}
    for x in dom.states:
        y = h.mapping[x]
        t = fmap(spec, h.mapping, dom.struct_of(x))
        if y in structure:
            if not structures_equal(spec, structure[y], t):
                raise WellDefinednessViolation(
                    f"fiber over {y!r} induces two different structures"
                )
        else:
            structure[y] = t
    image_base = Coalgebra(spec, image_states, structure)
    if h.pointed:
        image: AnyCoalgebra = PointedCoalgebra(image_base, h.mapping[h.dom.point])
    else:
        image = image_base
    e = Morphism(h.dom, image, dict(h.mapping))
    m = Morphism(image, h.cod, {y: y for y in image_states})
    require_homomorphism(e)
    require_homomorphism(m)
    return Factorization(e, image, m)


# ---------------------------------------------------------------------------
# Partitions and quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks in canonical form.

    Members of each block are sorted and blocks are ordered by their least
    member, so equal partitions compare equal.  Covering of a carrier is
    checked where a carrier is available (see apply_partition_quotient).
    """

    blocks: tuple[tuple[str, ...], ...]

    @classmethod
    def of(cls, blocks: Iterable[Iterable[str]]) -> "Partition":
        canon = []
        seen: set[str] = set()
        for block in blocks:
            members = tuple(sorted(set(block)))
            if not members:
                raise NotAPartition("empty block")
            if seen & set(members):
                raise NotAPartition(f"overlapping blocks at {sorted(seen & set(members))!r}")
            seen.update(members)
            canon.append(members)
        canon.sort(key=lambda b: b[0])
        return cls(tuple(canon))

    @classmethod
    def discrete(cls, states: Iterable[str]) -> "Partition":
        return cls.of([s] for s in states)

    @classmethod
    def single(cls, states: Iterable[str]) -> "Partition":
        states = tuple(states)
        return cls.of([states]) if states else cls(())

    @classmethod
    def from_key(cls, states: Iterable[str], key) -> "Partition":
        groups: dict[object, list[str]] = {}
        for s in states:
            groups.setdefault(key(s), []).append(s)
        return cls.of(groups.values())

    def members(self) -> frozenset[str]:
        return frozenset(s for b in self.blocks for s in b)

    def representative_map(self) -> dict[str, str]:
        return {s: b[0] for b in self.blocks for s in b}

    def block_of(self, state: str) -> tuple[str, ...]:
        for b in self.blocks:
            if state in b:
                return b
        raise KeyError(state)

    @property
    def is_discrete(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def refines(self, other: "Partition") -> bool:
        """Every block of self lies inside a block of other."""
        rep = other.representative_map()
        return all(len({rep[s] for s in b}) == 1 for b in self.blocks)

    def join(self, other: "Partition") -> "Partition":
        """Least partition refined by both: transitive closure of block unions."""
        parent: dict[str, str] = {}

        def find(x: str) -> str:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.members() | other.members():
            parent[s] = s
        for part in (self, other):
            for b in part.blocks:
                for s in b[1:]:
                    parent[find(s)] = find(b[0])
        groups: dict[str, list[str]] = {}
        for s in parent:
            groups.setdefault(find(s), []).append(s)
        return Partition.of(groups.values())


def kernel_partition(h: Morphism) -> Partition:
    """The fibers of h as a partition of its domain carrier."""
    fibers: dict[str, list[str]] = {}
    for x in underlying(h.dom).states:
        fibers.setdefault(h.mapping[x], []).append(x)
    return Partition.of(fibers.values())


def partition_compatible(c: AnyCoalgebra, p: Partition) -> Optional[tuple]:
    """None if p induces a quotient coalgebra, else a witness (block, x, y)."""
    base = underlying(c)
    kappa = p.representative_map()
    spec = base.functor
    for block in p.blocks:
        first = fmap(spec, kappa, base.struct_of(block[0]))
        for x in block[1:]:
            t = fmap(spec, kappa, base.struct_of(x))
            if not structures_equal(spec, first, t):
                return (block, block[0], x)
    return None


def apply_partition_quotient(c: AnyCoalgebra, p: Partition) -> tuple[AnyCoalgebra, Morphism]:
    """Quotient c by a compatible partition of its carrier.

    Quotient states are the least members of the blocks, so the result is
    canonical and diffable; the projection is returned as a validated
    surjective homomorphism.
    """
    require_valid(c)
    base = underlying(c)
    if p.members() != frozenset(base.states):
        raise NotAPartition("blocks do not cover the carrier exactly")
    witness = partition_compatible(c, p)
    if witness is not None:
        raise IncompatiblePartition(*witness)
    kappa = p.representative_map()
    spec = base.functor
    q_states = tuple(b[0] for b in p.blocks)
    q_structure = {b[0]: fmap(spec, kappa, base.struct_of(b[0])) for b in p.blocks}
    q_base = Coalgebra(spec, q_states, q_structure)
    q = repoint(c, q_base, kappa[c.point] if isinstance(c, PointedCoalgebra) else None)
    projection = Morphism(c, q, kappa)
    require_homomorphism(projection)
    return q, projection
