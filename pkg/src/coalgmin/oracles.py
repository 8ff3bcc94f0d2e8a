"""Brute-force oracles and property checks over small instances.

Everything here exists to cross-examine the production algorithms:
homomorphism enumeration is an independent backtracking search that never
calls the reachability or refinement code, and the ``check_*`` functions
verify universal properties (least subobject, greatest quotient,
functoriality of minimization, closure under quotients) by exhaustive
inspection, reporting witnesses instead of relying on the theory.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .core import (
    AnyCoalgebra,
    Coalgebra,
    Morphism,
    PointedCoalgebra,
    check_homomorphism,
    apply_partition_quotient,
    point_of,
    require_homomorphism,
    require_valid,
    underlying,
)
from .errors import SearchBoundExceeded, SpecMismatch, WeightedWithoutPool
from .functors import (
    DfaFunctor,
    DfaStruct,
    FunctorSpec,
    LabelledFunctor,
    LabelledStruct,
    NATURALS,
    PowersetFunctor,
    SetStruct,
    WeightedFunctor,
    WeightedStruct,
    fmap,
    structures_equal,
)
from .observability import (
    behavioural_classes,
    enumerate_compatible_partitions,
    is_simple,
    simple_quotient,
)
from .reachability import (
    enumerate_pointed_subcoalgebras,
    is_reachable,
    reachable_part,
)


@dataclass(frozen=True)
class HomSearchConfig:
    pointed: bool = False
    max_candidates: int = 1_000_000
    state_bound: int = 12

    def __post_init__(self):
        if self.max_candidates <= 0 or self.state_bound <= 0:
            raise ValueError("search bounds must be positive")


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one property check: empty failures means the check passed."""

    name: str
    instances: int
    failures: tuple[tuple[str, str], ...]
    witnesses: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "ok" if self.passed else "FAIL"
        extra = ""
        if self.failures:
            digest, witness = self.failures[0]
            extra = f" first-failure={digest}:{witness}"
        return f"{status} {self.name} instances={self.instances}{extra}"


def stable_digest(c: AnyCoalgebra) -> str:
    """Content hash of a coalgebra, stable across runs and platforms.

    Hashes the canonical document form rather than reprs, since set reprs
    depend on the interpreter's hash seed.
    """
    from .formats import serialize_coalgebra

    return hashlib.sha256(serialize_coalgebra(c).encode()).hexdigest()[:12]


# ---------------------------------------------------------------------------
# Homomorphism enumeration
# ---------------------------------------------------------------------------


def enumerate_homomorphisms(
    a: AnyCoalgebra, b: AnyCoalgebra, cfg: Optional[HomSearchConfig] = None
) -> list[Morphism]:
    """Every homomorphism a -> b, found by pruned backtracking.

    Maps are extended state by state in carrier order; as soon as a state and
    all its successors are assigned, the homomorphism equation at that state
    is checked, cutting the dead branch immediately.  The result order is
    lexicographic in codomain carrier positions.  This function deliberately
    never consults the reachability or refinement algorithms.
    """
    cfg = cfg or HomSearchConfig()
    require_valid(a)
    require_valid(b)
    base_a, base_b = underlying(a), underlying(b)
    if base_a.functor != base_b.functor:
        raise SpecMismatch("cannot search homomorphisms across functors")
    if len(base_a.states) > cfg.state_bound:
        raise SearchBoundExceeded(
            f"domain has {len(base_a.states)} states, bound is {cfg.state_bound}"
        )
    if cfg.pointed and (point_of(a) is None or point_of(b) is None):
        raise SpecMismatch("pointed search needs pointed coalgebras")

    spec = base_a.functor
    order = base_a.states
    position = {s: i for i, s in enumerate(order)}
    needed = {
        z: frozenset({z} | spec.support(base_a.struct_of(z))) for z in order
    }
    touched: dict[str, list[str]] = {s: [] for s in order}
    for z in order:
        for s in needed[z]:
            touched[s].append(z)
    remaining = {z: len(needed[z]) for z in order}

    candidates_by_state: dict[str, Sequence[str]] = {}
    for x in order:
        if cfg.pointed and x == point_of(a):
            candidates_by_state[x] = (point_of(b),)
        else:
            candidates_by_state[x] = base_b.states

    budget = cfg.max_candidates
    found: list[Morphism] = []
    mapping: dict[str, str] = {}

    def law_holds(z: str) -> bool:
        expected = base_b.struct_of(mapping[z])
        return structures_equal(
            spec, expected, fmap(spec, mapping, base_a.struct_of(z))
        )

    def extend(i: int) -> None:
        nonlocal budget
        if i == len(order):
            dom = a if cfg.pointed else base_a
            cod = b if cfg.pointed else base_b
            found.append(Morphism(dom, cod, dict(mapping)))
            return
        x = order[i]
        for y in candidates_by_state[x]:
            budget -= 1
            if budget < 0:
                raise SearchBoundExceeded(
                    f"homomorphism search exceeded {cfg.max_candidates} candidates"
                )
            mapping[x] = y
            completed = []
            ok = True
            for z in touched[x]:
                remaining[z] -= 1
                completed.append(z)
                if remaining[z] == 0 and not law_holds(z):
                    ok = False
                    break
            if ok:
                extend(i + 1)
            for z in completed:
                remaining[z] += 1
            del mapping[x]

    extend(0)
    return found


def count_homomorphisms(
    a: AnyCoalgebra, b: AnyCoalgebra, cfg: Optional[HomSearchConfig] = None
) -> int:
    return len(enumerate_homomorphisms(a, b, cfg))


# ---------------------------------------------------------------------------
# Kernel-pair coalgebra of the behavioural partition
# ---------------------------------------------------------------------------


def _pair_id(x: str, y: str) -> str:
    return f"{x}|{y}"


def kernel_pair_coalgebra(c: AnyCoalgebra) -> Optional[tuple[Coalgebra, Morphism, Morphism]]:
    """The behavioural-equivalence relation as a coalgebra with projections.

    For functors preserving weak kernel pairs the relation carries a
    structure whose projections are homomorphisms; when the relation is not
    the diagonal they are two distinct morphisms into c, witnessing that a
    non-simple coalgebra is not subterminal.  Rational weights are excluded:
    cancellation breaks the construction.
    """
    base = underlying(c)
    spec = base.functor
    if not spec.preserves_weak_kernel_pairs:
        return None
    partition = behavioural_classes(base)
    kappa = partition.representative_map()
    pairs = [
        (x, y)
        for x in base.states
        for y in base.states
        if kappa[x] == kappa[y]
    ]
    structure = {}
    for x, y in pairs:
        structure[_pair_id(x, y)] = _pair_structure(
            spec, base.struct_of(x), base.struct_of(y), kappa, base.states
        )
    carrier = tuple(_pair_id(x, y) for x, y in pairs)
    kernel = Coalgebra(spec, carrier, structure)
    pr1 = Morphism(kernel, base, {_pair_id(x, y): x for x, y in pairs})
    pr2 = Morphism(kernel, base, {_pair_id(x, y): y for x, y in pairs})
    require_homomorphism(pr1)
    require_homomorphism(pr2)
    return kernel, pr1, pr2


def _pair_structure(spec, tx, ty, kappa, carrier):
    if isinstance(spec, DfaFunctor):
        moves = tuple(
            (sym, _pair_id(u, v))
            for (sym, u), (_, v) in zip(tx.moves, ty.moves)
        )
        return DfaStruct(tx.accepting, moves)
    if isinstance(spec, PowersetFunctor):
        return SetStruct(
            frozenset(
                _pair_id(u, v)
                for u in tx.successors
                for v in ty.successors
                if kappa[u] == kappa[v]
            )
        )
    if isinstance(spec, LabelledFunctor):
        return LabelledStruct(
            frozenset(
                (l, _pair_id(u, v))
                for l, u in tx.edges
                for k, v in ty.edges
                if l == k and kappa[u] == kappa[v]
            )
        )
    if isinstance(spec, WeightedFunctor) and spec.monoid == NATURALS:
        index = {s: i for i, s in enumerate(carrier)}
        entries: dict[str, Fraction] = {}
        blocks = sorted({kappa[s] for s, _ in tx.weights} | {kappa[s] for s, _ in ty.weights})
        wx, wy = dict(tx.weights), dict(ty.weights)
        for block in blocks:
            sources = [
                [s, wx[s]] for s in sorted(wx, key=index.__getitem__) if kappa[s] == block
            ]
            sinks = [
                [s, wy[s]] for s in sorted(wy, key=index.__getitem__) if kappa[s] == block
            ]
            # northwest-corner transport: both sides sum to the block weight
            i = j = 0
            while i < len(sources) and j < len(sinks):
                amount = min(sources[i][1], sinks[j][1])
                if amount > 0:
                    key = _pair_id(sources[i][0], sinks[j][0])
                    entries[key] = entries.get(key, Fraction(0)) + amount
                sources[i][1] -= amount
                sinks[j][1] -= amount
                if sources[i][1] == 0:
                    i += 1
                if sinks[j][1] == 0:
                    j += 1
        return WeightedStruct(tuple(sorted(entries.items())))
    raise SpecMismatch(f"no kernel-pair structure for {spec!r}")


# ---------------------------------------------------------------------------
# Property checks
# ---------------------------------------------------------------------------

_SMALL = 4  # instances up to this size get an extra enumeration cross-check


def check_minimal_iff_incoming_epi(
    c: PointedCoalgebra,
    pool: Iterable[PointedCoalgebra],
    cfg: Optional[HomSearchConfig] = None,
) -> PropertyReport:
    """Reachability = every incoming pointed homomorphism is surjective.

    For reachable inputs, every pointed homomorphism from every pool member
    must be surjective.  For non-reachable inputs, the inclusion of the
    reachable part is recorded as the witnessing non-surjective morphism.
    """
    cfg = cfg or HomSearchConfig(pointed=True)
    failures = []
    witnesses = []
    pool = list(pool)
    if is_reachable(c):
        for d in pool:
            for h in enumerate_homomorphisms(d, c, cfg):
                if not h.is_surjective():
                    failures.append(
                        (stable_digest(d), f"non-surjective hom {sorted(h.mapping.items())}")
                    )
    else:
        part, inclusion = reachable_part(c)
        if inclusion.is_surjective():
            failures.append((stable_digest(c), "reachable part covers a non-reachable input"))
        else:
            witnesses.append(
                f"inclusion of the reachable part ({len(part.states)} of "
                f"{len(c.states)} states) is not surjective"
            )
    return PropertyReport(
        "minimal-iff-incoming-epi", len(pool) or 1, tuple(failures), tuple(witnesses)
    )


def check_simple_subterminal(
    c: AnyCoalgebra,
    pool: Iterable[AnyCoalgebra],
    cfg: Optional[HomSearchConfig] = None,
) -> PropertyReport:
    """Simplicity = at most one homomorphism from anywhere into c.

    The converse direction looks for two distinct morphisms into a non-simple
    c: first among its endomorphisms, then via the projections of the
    behavioural kernel pair.  For rational weights the converse is not a
    theorem (weights may cancel), so a missing witness is noted rather than
    counted as a failure.
    """
    cfg = cfg or HomSearchConfig()
    base = underlying(c)
    failures = []
    witnesses = []
    pool = list(pool)
    if is_simple(base):
        for d in pool:
            n = count_homomorphisms(underlying(d), base, cfg)
            if n > 1:
                failures.append(
                    (stable_digest(d), f"{n} homomorphisms into a simple coalgebra")
                )
    else:
        endos = enumerate_homomorphisms(base, base, cfg)
        if len(endos) >= 2:
            witnesses.append(f"{len(endos)} endomorphisms of a non-simple coalgebra")
        else:
            kernel = kernel_pair_coalgebra(base)
            if kernel is not None and kernel[1].mapping != kernel[2].mapping:
                witnesses.append(
                    "kernel-pair projections are two distinct incoming homomorphisms"
                )
            elif base.functor.preserves_weak_kernel_pairs:
                failures.append(
                    (stable_digest(c), "no second incoming homomorphism found")
                )
            else:
                witnesses.append(
                    "converse not applicable: functor does not preserve weak kernel pairs"
                )
    return PropertyReport(
        "simple-subterminal", len(pool) or 1, tuple(failures), tuple(witnesses)
    )


def _subcoalgebra_on(c: PointedCoalgebra, states: tuple[str, ...]) -> PointedCoalgebra:
    structure = {s: c.struct_of(s) for s in states}
    return PointedCoalgebra(Coalgebra(c.functor, states, structure), c.point)


def check_least_subobject(
    c: PointedCoalgebra,
    bound: int = 12,
    cfg: Optional[HomSearchConfig] = None,
) -> PropertyReport:
    """The reachable part embeds uniquely into every pointed subcoalgebra."""
    cfg = cfg or HomSearchConfig(pointed=True)
    part, inclusion = reachable_part(c)
    failures = []
    count = 0
    for states in enumerate_pointed_subcoalgebras(c, bound):
        count += 1
        sub = _subcoalgebra_on(c, states)
        if not set(part.states) <= set(states):
            failures.append(
                (stable_digest(sub), "reachable part escapes a pointed subcoalgebra")
            )
            continue
        mediating = Morphism(part, sub, {s: s for s in part.states})
        if not check_homomorphism(mediating):
            failures.append((stable_digest(sub), "forced mediating map is not a hom"))
            continue
        # uniqueness is forced pointwise by injectivity of the inclusion; on
        # tiny instances double-check by exhaustive search anyway
        if len(part.states) <= _SMALL:
            matching = [
                h
                for h in enumerate_homomorphisms(part, sub, cfg)
                if all(h.mapping[s] == s for s in part.states)
            ]
            if len(matching) != 1:
                failures.append(
                    (stable_digest(sub), f"{len(matching)} mediating homomorphisms")
                )
    return PropertyReport("least-subobject", count, tuple(failures))


def check_greatest_quotient(
    c: AnyCoalgebra,
    bound: int = 8,
    cfg: Optional[HomSearchConfig] = None,
) -> PropertyReport:
    """Every quotient factors uniquely through the simple quotient."""
    cfg = cfg or HomSearchConfig()
    quotient, projection, _ = simple_quotient(c)
    base = underlying(c)
    failures = []
    count = 0
    for partition in enumerate_compatible_partitions(c, bound):
        count += 1
        d, e_prime = apply_partition_quotient(c, partition)
        u_map: dict[str, str] = {}
        conflict = None
        for x in base.states:
            source, target = e_prime.mapping[x], projection.mapping[x]
            if u_map.setdefault(source, target) != target:
                conflict = x
                break
        if conflict is not None:
            failures.append(
                (stable_digest(d), f"no mediating map: conflict at {conflict!r}")
            )
            continue
        mediating = Morphism(underlying(d), underlying(quotient), u_map)
        if not check_homomorphism(mediating):
            failures.append((stable_digest(d), "forced mediating map is not a hom"))
            continue
        # uniqueness is forced because the quotient projection is surjective;
        # cross-check by enumeration on tiny instances
        if len(underlying(d).states) <= _SMALL:
            matching = [
                h
                for h in enumerate_homomorphisms(underlying(d), underlying(quotient), cfg)
                if all(
                    h.mapping[e_prime.mapping[x]] == projection.mapping[x]
                    for x in base.states
                )
            ]
            if len(matching) != 1:
                failures.append(
                    (stable_digest(d), f"{len(matching)} mediating homomorphisms")
                )
    return PropertyReport("greatest-quotient", count, tuple(failures))


def check_minimization_functorial(
    morphisms: Iterable[Morphism],
    cfg: Optional[HomSearchConfig] = None,
) -> PropertyReport:
    """Pointed homs from reachable domains land in the codomain's reachable part.

    For every pointed homomorphism h: A -> B with A reachable there must be
    exactly one u: A -> reach(B) whose composite with the inclusion is h;
    since the inclusion is injective, u is h itself, corestricted.
    """
    cfg = cfg or HomSearchConfig(pointed=True)
    failures = []
    count = 0
    for h in morphisms:
        count += 1
        digest = stable_digest(h.dom)
        if not is_reachable(h.dom):
            failures.append((digest, "domain of the pair is not reachable"))
            continue
        part, _ = reachable_part(h.cod)
        inside = set(part.states)
        escaping = [x for x in underlying(h.dom).states if h.mapping[x] not in inside]
        if escaping:
            failures.append(
                (digest, f"image escapes the reachable part at {escaping[0]!r}")
            )
            continue
        mediating = Morphism(h.dom, part, dict(h.mapping))
        if not check_homomorphism(mediating):
            failures.append((digest, "corestriction is not a homomorphism"))
    return PropertyReport("minimization-functorial", count, tuple(failures))


def check_quotient_closure(
    c: PointedCoalgebra,
    bound: int = 8,
) -> PropertyReport:
    """Quotients of reachable coalgebras stay reachable, functor permitting.

    For functors preserving inverse images a non-reachable quotient is a
    failure; for rational weights it is an expected cancellation effect and
    is recorded as a witness.
    """
    require_valid(c)
    failures = []
    witnesses = []
    count = 0
    flagged = underlying(c).functor.preserves_inverse_images
    if not is_reachable(c):
        return PropertyReport(
            "quotient-closure", 0, ((stable_digest(c), "input is not reachable"),)
        )
    for partition in enumerate_compatible_partitions(c, bound):
        count += 1
        q, _ = apply_partition_quotient(c, partition)
        if not is_reachable(q):
            blocks = ";".join(",".join(b) for b in partition.blocks)
            if flagged:
                failures.append((stable_digest(c), f"unreachable quotient via {blocks}"))
            else:
                witnesses.append(f"unreachable quotient via {blocks}")
    return PropertyReport(
        "quotient-closure", count, tuple(failures), tuple(witnesses)
    )


# ---------------------------------------------------------------------------
# Seeded instance generation
# ---------------------------------------------------------------------------


def random_coalgebra(
    spec: FunctorSpec,
    n_states: int,
    seed: int,
    weight_pool: Optional[Sequence] = None,
    density: float = 0.5,
    pointed: bool = False,
) -> AnyCoalgebra:
    """A pseudo-random coalgebra, a pure function of all its arguments.

    The generator is seeded with a string derived from every parameter, so
    equal calls are byte-identical across processes and platforms.
    """
    if n_states < 0:
        raise ValueError("n_states must be nonnegative")
    if isinstance(spec, WeightedFunctor):
        if not weight_pool:
            raise WeightedWithoutPool("weighted generation needs a weight pool")
        pool = sorted(Fraction(w) for w in weight_pool)
        for w in pool:
            spec.check_weight(w)
    else:
        pool = None
    if pointed and n_states == 0:
        raise ValueError("a pointed coalgebra needs at least one state")
    token = f"{spec!r}|{n_states}|{seed}|{pool!r}|{density}|{pointed}"
    rng = random.Random(token)
    states = tuple(f"s{i}" for i in range(n_states))
    structure = {}
    for s in states:
        structure[s] = _random_structure(spec, states, rng, pool, density)
    base = Coalgebra(spec, states, structure)
    if pointed:
        return PointedCoalgebra(base, rng.choice(states))
    return base


def _random_structure(spec, states, rng, pool, density):
    if isinstance(spec, DfaFunctor):
        return DfaStruct(
            rng.random() < 0.5,
            tuple((sym, rng.choice(states)) for sym in spec.alphabet),
        )
    if isinstance(spec, PowersetFunctor):
        return SetStruct(frozenset(s for s in states if rng.random() < density))
    if isinstance(spec, LabelledFunctor):
        return LabelledStruct(
            frozenset(
                (l, s)
                for l in spec.labels
                for s in states
                if rng.random() < density
            )
        )
    if isinstance(spec, WeightedFunctor):
        entries = []
        for s in states:
            if rng.random() < density:
                entries.append((s, rng.choice(pool)))
        return WeightedStruct(tuple(sorted(entries)))
    raise SpecMismatch(f"unsupported functor {spec!r}")
