"""Simple quotients via functor-generic partition refinement.

Refinement starts from the single-block partition and repeatedly splits
states whose successor structures differ after mapping targets to block
representatives.  The fixpoint is the coarsest partition whose quotient
carries a coalgebra structure, i.e. behavioural equivalence.  A global
refinement round is quadratic; that is deliberate, since correctness and
oracle-checkability matter more than speed at the sizes this library targets.
"""

from __future__ import annotations

from .core import (
    AnyCoalgebra,
    Morphism,
    Partition,
    apply_partition_quotient,
    partition_compatible,
    require_valid,
    underlying,
)
from .errors import OracleBoundExceeded, WrongFunctor
from .functors import DfaFunctor, fmap

DEFAULT_PARTITION_BOUND = 8


def _refinement_fixpoint(c: AnyCoalgebra) -> Partition:
    base = underlying(c)
    if base.is_empty:
        return Partition(())
    spec = base.functor
    partition = Partition.single(base.states)
    for _ in range(len(base.states)):
        kappa = partition.representative_map()
        signature = {x: fmap(spec, kappa, base.struct_of(x)) for x in base.states}
        refined = Partition.of(
            group
            for block in partition.blocks
            for group in _split(block, signature)
        )
        if refined == partition:
            break
        partition = refined
    return partition


def _split(block: tuple[str, ...], signature) -> list[list[str]]:
    groups: dict[object, list[str]] = {}
    for x in block:
        groups.setdefault(signature[x], []).append(x)
    return list(groups.values())


def simple_quotient(c: AnyCoalgebra) -> tuple[AnyCoalgebra, Morphism, Partition]:
    """The greatest quotient of c: merge exactly the behaviourally equal states.

    Returns the quotient (same kind as the input), the projection morphism,
    and the underlying partition.  Quotienting the result again is the
    identity up to state naming, since its partition is discrete.
    """
    require_valid(c)
    partition = _refinement_fixpoint(c)
    quotient, projection = apply_partition_quotient(c, partition)
    return quotient, projection, partition


def behavioural_classes(c: AnyCoalgebra) -> Partition:
    """The partition of the carrier into behavioural equivalence classes."""
    require_valid(c)
    return _refinement_fixpoint(c)


def is_simple(c: AnyCoalgebra) -> bool:
    """True iff all states are pairwise behaviourally inequivalent."""
    return behavioural_classes(c).is_discrete


def enumerate_compatible_partitions(
    c: AnyCoalgebra, bound: int = DEFAULT_PARTITION_BOUND
) -> list[Partition]:
    """Every partition of the carrier that induces a quotient coalgebra.

    Partitions are generated by restricted growth strings over the carrier
    order, so the output order is deterministic.  Bell-number growth makes
    this an oracle for small instances only.
    """
    require_valid(c)
    base = underlying(c)
    n = len(base.states)
    if n > bound:
        raise OracleBoundExceeded(f"carrier has {n} states, oracle bound is {bound}")
    out = []
    for assignment in _growth_strings(n):
        blocks: dict[int, list[str]] = {}
        for state, b in zip(base.states, assignment):
            blocks.setdefault(b, []).append(state)
        partition = Partition.of(blocks.values())
        if partition_compatible(c, partition) is None:
            out.append(partition)
    return out


def _growth_strings(n: int):
    """Restricted growth strings of length n, lexicographically."""
    if n == 0:
        yield ()
        return

    def extend(prefix: tuple[int, ...], used: int):
        if len(prefix) == n:
            yield prefix
            return
        for b in range(used + 1):
            yield from extend(prefix + (b,), max(used, b + 1))

    yield from extend((0,), 1)


def dfa_language_oracle(c: AnyCoalgebra, max_len: int) -> dict[str, frozenset[str]]:
    """Accepted words of every state up to a length bound, by direct induction.

    This is an independent ground truth for behavioural equivalence on
    deterministic automata: two states merged by refinement must accept the
    same bounded language, and split states must differ on some short word.
    """
    require_valid(c)
    base = underlying(c)
    spec = base.functor
    if not isinstance(spec, DfaFunctor):
        raise WrongFunctor("language oracle only applies to deterministic automata")
    accepted: dict[str, set[str]] = {s: set() for s in base.states}
    # words of length k accepted from x, built back to front over the moves
    layer = {
        s: ({""} if base.struct_of(s).accepting else set()) for s in base.states
    }
    for s in base.states:
        accepted[s] |= layer[s]
    for _ in range(max_len):
        layer = {
            s: {
                sym + w
                for sym, tgt in base.struct_of(s).moves
                for w in layer[tgt]
            }
            for s in base.states
        }
        for s in base.states:
            accepted[s] |= layer[s]
    return {s: frozenset(ws) for s, ws in accepted.items()}


def language_kernel(c: AnyCoalgebra, max_len: int) -> Partition:
    """Partition of the carrier by equality of bounded accepted languages."""
    languages = dfa_language_oracle(c, max_len)
    return Partition.from_key(underlying(c).states, languages.__getitem__)
