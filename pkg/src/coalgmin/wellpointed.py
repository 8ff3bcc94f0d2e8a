"""Combining both minimization aspects, isomorphism, and tree unravelling.

A pointed coalgebra is well pointed when it is both reachable and simple.
The modification computes the simple quotient first and then the reachable
part, which is the order that is correct for every supported functor;
``commutation_check`` computes both orders and reports whether they agree,
which can fail for rational weights because transition weights may cancel.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional

from .core import (
    AnyCoalgebra,
    Coalgebra,
    Morphism,
    PointedCoalgebra,
    point_of,
    require_homomorphism,
    require_valid,
    underlying,
)
from .errors import CyclicReachablePart, SpecMismatch
from .functors import (
    DfaFunctor,
    DfaStruct,
    LabelledFunctor,
    LabelledStruct,
    NATURALS,
    PowersetFunctor,
    SetStruct,
    WeightedFunctor,
    WeightedStruct,
    Weight,
)
from .observability import is_simple, simple_quotient
from .reachability import is_reachable, reachable_part


def well_pointed_modification(c: PointedCoalgebra) -> PointedCoalgebra:
    """Simple quotient first, then its reachable part."""
    quotient, _, _ = simple_quotient(c)
    part, _ = reachable_part(quotient)
    return part


def is_well_pointed(c: PointedCoalgebra) -> bool:
    return is_reachable(c) and is_simple(c)


@dataclass(frozen=True)
class CommutationReport:
    simple_first: PointedCoalgebra
    reach_first: PointedCoalgebra
    agree: bool
    iso: Optional[Morphism]


def commutation_check(c: PointedCoalgebra) -> CommutationReport:
    """Run both minimization orders and compare the results up to isomorphism.

    ``reach_first`` may itself fail to be reachable for rational weights; it
    is still reported as computed.
    """
    require_valid(c)
    simple_first = well_pointed_modification(c)
    part, _ = reachable_part(c)
    reach_first, _, _ = simple_quotient(part)
    iso = are_isomorphic(simple_first, reach_first)
    return CommutationReport(simple_first, reach_first, iso is not None, iso)


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------


def are_isomorphic(a: AnyCoalgebra, b: AnyCoalgebra) -> Optional[Morphism]:
    """A bijective homomorphism a -> b (point-preserving when pointed), or None.

    Pointed reachable deterministic automata are compared through their
    canonical breadth-first orderings in linear time; everything else falls
    back to backtracking over bijections with signature pruning.
    """
    require_valid(a)
    require_valid(b)
    if underlying(a).functor != underlying(b).functor:
        raise SpecMismatch("cannot compare coalgebras over different functors")
    if isinstance(a, PointedCoalgebra) != isinstance(b, PointedCoalgebra):
        raise SpecMismatch("cannot compare pointed with unpointed coalgebras")
    if len(underlying(a).states) != len(underlying(b).states):
        return None
    if (
        isinstance(underlying(a).functor, DfaFunctor)
        and isinstance(a, PointedCoalgebra)
        and is_reachable(a)
        and is_reachable(b)
    ):
        mapping = _dfa_canonical_match(a, b)
    else:
        mapping = _backtrack_iso(a, b)
    if mapping is None:
        return None
    forward = Morphism(a, b, mapping)
    backward = Morphism(b, a, {v: k for k, v in mapping.items()})
    require_homomorphism(forward)
    require_homomorphism(backward)
    return forward


def _dfa_canonical_match(a: PointedCoalgebra, b: PointedCoalgebra) -> Optional[dict]:
    """Match two reachable pointed DFAs along symbol-order BFS from the points."""

    def bfs(c: PointedCoalgebra) -> list[str]:
        seen = {c.point}
        order = [c.point]
        queue = deque([c.point])
        while queue:
            x = queue.popleft()
            for _, tgt in c.struct_of(x).moves:
                if tgt not in seen:
                    seen.add(tgt)
                    order.append(tgt)
                    queue.append(tgt)
        return order

    order_a, order_b = bfs(a), bfs(b)
    if len(order_a) != len(order_b):
        return None
    mapping = dict(zip(order_a, order_b))
    for x in order_a:
        ta, tb = a.struct_of(x), b.struct_of(mapping[x])
        if ta.accepting != tb.accepting:
            return None
        for (sym, tgt_a), (_, tgt_b) in zip(ta.moves, tb.moves):
            if mapping[tgt_a] != tgt_b:
                return None
    return mapping


def _backtrack_iso(a: AnyCoalgebra, b: AnyCoalgebra) -> Optional[dict]:
    base_a, base_b = underlying(a), underlying(b)
    spec = base_a.functor
    sig_a = {x: spec.local_signature(base_a.struct_of(x)) for x in base_a.states}
    sig_b = {y: spec.local_signature(base_b.struct_of(y)) for y in base_b.states}
    if Counter(sig_a.values()) != Counter(sig_b.values()):
        return None
    order = list(base_a.states)
    pa, pb = point_of(a), point_of(b)
    if pa is not None:
        if sig_a[pa] != sig_b[pb]:
            return None
        order.remove(pa)
        order.insert(0, pa)
    supports = {x: spec.support(base_a.struct_of(x)) for x in base_a.states}

    def consistent(mapping: dict) -> bool:
        for x in mapping:
            if supports[x] <= mapping.keys():
                image = spec.fmap(mapping, base_a.struct_of(x))
                if image != base_b.struct_of(mapping[x]):
                    return False
        return True

    def extend(i: int, mapping: dict, used: set) -> Optional[dict]:
        if i == len(order):
            return dict(mapping)
        x = order[i]
        candidates = (
            [pb] if x == pa else
            [y for y in base_b.states if y not in used and sig_b[y] == sig_a[x]]
        )
        for y in candidates:
            if y in used:
                continue
            mapping[x] = y
            used.add(y)
            if consistent(mapping):
                found = extend(i + 1, mapping, used)
                if found is not None:
                    return found
            del mapping[x]
            used.discard(y)
        return None

    return extend(0, {}, set())


# ---------------------------------------------------------------------------
# Tree unravelling
# ---------------------------------------------------------------------------


def tree_unravel(c: PointedCoalgebra) -> tuple[PointedCoalgebra, Morphism]:
    """Unfold the reachable part into its tree of edge paths.

    State ids of the tree are path strings rooted at the point, one segment
    per traversed edge.  A natural-weighted edge of weight k splits into k
    unit edges, so the result is a tree in the multigraph sense; rational
    weights keep one edge carrying the original weight.  The covering map
    sends each path to its endpoint and is a surjective pointed homomorphism
    onto the reachable part.  Cyclic reachable parts are rejected because
    their unravelling is infinite.
    """
    part, _ = reachable_part(c)
    cycle = _find_cycle(part)
    if cycle is not None:
        raise CyclicReachablePart(cycle)
    spec = part.functor
    root = part.point
    states: list[str] = [root]
    structure: dict[str, object] = {}
    endpoint = {root: root}
    queue = deque([root])
    while queue:
        path = queue.popleft()
        children = _unravel_children(spec, part, path, endpoint[path])
        structure[path] = children["structure"]
        for child_path, child_state in children["children"]:
            endpoint[child_path] = child_state
            states.append(child_path)
            queue.append(child_path)
    if len(set(states)) != len(states):
        # only possible when state ids already contain the path separator
        raise SpecMismatch("path ids collide; rename states containing '/'")
    tree = PointedCoalgebra(Coalgebra(spec, tuple(states), structure), root)
    covering = Morphism(tree, part, endpoint)
    require_homomorphism(covering)
    assert covering.is_surjective()
    return tree, covering


def _unravel_children(spec, part: PointedCoalgebra, path: str, state: str) -> dict:
    t = part.struct_of(state)
    children: list[tuple[str, str]] = []
    if isinstance(spec, DfaFunctor):
        moves = []
        for sym, tgt in t.moves:
            child = f"{path}/{sym}"
            children.append((child, tgt))
            moves.append((sym, child))
        return {"structure": DfaStruct(t.accepting, tuple(moves)), "children": children}
    if isinstance(spec, PowersetFunctor):
        index = part.state_index()
        succ = []
        for tgt in sorted(t.successors, key=index.__getitem__):
            child = f"{path}/{tgt}"
            children.append((child, tgt))
            succ.append(child)
        return {"structure": SetStruct(frozenset(succ)), "children": children}
    if isinstance(spec, LabelledFunctor):
        index = part.state_index()
        label_pos = {l: i for i, l in enumerate(spec.labels)}
        edges = []
        ordered = sorted(t.edges, key=lambda e: (label_pos[e[0]], index[e[1]]))
        for label, tgt in ordered:
            child = f"{path}/{label}:{tgt}"
            children.append((child, tgt))
            edges.append((label, child))
        return {"structure": LabelledStruct(frozenset(edges)), "children": children}
    if isinstance(spec, WeightedFunctor):
        index = part.state_index()
        entries = []
        for tgt, w in sorted(t.weights, key=lambda e: index[e[0]]):
            if spec.monoid == NATURALS:
                for i in range(int(w)):
                    child = f"{path}/{tgt}#{i}"
                    children.append((child, tgt))
                    entries.append((child, Weight(1)))
            else:
                child = f"{path}/{tgt}"
                children.append((child, tgt))
                entries.append((child, w))
        return {
            "structure": WeightedStruct(tuple(sorted(entries))),
            "children": children,
        }
    raise SpecMismatch(f"unsupported functor {spec!r}")


def _find_cycle(c: PointedCoalgebra) -> Optional[list[str]]:
    """A cycle in the successor graph, as a state sequence, or None."""
    spec = c.functor
    index = c.state_index()
    white, grey, black = 0, 1, 2
    colour = {s: white for s in c.states}
    stack_trace: list[str] = []

    def visit(x: str) -> Optional[list[str]]:
        colour[x] = grey
        stack_trace.append(x)
        for y in sorted(spec.support(c.struct_of(x)), key=index.__getitem__):
            if colour[y] == grey:
                at = stack_trace.index(y)
                return stack_trace[at:] + [y]
            if colour[y] == white:
                found = visit(y)
                if found is not None:
                    return found
        colour[x] = black
        stack_trace.pop()
        return None

    for s in c.states:
        if colour[s] == white:
            found = visit(s)
            if found is not None:
                return found
    return None
