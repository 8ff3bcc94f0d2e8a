"""JSON documents for coalgebras, morphisms and partitions, plus DOT output.

Serialization is canonical: object keys are sorted, weights are normalized
fraction strings ("3", "-1/2"), state lists inside structures follow carrier
order, and every emitter is deterministic byte for byte.  ``parse`` validates
through :func:`coalgmin.core.validate_coalgebra` and reports every violation
at once.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .core import (
    AnyCoalgebra,
    Coalgebra,
    Morphism,
    Partition,
    PointedCoalgebra,
    Violation,
    point_of,
    underlying,
    validate_coalgebra,
)
from .errors import ParseError, ValidationError
from .functors import (
    DfaFunctor,
    DfaStruct,
    FunctorSpec,
    LabelledFunctor,
    LabelledStruct,
    PowersetFunctor,
    SetStruct,
    WeightedFunctor,
    WeightedStruct,
)

FUNCTOR_KINDS = ("dfa", "powerset", "labelled-powerset", "weighted")


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


# ---------------------------------------------------------------------------
# Functor descriptors
# ---------------------------------------------------------------------------


def functor_payload(spec: FunctorSpec) -> dict:
    if isinstance(spec, DfaFunctor):
        return {"kind": "dfa", "alphabet": list(spec.alphabet)}
    if isinstance(spec, PowersetFunctor):
        return {"kind": "powerset"}
    if isinstance(spec, LabelledFunctor):
        return {"kind": "labelled-powerset", "labels": list(spec.labels)}
    if isinstance(spec, WeightedFunctor):
        return {"kind": "weighted", "monoid": spec.monoid}
    raise ParseError(None, f"unknown functor {spec!r}")


def parse_functor(payload) -> FunctorSpec:
    if not isinstance(payload, dict) or "kind" not in payload:
        raise ParseError(None, "functor must be an object with a 'kind'")
    kind = payload["kind"]
    if kind == "dfa":
        return DfaFunctor(tuple(_string_list(payload.get("alphabet"), "alphabet")))
    if kind == "powerset":
        return PowersetFunctor()
    if kind == "labelled-powerset":
        return LabelledFunctor(tuple(_string_list(payload.get("labels"), "labels")))
    if kind == "weighted":
        monoid = payload.get("monoid")
        if monoid not in ("rational", "natural"):
            raise ParseError(None, f"weighted monoid must be rational or natural, got {monoid!r}")
        return WeightedFunctor(monoid)
    raise ParseError(None, f"unknown functor kind {kind!r}; expected one of {FUNCTOR_KINDS}")


def _string_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise ParseError(None, f"{what} must be a list of strings")
    return value


# ---------------------------------------------------------------------------
# Structures
# ---------------------------------------------------------------------------


def _weight_string(w: Fraction) -> str:
    return str(w)


def _parse_weight(text, state: str) -> Fraction:
    if not isinstance(text, str):
        raise ParseError(None, f"weight for {state!r} must be a string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(None, f"bad weight {text!r} for {state!r}: {exc}") from None


def structure_payload(spec: FunctorSpec, t, carrier_index) -> object:
    if isinstance(spec, DfaFunctor):
        return {"accepting": t.accepting, "next": dict(t.moves)}
    if isinstance(spec, PowersetFunctor):
        return sorted(t.successors, key=carrier_index.__getitem__)
    if isinstance(spec, LabelledFunctor):
        label_pos = {l: i for i, l in enumerate(spec.labels)}
        ordered = sorted(t.edges, key=lambda e: (label_pos[e[0]], carrier_index[e[1]]))
        return [[l, s] for l, s in ordered]
    if isinstance(spec, WeightedFunctor):
        return {s: _weight_string(w) for s, w in t.weights}
    raise ParseError(None, f"unknown functor {spec!r}")


def parse_structure(spec: FunctorSpec, payload, state: str):
    """Build a raw structure from its document form.

    Shape problems (wrong JSON types) raise ParseError; semantic problems
    such as zero weights or missing symbols are left for validation so they
    can all be reported together.
    """
    if isinstance(spec, DfaFunctor):
        if not isinstance(payload, dict) or not isinstance(payload.get("next"), dict):
            raise ParseError(None, f"dfa structure of {state!r} needs 'accepting' and 'next'")
        nxt = payload["next"]
        moves = [(a, str(nxt[a])) for a in spec.alphabet if a in nxt]
        moves += sorted((a, str(v)) for a, v in nxt.items() if a not in spec.alphabet)
        return DfaStruct(bool(payload.get("accepting", False)), tuple(moves))
    if isinstance(spec, PowersetFunctor):
        return SetStruct(frozenset(_string_list(payload, f"successors of {state!r}")))
    if isinstance(spec, LabelledFunctor):
        if not isinstance(payload, list) or not all(
            isinstance(e, list) and len(e) == 2 for e in payload
        ):
            raise ParseError(None, f"labelled structure of {state!r} must be [label, state] pairs")
        return LabelledStruct(frozenset((str(l), str(s)) for l, s in payload))
    if isinstance(spec, WeightedFunctor):
        if not isinstance(payload, dict):
            raise ParseError(None, f"weighted structure of {state!r} must be an object")
        entries = sorted((str(s), _parse_weight(w, state)) for s, w in payload.items())
        return WeightedStruct(tuple(entries))
    raise ParseError(None, f"unknown functor {spec!r}")


# ---------------------------------------------------------------------------
# Coalgebra documents
# ---------------------------------------------------------------------------


def coalgebra_payload(c: AnyCoalgebra) -> dict:
    base = underlying(c)
    index = base.state_index()
    doc = {
        "functor": functor_payload(base.functor),
        "states": list(base.states),
        "structure": {
            s: structure_payload(base.functor, base.struct_of(s), index)
            for s in base.states
        },
    }
    p = point_of(c)
    if p is not None:
        doc["point"] = p
    return doc


def serialize_coalgebra(c: AnyCoalgebra) -> str:
    return canonical_json(coalgebra_payload(c))


def parse_coalgebra(text: str) -> AnyCoalgebra:
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise ParseError(None, "document must be a JSON object")
    spec = parse_functor(doc.get("functor"))
    states = tuple(_string_list(doc.get("states"), "states"))
    structure_doc = doc.get("structure")
    if not isinstance(structure_doc, dict):
        raise ParseError(None, "'structure' must be an object")
    structure = {
        s: parse_structure(spec, payload, s) for s, payload in structure_doc.items()
    }
    base = Coalgebra(spec, states, structure)
    point = doc.get("point")
    if point is not None and not isinstance(point, str):
        raise ParseError(None, "'point' must be a string")
    result: AnyCoalgebra = PointedCoalgebra(base, point) if point is not None else base
    violations = validate_coalgebra(result)
    if violations:
        raise ValidationError(violations)
    return result


def _loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None


# ---------------------------------------------------------------------------
# Morphism and partition documents
# ---------------------------------------------------------------------------


def morphism_payload(h: Morphism) -> dict:
    return {"map": dict(sorted(h.mapping.items()))}


def serialize_morphism(h: Morphism) -> str:
    return canonical_json(morphism_payload(h))


def parse_morphism(text: str, dom: AnyCoalgebra, cod: AnyCoalgebra) -> Morphism:
    doc = _loads(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("map"), dict):
        raise ParseError(None, "morphism document must be an object with a 'map'")
    mapping = {str(k): str(v) for k, v in doc["map"].items()}
    violations = []
    cod_states = set(underlying(cod).states)
    for s in underlying(dom).states:
        if s not in mapping:
            violations.append(Violation("partial-map", f"map undefined at {s!r}", s))
        elif mapping[s] not in cod_states:
            violations.append(
                Violation("dangling-state", f"map sends {s!r} outside the codomain", s)
            )
    if violations:
        raise ValidationError(violations)
    return Morphism(dom, cod, {s: mapping[s] for s in underlying(dom).states})


def partition_payload(p: Partition) -> dict:
    return {"blocks": [list(b) for b in p.blocks]}


def serialize_partition(p: Partition) -> str:
    return canonical_json(partition_payload(p))


def parse_partition(text: str) -> Partition:
    doc = _loads(text)
    if not isinstance(doc, dict) or not isinstance(doc.get("blocks"), list):
        raise ParseError(None, "partition document must be an object with 'blocks'")
    return Partition.of(doc["blocks"])


# ---------------------------------------------------------------------------
# DOT
# ---------------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(c: AnyCoalgebra) -> str:
    """Render the system as Graphviz DOT text, deterministically.

    Nodes appear in carrier order; accepting DFA states are double circles;
    the point is marked by an arrow from an invisible node; weighted and
    labelled edges carry labels.
    """
    base = underlying(c)
    spec = base.functor
    index = base.state_index()
    lines = ["digraph coalgebra {", "  rankdir=LR;"]
    point = point_of(c)
    if point is not None:
        start = "__point"
        while start in index:
            start += "_"
        lines.append(f"  {_quote(start)} [shape=none, label=\"\", width=0, height=0];")
    for s in base.states:
        shape = "circle"
        if isinstance(spec, DfaFunctor) and base.struct_of(s).accepting:
            shape = "doublecircle"
        lines.append(f"  {_quote(s)} [shape={shape}];")
    if point is not None:
        lines.append(f"  {_quote(start)} -> {_quote(point)};")
    for s in base.states:
        t = base.struct_of(s)
        for target, label in _edges(spec, t, index):
            suffix = f" [label={_quote(label)}]" if label is not None else ""
            lines.append(f"  {_quote(s)} -> {_quote(target)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _edges(spec, t, index):
    if isinstance(spec, DfaFunctor):
        return [(tgt, sym) for sym, tgt in t.moves]
    if isinstance(spec, PowersetFunctor):
        return [(tgt, None) for tgt in sorted(t.successors, key=index.__getitem__)]
    if isinstance(spec, LabelledFunctor):
        label_pos = {l: i for i, l in enumerate(spec.labels)}
        ordered = sorted(t.edges, key=lambda e: (label_pos[e[0]], index[e[1]]))
        return [(tgt, label) for label, tgt in ordered]
    if isinstance(spec, WeightedFunctor):
        ordered = sorted(t.weights, key=lambda e: index[e[0]])
        return [(tgt, _weight_string(w)) for tgt, w in ordered]
    raise ParseError(None, f"unknown functor {spec!r}")
