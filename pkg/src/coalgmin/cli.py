"""Command-line interface.

Exit codes: 0 for success or a true property, 1 for a false property (a
failed homomorphism check, a missing isomorphism, disagreeing minimization
orders, a failing suite), 2 for input or validation errors.  All file output
is canonical JSON, byte-identical across runs.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import Morphism, PointedCoalgebra, hom_failures, underlying
from .errors import CoalgminError
from .formats import (
    emit_dot,
    parse_coalgebra,
    parse_morphism,
    parse_partition,
    serialize_coalgebra,
    serialize_morphism,
    serialize_partition,
    canonical_json,
)
from .observability import simple_quotient
from .oracles import HomSearchConfig, enumerate_homomorphisms
from .reachability import reachable_part
from .suites import DEFAULT_SEEDS, SUITES, run_suite
from .wellpointed import are_isomorphic, commutation_check, tree_unravel, well_pointed_modification


def _load(path: str, pointed: bool | None = None):
    """Read a coalgebra document; coerce its pointedness when requested.

    pointed=True demands a point; pointed=False strips one; None keeps the
    document as written.
    """
    c = parse_coalgebra(Path(path).read_text())
    if pointed is True:
        if not isinstance(c, PointedCoalgebra):
            raise CoalgminError(f"{path}: document has no point but --pointed was given")
        return c
    if pointed is False:
        return underlying(c)
    return c


def _load_morphism(map_path: str, dom, cod) -> Morphism:
    return parse_morphism(Path(map_path).read_text(), dom, cod)


def _write(out_dir: str, name: str, text: str) -> None:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / name).write_text(text)


def _cmd_validate(args) -> int:
    _load(args.file)
    print("ok")
    return 0


def _cmd_check_hom(args) -> int:
    dom = _load(args.dom, pointed=True if args.pointed else False)
    cod = _load(args.cod, pointed=True if args.pointed else False)
    h = _load_morphism(args.map, dom, cod)
    failures = hom_failures(h)
    if failures:
        print("not a homomorphism; counterexamples: " + " ".join(failures))
        return 1
    print("ok")
    return 0


def _cmd_factorize(args) -> int:
    dom = _load(args.dom, pointed=True if args.pointed else False)
    cod = _load(args.cod, pointed=True if args.pointed else False)
    h = _load_morphism(args.map, dom, cod)
    from .core import factorize

    factorization = factorize(h)
    _write(args.out_dir, "e.json", serialize_morphism(factorization.e))
    _write(args.out_dir, "image.json", serialize_coalgebra(factorization.image))
    _write(args.out_dir, "m.json", serialize_morphism(factorization.m))
    return 0


def _cmd_reach(args) -> int:
    c = _load(args.file, pointed=True)
    part, inclusion = reachable_part(c)
    _write(args.out_dir, "reachable.json", serialize_coalgebra(part))
    _write(args.out_dir, "embedding.json", serialize_morphism(inclusion))
    return 0


def _cmd_minimize(args) -> int:
    c = _load(args.file)
    quotient, projection, partition = simple_quotient(c)
    _write(args.out_dir, "quotient.json", serialize_coalgebra(quotient))
    _write(args.out_dir, "projection.json", serialize_morphism(projection))
    _write(args.out_dir, "partition.json", serialize_partition(partition))
    return 0


def _cmd_quotient(args) -> int:
    c = _load(args.file)
    p = parse_partition(Path(args.partition).read_text())
    from .core import apply_partition_quotient

    quotient, projection = apply_partition_quotient(c, p)
    _write(args.out_dir, "quotient.json", serialize_coalgebra(quotient))
    _write(args.out_dir, "projection.json", serialize_morphism(projection))
    return 0


def _cmd_wellpoint(args) -> int:
    c = _load(args.file, pointed=True)
    if args.order == "simple-first":
        _write(
            args.out_dir,
            "wellpoint-simple-first.json",
            serialize_coalgebra(well_pointed_modification(c)),
        )
        return 0
    report = commutation_check(c)
    if args.order == "reach-first":
        _write(
            args.out_dir,
            "wellpoint-reach-first.json",
            serialize_coalgebra(report.reach_first),
        )
        return 0
    _write(
        args.out_dir,
        "wellpoint-simple-first.json",
        serialize_coalgebra(report.simple_first),
    )
    _write(
        args.out_dir,
        "wellpoint-reach-first.json",
        serialize_coalgebra(report.reach_first),
    )
    print(f"agree: {'true' if report.agree else 'false'}")
    return 0 if report.agree else 1


def _cmd_iso(args) -> int:
    a = _load(args.a, pointed=True if args.pointed else False)
    b = _load(args.b, pointed=True if args.pointed else False)
    iso = are_isomorphic(a, b)
    if iso is None:
        print("no isomorphism", file=sys.stderr)
        return 1
    sys.stdout.write(serialize_morphism(iso))
    return 0


def _cmd_homs(args) -> int:
    a = _load(args.a, pointed=True if args.pointed else False)
    b = _load(args.b, pointed=True if args.pointed else False)
    cfg = HomSearchConfig(pointed=bool(args.pointed))
    homs = enumerate_homomorphisms(a, b, cfg)
    listed = homs if args.max is None else homs[: args.max]
    payload = {
        "count": len(homs),
        "maps": [dict(sorted(h.mapping.items())) for h in listed],
    }
    sys.stdout.write(canonical_json(payload))
    return 0


def _cmd_unravel(args) -> int:
    c = _load(args.file, pointed=True)
    tree, covering = tree_unravel(c)
    _write(args.out_dir, "tree.json", serialize_coalgebra(tree))
    _write(args.out_dir, "covering.json", serialize_morphism(covering))
    return 0


def _cmd_dot(args) -> int:
    c = _load(args.file)
    sys.stdout.write(emit_dot(c))
    return 0


def _cmd_props(args) -> int:
    seeds = DEFAULT_SEEDS if args.seeds is None else tuple(range(args.seeds))
    reports = run_suite(args.suite, seeds)
    ok = True
    for report in reports:
        print(report.line())
        ok = ok and report.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coalgmin",
        description="Minimize finite coalgebraic state systems and verify their laws.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a coalgebra document")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("check-hom", help="check the homomorphism law for a map")
    p.add_argument("--dom", required=True)
    p.add_argument("--cod", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--pointed", action="store_true")
    p.set_defaults(fn=_cmd_check_hom)

    p = sub.add_parser("factorize", help="split a homomorphism through its image")
    p.add_argument("--dom", required=True)
    p.add_argument("--cod", required=True)
    p.add_argument("--map", required=True)
    p.add_argument("--pointed", action="store_true")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=_cmd_factorize)

    p = sub.add_parser("reach", help="compute the reachable part")
    p.add_argument("file")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=_cmd_reach)

    p = sub.add_parser("minimize", help="compute the simple quotient")
    p.add_argument("file")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=_cmd_minimize)

    p = sub.add_parser("quotient", help="quotient by an explicit partition")
    p.add_argument("file")
    p.add_argument("--partition", required=True)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=_cmd_quotient)

    p = sub.add_parser("wellpoint", help="minimize under both aspects")
    p.add_argument("file")
    p.add_argument("--order", choices=("simple-first", "reach-first", "both"), default="simple-first")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=_cmd_wellpoint)

    p = sub.add_parser("iso", help="search for an isomorphism between two systems")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--pointed", action="store_true")
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("homs", help="enumerate all homomorphisms between two systems")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--pointed", action="store_true")
    p.add_argument("--max", type=int, default=None)
    p.set_defaults(fn=_cmd_homs)

    p = sub.add_parser("unravel", help="tree-unravel an acyclic reachable part")
    p.add_argument("file")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=_cmd_unravel)

    p = sub.add_parser("dot", help="emit Graphviz DOT text")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_dot)

    p = sub.add_parser("props", help="run a seeded property suite")
    p.add_argument("--suite", default="all", help=f"one of {sorted(SUITES)} or 'all'")
    p.add_argument("--seeds", type=int, default=None, help="number of seeds (default 200)")
    p.set_defaults(fn=_cmd_props)

    return parser


def run_command(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CoalgminError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
