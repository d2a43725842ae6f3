"""Command line interface.

Subcommands:
  classify FILE            exact type of the quiver (finite / tame / wild)
  run knit FILE            knit the full AR quiver (finite type)
  run tors FILE            torsion class poset and lattice check
  run extpair FILE         find and verify a double-extension pair
  run nocover FILE         no-cover evidence along an extension cycle

Exit codes: 0 verified, 1 verification failed, 2 bad input, 3 inconclusive,
4 input/output error.  Reports are byte deterministic for a fixed seed: JSON
is emitted with sorted keys and no timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .quiver import (
    QuiverError,
    ValuedQuiver,
    classify_type,
    load_quiver,
    radical_vector,
    valuation_v,
)
from .modules import DecompositionInconclusive, ExtensionCapError, rep_to_json
from .ext_pairs import ExtPairInconclusive, find_ext_pair

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_INCONCLUSIVE = 3
EXIT_IO = 4


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(payload, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        text = payload
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(EXIT_IO, f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _load(path: str) -> ValuedQuiver:
    try:
        return load_quiver(path)
    except FileNotFoundError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from exc
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from exc
    except QuiverError as exc:
        raise CliError(EXIT_BAD_INPUT, f"bad quiver file {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# classify

def cmd_classify(args) -> int:
    q = _load(args.quiver)
    qt = classify_type(q)
    lattice = qt.representation_finite or q.n <= 2
    if qt.representation_finite:
        reason = "representation finite"
    elif q.n <= 2:
        reason = "at most two simple modules"
    else:
        reason = "representation infinite with at least three simple modules"
    data = {
        "vertices": q.n,
        "arrows": q.m,
        "simples": q.n,
        "family": qt.family,
        "type": qt.display(),
        "representation_finite": qt.representation_finite,
        "tame": qt.tame,
        "valuations": [
            {"from": a.source + 1, "to": a.target + 1,
             "v": valuation_v(q, a.source, a.target)}
            for a in sorted({(a.source, a.target): a for a in q.arrows}.values(),
                            key=lambda a: (a.source, a.target))
        ],
        "ftors_lattice": lattice,
        "lattice_reason": reason,
    }
    if qt.family == "euclidean":
        data["radical_vector"] = list(radical_vector(q))
    if args.format == "json":
        _emit(data, "json", args.out)
    elif args.format == "text":
        lines = [f"{k}: {data[k]}" for k in
                 ("vertices", "arrows", "simples", "family", "type",
                  "representation_finite", "tame")]
        if "radical_vector" in data:
            lines.append(f"radical_vector: {data['radical_vector']}")
        for entry in data["valuations"]:
            lines.append(f"valuation {entry['from']} -> {entry['to']}: {entry['v']}")
        lines.append(
            f"ftors {'is a lattice' if lattice else 'is NOT a lattice'} ({reason})")
        _emit("\n".join(lines) + "\n", "text", args.out)
    else:
        raise CliError(EXIT_BAD_INPUT, "classify supports text and json only")
    return EXIT_OK


# ---------------------------------------------------------------------------
# run knit

def cmd_knit(args) -> int:
    from .ar_quiver import ar_quiver_dot, knit_ar_quiver

    q = _load(args.quiver)
    qt = classify_type(q)
    if not qt.representation_finite:
        raise CliError(EXIT_BAD_INPUT,
                       f"knitting needs a representation-finite quiver, got {qt.display()}")
    rng = np.random.default_rng(args.seed)
    ar = knit_ar_quiver(q, args.prime, rng)
    if args.format == "dot":
        _emit(ar_quiver_dot(ar), "text", args.out)
        return EXIT_OK
    data = {
        "type": qt.display(),
        "prime": args.prime,
        "modules": [
            {
                "index": node.index,
                "dim": list(node.dims),
                "projective": node.index in ar.projectives,
                "injective": node.index in ar.injectives,
            }
            for node in ar.nodes
        ],
        "irreducible_maps": [
            {"from": i, "to": j, "multiplicity": mult}
            for (i, j), mult in sorted(ar.arrows.items())
        ],
        "translates": [
            {"module": y, "translate": ty} for y, ty in sorted(ar.translate.items())
        ],
    }
    if args.format == "json":
        _emit(data, "json", args.out)
    else:
        lines = [f"type {qt.display()}  modules {len(ar.nodes)}  "
                 f"maps {len(ar.arrows)}  translates {len(ar.translate)}"]
        for node in ar.nodes:
            tags = "".join(
                t for t, m in (("P", node.index in ar.projectives),
                               ("I", node.index in ar.injectives)) if m)
            lines.append(f"module {node.index}  dim {','.join(map(str, node.dims))}"
                         + (f"  {tags}" if tags else ""))
        for (i, j), mult in sorted(ar.arrows.items()):
            lines.append(f"map {i} -> {j}  mult {mult}")
        for y, ty in sorted(ar.translate.items()):
            lines.append(f"translate {y} -> {ty}")
        _emit("\n".join(lines) + "\n", "text", args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# run tors

def _hasse_dot(classes, edges) -> str:
    lines = ["digraph torsion_classes {", "  rankdir=\"BT\";", "  node [shape=box];"]
    for idx, cls in enumerate(classes):
        label = "{" + ",".join(str(m) for m in sorted(cls)) + "}"
        lines.append(f'  c{idx} [label="{label}"];')
    for a, b in edges:
        lines.append(f"  c{a} -> c{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_tors(args) -> int:
    from .tors import (
        enumerate_torsion_classes,
        find_cover,
        finite_universe,
        hasse_edges,
        lattice_check,
        two_vertex_check,
    )

    q = _load(args.quiver)
    qt = classify_type(q)
    rng = np.random.default_rng(args.seed)

    if qt.representation_finite:
        u = finite_universe(q, args.prime, rng)
        classes = enumerate_torsion_classes(u)
        report = lattice_check(u, classes)
        edges = hasse_edges(classes)
        if args.format == "dot":
            _emit(_hasse_dot(classes, edges), "text", args.out)
            return EXIT_OK if report.is_lattice else EXIT_FAILED
        covers = [find_cover(u, c) for c in classes]
        data = {
            "mode": "exact",
            "type": qt.display(),
            "universe": [list(m.dims) for m in u.modules],
            "classes": [sorted(c) for c in classes],
            "covers": [list(c.dims) if c is not None else None for c in covers],
            "class_count": report.class_count,
            "hasse_edges": [list(e) for e in edges],
            "edge_count": report.edge_count,
            "lattice": {
                "meets_ok": not report.meet_failures,
                "joins_ok": not report.join_failures,
                "failures": [list(f) for f in
                             report.meet_failures + report.join_failures],
            },
            "is_lattice": report.is_lattice,
        }
        if args.format == "json":
            _emit(data, "json", args.out)
        else:
            lines = [f"type {qt.display()}  classes {report.class_count}  "
                     f"edges {report.edge_count}  lattice {report.is_lattice}"]
            for idx, c in enumerate(classes):
                dims = ["(" + ",".join(map(str, u.modules[m].dims)) + ")" for m in sorted(c)]
                cov = covers[idx]
                tail = (f"  cover ({','.join(map(str, cov.dims))})"
                        if cov is not None else "  cover none")
                lines.append(f"class {idx}  " + (" ".join(dims) if dims else "empty") + tail)
            for a, b in edges:
                lines.append(f"edge {a} -> {b}")
            _emit("\n".join(lines) + "\n", "text", args.out)
        return EXIT_OK if report.is_lattice else EXIT_FAILED

    if q.n == 2:
        report = two_vertex_check(q, args.prime, args.dim_bound, rng)
        data = {
            "mode": "bounded",
            "type": qt.display(),
            "verdict": report.verdict,
            "universe_size": report.universe_size,
            "class_count": report.class_count,
            "covered_classes": report.covered_count,
            "pair_count": report.pair_count,
            "failures": [list(f) for f in report.failures],
            "notes": report.notes,
        }
        if args.format == "json":
            _emit(data, "json", args.out)
        elif args.format == "text":
            lines = [f"type {qt.display()}  verdict {report.verdict}",
                     f"universe {report.universe_size}  classes {report.class_count}  "
                     f"covered {report.covered_count}  pairs {report.pair_count}",
                     f"notes: {report.notes}"]
            _emit("\n".join(lines) + "\n", "text", args.out)
        else:
            raise CliError(EXIT_BAD_INPUT, "dot output needs the exact finite mode")
        if report.verdict == "inconclusive":
            return EXIT_INCONCLUSIVE
        return EXIT_OK if report.verdict in ("lattice", "consistent") else EXIT_FAILED

    raise CliError(
        EXIT_INCONCLUSIVE,
        f"no bounded torsion analysis for {qt.display()} on {q.n} vertices; "
        "use extpair or nocover for the negative certificates")


# ---------------------------------------------------------------------------
# run extpair

def cmd_extpair(args) -> int:
    q = _load(args.quiver)
    qt = classify_type(q)
    if qt.representation_finite or q.n <= 2:
        raise CliError(
            EXIT_BAD_INPUT,
            "double-extension pairs need a representation-infinite quiver "
            "on at least three vertices (none exist otherwise)")
    rng = np.random.default_rng(args.seed)
    cert = find_ext_pair(q, args.prime, rng)
    data = {
        "type": qt.display(),
        "pair_exists": True,
        "case": cert.case,
        "prime": args.prime,
        "X": rep_to_json(cert.X),
        "Y": rep_to_json(cert.Y),
        "checks": cert.report.numbers,
        "verified": cert.report.ok,
        "detail": cert.detail,
    }
    if args.format == "json":
        _emit(data, "json", args.out)
    else:
        n = cert.report.numbers
        lines = [
            f"type {qt.display()}  case {cert.case}  verified {cert.report.ok}",
            f"X dim ({','.join(map(str, cert.X.dims))})",
            f"Y dim ({','.join(map(str, cert.Y.dims))})",
            f"end(X) {n['end_x']}  end(Y) {n['end_y']}  "
            f"ext(X,X) {n['ext_xx']}  ext(Y,Y) {n['ext_yy']}",
            f"hom(X,Y) {n['hom_xy']}  hom(Y,X) {n['hom_yx']}  "
            f"ext(X,Y) {n['ext_xy']}  ext(Y,X) {n['ext_yx']}",
        ]
        _emit("\n".join(lines) + "\n", "text", args.out)
    return EXIT_OK if cert.report.ok else EXIT_FAILED


# ---------------------------------------------------------------------------
# run nocover

def cmd_nocover(args) -> int:
    from .tors import no_cover_evidence
    from .tubes import find_regular_simples

    q = _load(args.quiver)
    qt = classify_type(q)
    rng = np.random.default_rng(args.seed)
    if qt.representation_finite or q.n <= 2:
        raise CliError(
            EXIT_BAD_INPUT,
            "no extension cycles exist for a representation-finite algebra; "
            "this evidence needs a representation-infinite quiver on at "
            "least three vertices")
    if qt.family == "euclidean":
        tubes = find_regular_simples(q, args.prime, rng)
        cycle = tubes[0].simples
        source = f"tube of rank {tubes[0].rank}"
    else:
        cert = find_ext_pair(q, args.prime, rng)
        cycle = (cert.X, cert.Y)
        source = f"double-extension pair (case {cert.case})"
    evidence = no_cover_evidence(cycle, args.loewy_bound, rng)
    data = {
        "type": qt.display(),
        "cycle": [list(m.dims) for m in cycle],
        "cycle_source": source,
        "loewy_bound": evidence.bound,
        "universe_size": evidence.universe_size,
        "witnesses": [
            {"level": r, "serial_dim": list(dims), "generated_below": gen}
            for r, dims, gen in evidence.witnesses
        ],
        "generation_preserves_level": evidence.monotone_ok,
        "verified": evidence.ok,
    }
    if args.format == "json":
        _emit(data, "json", args.out)
    else:
        lines = [f"type {qt.display()}  cycle {source}",
                 f"universe {evidence.universe_size}  bound {evidence.bound}  "
                 f"verified {evidence.ok}"]
        for r, dims, gen in evidence.witnesses:
            lines.append(f"level {r}: serial ({','.join(map(str, dims))}) "
                         f"generated below: {gen}")
        lines.append(f"generation preserves level: {evidence.monotone_ok}")
        _emit("\n".join(lines) + "\n", "text", args.out)
    return EXIT_OK if evidence.ok else EXIT_FAILED


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftors",
        description="exact torsion-class toolkit for quiver representations over F_p")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("quiver", help="quiver file (text or JSON)")
        p.add_argument("--prime", type=int, default=5, help="field size (default 5)")
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument("--dim-bound", type=int, default=12,
                       help="total dimension bound for bounded checks (default 12)")
        p.add_argument("--loewy-bound", type=int, default=4,
                       help="layer bound for no-cover evidence (default 4)")
        p.add_argument("--format", choices=("text", "json", "dot"), default="text")
        p.add_argument("--out", default=None, help="write the report to a file")

    pc = sub.add_parser("classify", help="exact representation type")
    common(pc)
    pc.set_defaults(func=cmd_classify)

    pr = sub.add_parser("run", help="run a verification task")
    runsub = pr.add_subparsers(dest="task", required=True)
    for name, func, text in (
            ("knit", cmd_knit, "knit the AR quiver"),
            ("tors", cmd_tors, "torsion class poset and lattice check"),
            ("extpair", cmd_extpair, "find a verified double-extension pair"),
            ("nocover", cmd_nocover, "no-cover evidence along a cycle")):
        pt = runsub.add_parser(name, help=text)
        common(pt)
        pt.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.prime < 2:
        print("error: --prime must be at least 2", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ExtPairInconclusive, DecompositionInconclusive, ExtensionCapError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (QuiverError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
