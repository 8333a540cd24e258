"""Command-line interface.

Subcommands mirror the pipeline stages::

    cdgalab cohomology FILE --max-degree D [--json]
    cdgalab massey FILE --classes EXPR EXPR EXPR [EXPR...] [--json]
    cdgalab formality [FILE] --dim N [--cutoff D] [--assume-minimal] [--joyce-ring] [--json]
    cdgalab kummer FILE [--json]
    cdgalab joyce {ring,duality,massey-scan} [--json]

JSON output is deterministic and wraps every result as
{"tool", "version", "command", "result"}; rationals are "p/q" strings.
Exit codes: 0 success, 1 domain error, 2 usage or parse error.  The
environment variable CDGA_LAB_MAX_DEGREE (default 24) caps every degree
bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__, dsl, joyce, kummer, massey, sullivan
from .cdga import GradedAlgebra, Presentation
from .errors import CdgaLabError, NotInvolution, NotSimplyConnected
from .kummer import ResolutionProfile

DEFAULT_MAX_DEGREE = 24


def _degree_cap() -> int:
    raw = os.environ.get("CDGA_LAB_MAX_DEGREE", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return DEFAULT_MAX_DEGREE


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


class _Failure(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _Failure(2, f"cannot read {path}: {e.strerror}") from e


def _load_cdga(path: str) -> Presentation:
    return dsl.parse_cdga(_read(path))


def _emit(args, command: str, result: dict, lines: list[str]):
    if args.json:
        doc = {"tool": "cdgalab", "version": __version__, "command": command, "result": result}
        print(json.dumps(doc, indent=2))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------------------


def cmd_cohomology(args) -> int:
    alg = _load_cdga(args.file)
    cap = _degree_cap()
    max_degree = min(args.max_degree, cap)
    betti = []
    classes = {}
    for k in range(max_degree + 1):
        coh = alg.cohomology(k)
        betti.append(coh.dim)
        classes[str(k)] = [alg.render_element(rep) for rep in coh.class_reps]
    result = {"algebra": alg.name, "max_degree": max_degree, "betti": betti, "classes": classes}
    lines = [f"algebra {alg.name}: Betti numbers through degree {max_degree}",
             "betti: (" + ", ".join(map(str, betti)) + ")"]
    for k in range(max_degree + 1):
        if classes[str(k)]:
            lines.append(f"H^{k}: " + ", ".join(f"[{c}]" for c in classes[str(k)]))
    _emit(args, "cohomology", result, lines)
    return 0


def cmd_massey(args) -> int:
    alg = _load_cdga(args.file)
    classes = []
    for text in args.classes:
        el = dsl.parse_element(alg, text)
        if el.is_zero():
            raise _Failure(1, f"class expression {text!r} is zero")
        if not alg.is_closed(el):
            raise _Failure(1, f"class expression {text!r} is not closed")
        classes.append(alg.cohomology(el.degree()).class_of(el))
    if len(classes) == 3:
        coset = massey.triple_massey(alg, *classes)
        if not coset.defined:
            raise _Failure(1, "product undefined: a pairwise cup product is nonzero")
        rep = alg.cohomology(coset.degree).rep_element(coset.representative)
        trivial = massey.is_trivial(coset)
        indet = [alg.render_element(alg.cohomology(coset.degree).rep_element(v))
                 for v in coset.indeterminacy.vectors]
        result = {
            "arity": 3,
            "degree": coset.degree,
            "representative": alg.render_element(rep),
            "representative_coords": [_frac(c) for c in coset.representative],
            "indeterminacy_dim": coset.indeterminacy.dim,
            "indeterminacy_basis": indet,
            "trivial": trivial,
        }
        lines = [f"triple Massey product in degree {coset.degree}",
                 f"representative: {alg.render_element(rep)}",
                 f"indeterminacy: dim {coset.indeterminacy.dim}"
                 + (" (" + "; ".join(indet) + ")" if indet else ""),
                 "verdict: " + ("trivial (contains zero)" if trivial else "nontrivial")]
        _emit(args, "massey", result, lines)
        return 0
    out = massey.mc_massey(alg, classes)
    if out is None:
        result = {"arity": len(classes), "defining_system": "absent",
                  "note": "a lower Massey product obstructs the defining system"}
        lines = ["no defining system exists: a lower Massey product obstructs it"]
        _emit(args, "massey", result, lines)
        return 0
    cls, system = out
    corner = system.corner_value()
    rep = alg.cohomology(cls.degree).rep_element(cls.coords)
    trivial = cls.is_zero()
    result = {
        "arity": len(classes),
        "defining_system": "found",
        "degree": cls.degree,
        "corner": alg.render_element(corner),
        "representative": alg.render_element(rep),
        "corner_class_coords": [_frac(c) for c in cls.coords],
        "corner_class_zero": trivial,
    }
    lines = [f"defining system found; corner in degree {cls.degree}",
             f"corner value: {alg.render_element(corner)}",
             f"corner class representative: {alg.render_element(rep)}"]
    if trivial:
        lines.append("certificate: the corner class is zero (corner is exact)")
    else:
        lines.append("the corner class is nonzero for this defining system")
    _emit(args, "massey", result, lines)
    return 0


def cmd_formality(args) -> int:
    cap = _degree_cap()
    cutoff = min(args.cutoff if args.cutoff is not None else args.dim, cap)
    s = sullivan.fm_dimension_to_s(args.dim)
    if args.joyce_ring:
        target: GradedAlgebra = joyce.to_cohomology_ring()
        source_name = "builtin joyce ring"
    else:
        if not args.file:
            raise _Failure(2, "a .cdga file is required unless --joyce-ring is given")
        target = _load_cdga(args.file)
        source_name = target.name
    if args.assume_minimal:
        if not isinstance(target, Presentation):
            raise _Failure(2, "--assume-minimal needs a presentation, not --joyce-ring")
        stage = sullivan.minimal_stage_from_presentation(target)
    else:
        try:
            stage = sullivan.build_minimal_model(target, max(2, s))
        except NotSimplyConnected as e:
            raise _Failure(1, f"{e} (use --assume-minimal for direct splitting checks)") from e
    cert = sullivan.fm_formality_report(stage, args.dim, cutoff)
    witness = stage.model.render_element(cert.witness) if cert.witness is not None else None
    result = {
        "source": source_name,
        "dim": args.dim,
        "s": cert.s,
        "cutoff": cert.degree_cutoff,
        "status": cert.status,
        "witness": witness,
        "witness_kind": cert.witness_kind,
        "note": cert.note,
        "model_generators": [[g.name, g.degree] for g in stage.model.generators],
    }
    lines = [f"formality of {source_name} (dim {args.dim}, s = {cert.s}, cutoff {cert.degree_cutoff})",
             f"status: {cert.status}"]
    if witness:
        lines.append(f"witness ({cert.witness_kind}): {witness}")
    if cert.note:
        lines.append(f"note: {cert.note}")
    _emit(args, "formality", result, lines)
    return 0


def cmd_kummer(args) -> int:
    gens = dsl.parse_action(_read(args.file))
    if not gens:
        raise _Failure(2, "the action file declares no involutions")
    group = kummer.generate_group(gens)
    census = kummer.singular_census(group)
    invariant = kummer.invariant_betti(group)
    elements = []
    base_dims = []
    for word, locus in census.loci.items():
        entry = {"element": word, "free": locus.free}
        if not locus.free:
            part = census.partitions[word]
            entry["components"] = locus.component_count
            entry["component_dim"] = locus.component_dim
            entry["orbits"] = part.orbit_count
            entry["orbit_sizes"] = part.sizes()
            base_dims += [locus.component_dim] * part.orbit_count
        elements.append(entry)
    result = {
        "torus_dim": group.n,
        "group_order": group.order,
        "elements": elements,
        "singular_components": census.singular_component_count,
        "invariant_betti": list(invariant),
        "euler": invariant.euler(),
    }
    lines = [f"group of order {group.order} acting on T^{group.n}"]
    for e in elements:
        if e["free"]:
            lines.append(f"  {e['element']}: free")
        else:
            lines.append(f"  {e['element']}: {e['components']} x T^{e['component_dim']}"
                         f" in {e['orbits']} orbit(s) {e['orbit_sizes']}")
    lines.append(f"singular components in the quotient: {census.singular_component_count}")
    lines.append("invariant Betti: (" + ", ".join(map(str, invariant)) + ")")
    try:
        resolved = kummer.resolved_betti(invariant, ResolutionProfile.from_base_dims(base_dims))
        result["resolved_betti"] = list(resolved)
        lines.append("resolved Betti: (" + ", ".join(map(str, resolved)) + ")")
    except ValueError as e:
        result["resolved_betti"] = None
        result["resolution_note"] = str(e)
        lines.append(f"resolution skipped: {e}")
    _emit(args, "kummer", result, lines)
    return 0


def cmd_joyce(args) -> int:
    ring = joyce.to_cohomology_ring()
    if args.subcommand == "ring":
        labels = [{"name": lab.name, "dim": lab.dim, "degree": lab.dual_degree}
                  for lab in ring.table.labels]
        products = []
        for a in ring.table.labels:
            for b in ring.table.labels:
                chain = ring.table.product(a, b)
                if chain:
                    products.append({
                        "left": a.name,
                        "right": b.name,
                        "value": [[lab.name, _frac(c)] for lab, c in chain.items()],
                    })
        result = {
            "labels": labels,
            "betti": list(ring.betti()),
            "nonzero_products": products,
        }
        lines = [f"{len(labels)} generators; Betti (" + ", ".join(map(str, ring.betti())) + ")",
                 f"{len(products)} nonzero pairwise products"]
        for p in products:
            value = " + ".join(f"{c}*{nm}" for nm, c in p["value"])
            lines.append(f"  {p['left']} . {p['right']} = {value}")
        _emit(args, "joyce ring", result, lines)
        return 0
    if args.subcommand == "duality":
        report = joyce.duality_report(ring)
        ok = all(row["nondegenerate"] for row in report)
        result = {"nondegenerate": ok, "per_degree": report}
        lines = [f"Poincare duality pairings: {'all nondegenerate' if ok else 'DEGENERATE'}"]
        for row in report:
            lines.append(f"  degree {row['degree']}: dim {row['dim']}, rank {row['rank']}")
        _emit(args, "joyce duality", result, lines)
        return 0
    report = joyce.massey_scan(ring.table)
    result = {
        "total": report.total,
        "undefined": report.undefined,
        "certified": report.certified,
        "uncertified": report.uncertified,
    }
    lines = [f"scanned {report.total} ordered triples",
             f"undefined: {report.undefined}",
             f"certified trivial: {report.certified}",
             f"uncertified: {report.uncertified}"]
    _emit(args, "joyce massey-scan", result, lines)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cdgalab",
        description="Exact rational homotopy computations: cohomology, Massey products, "
                    "formality certificates, and the Kummer/Joyce pipeline.",
    )
    parser.add_argument("--version", action="version", version=f"cdgalab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cohomology", help="Betti numbers and class representatives of a .cdga file")
    p.add_argument("file")
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("massey", help="triple or higher Massey products of named classes")
    p.add_argument("file")
    p.add_argument("--classes", nargs="+", required=True, metavar="EXPR")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("formality", help="s-formality certificate for a manifold dimension")
    p.add_argument("file", nargs="?")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=None)
    p.add_argument("--assume-minimal", action="store_true",
                   help="treat the presentation as its own minimal algebra")
    p.add_argument("--joyce-ring", action="store_true",
                   help="use the builtin Joyce cohomology ring as the target")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_formality)

    p = sub.add_parser("kummer", help="group, fixed loci, invariant and resolved Betti of a .action file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_kummer)

    p = sub.add_parser("joyce", help="the intersection ring of the resolved T^7 quotient")
    p.add_argument("subcommand", choices=["ring", "duality", "massey-scan"])
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_joyce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        if len(getattr(args, "classes", ["", "", ""])) < 3:
            raise _Failure(2, "massey needs at least three classes")
        return args.func(args)
    except _Failure as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except dsl.NonInvolutionError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except (dsl.ParseError, dsl.SemanticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NotInvolution as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CdgaLabError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
