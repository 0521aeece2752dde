"""``flipforge`` command-line interface.

Exit codes: 0 success, 2 a validation diagnostic, 1 any other error, 64 bad
usage.  Errors are also written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

import networkx as nx

from . import __version__
from .bookembed import ArcDiagram, biarc_from_subdivision, monotone_biarc_diagram, verify_plane
from .core import Diagnostic, TriangulationError, is_four_connected, simultaneous_flip, validate
from .formats import (
    code_hex,
    dumps,
    edges_from_json_obj,
    hamflip_to_json_obj,
    subdivision_to_json_obj,
    tri_from_json_obj,
    tri_to_json_obj,
)
from .fourconnect import four_connect, sim_flip_set
from .generators import FAMILIES, FamilySpec, generate
from .hamiltonize import HamCycle, eliminate_dummies_subdivisions, hamflip, verify_cycle
from .oracle import enumerate_triangulations, flip_distance, min_biarcs, min_simflip_to_4connected
from .svg import NotPlaneError, render_svg

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DIAGNOSTIC = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class DiagnosticFailure(Exception):
    def __init__(self, report: dict):
        super().__init__(report.get("detail", "validation failed"))
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flipforge", description="Flips, Hamiltonicity and biarc diagrams for triangulations.")
    p.add_argument("--version", action="version", version=f"flipforge {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a named triangulation")
    g.add_argument("--family", required=True, choices=FAMILIES)
    g.add_argument("--param", type=int, default=0)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")

    for verb, text in (
        ("simflip4c", "simultaneous flip to 4-connectivity"),
        ("hamflip", "flips to a Hamiltonian triangulation"),
        ("subdivide", "subdivisions to a subhamiltonian graph"),
    ):
        s = sub.add_parser(verb, help=text)
        s.add_argument("input")
        s.add_argument("-o", "--output")
        if verb == "subdivide":
            s.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("biarc", help="draw a biarc diagram")
    b.add_argument("input")
    b.add_argument("--mode", choices=("monotone", "hamsub"), default="monotone")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--svg", help="also write an SVG rendering here")
    b.add_argument("--format", choices=("json", "svg"), default="json")
    b.add_argument("--squash", type=float, default=1.0)
    b.add_argument("-o", "--output")

    v = sub.add_parser("verify", help="check a file")
    v.add_argument("input")
    v.add_argument("--check", required=True, choices=("triangulation", "4connected", "hamiltonian", "diagram"))

    o = sub.add_parser("oracle", help="exhaustive small-n answers")
    o.add_argument("query", choices=("flipdist", "minsim", "minbiarc", "enumerate"))
    o.add_argument("inputs", nargs="*")
    o.add_argument("--n", type=int)
    o.add_argument("-o", "--output")

    r = sub.add_parser("render", help="render an arc diagram as SVG")
    r.add_argument("input")
    r.add_argument("--force", action="store_true")
    r.add_argument("--squash", type=float, default=1.0)
    r.add_argument("-o", "--output")
    return p


def _read(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(obj: dict, path: str | None, source=None) -> None:
    obj = dict(obj)
    prov = {"version": __version__}
    if source is not None:
        prov["input_code"] = code_hex(source)
    obj["provenance"] = prov
    _write(dumps(obj) + "\n", path)


def _load_tri(path: str):
    t = tri_from_json_obj(_read(path))
    diag = validate(t)
    if diag is not None:
        raise DiagnosticFailure({"rule": diag.rule, "detail": diag.detail})
    return t


def _cmd_gen(a) -> int:
    t = generate(FamilySpec(a.family, a.param, a.seed))
    _emit(tri_to_json_obj(t), a.output, t)
    return EXIT_OK


def _cmd_simflip4c(a) -> int:
    t = _load_tri(a.input)
    F = sorted(sim_flip_set(t))
    out, _ = simultaneous_flip(t, F)
    bound = (2 * t.n - 7) // 3
    report = {"size": len(F), "bound": bound, "within_bound": len(F) <= bound, "four_connected": is_four_connected(out)}
    _emit({"flips": [list(e) for e in F], "result": tri_to_json_obj(out), "report": report}, a.output, t)
    return EXIT_OK if report["within_bound"] and report["four_connected"] else EXIT_DIAGNOSTIC


def _cmd_hamflip(a) -> int:
    t = _load_tri(a.input)
    _emit(hamflip_to_json_obj(hamflip(t)), a.output, t)
    return EXIT_OK


def _subdivide(t, seed: int):
    if t.n < 6:
        raise TriangulationError("subdivision needs n >= 6")
    return eliminate_dummies_subdivisions(t, four_connect(t), seed=seed)


def _cmd_subdivide(a) -> int:
    t = _load_tri(a.input)
    _emit(subdivision_to_json_obj(_subdivide(t, a.seed)), a.output, t)
    return EXIT_OK


def _cmd_biarc(a) -> int:
    obj = _read(a.input)
    if a.mode == "monotone":
        if "edges" in obj:
            n, edges = edges_from_json_obj(obj)
            g = nx.Graph()
            g.add_nodes_from(range(n))
            g.add_edges_from(edges)
            source = None
        else:
            g = source = _load_tri(a.input)
        d, stats = monotone_biarc_diagram(g)
    else:
        t = source = _load_tri(a.input)
        d, stats = biarc_from_subdivision(t, _subdivide(t, a.seed))
    if a.svg:
        _write(render_svg(d, a.squash, comment=_svg_comment(source)), a.svg)
    if a.format == "svg":
        _write(render_svg(d, a.squash, comment=_svg_comment(source)), a.output)
        return EXIT_OK
    body = d.to_json_obj()
    body["stats"] = stats.to_json_obj()
    _emit(body, a.output, source)
    return EXIT_OK


def _svg_comment(source) -> str:
    s = f"flipforge {__version__}"
    return s if source is None else f"{s} input {code_hex(source)}"


def _cmd_verify(a) -> int:
    obj = _read(a.input)
    if a.check == "diagram":
        bad = verify_plane(ArcDiagram.from_json_obj(obj))
    elif a.check == "hamiltonian":
        t = tri_from_json_obj(obj.get("final", obj))
        if "cycle" not in obj:
            raise UsageError("hamiltonian check needs a document with 'cycle'")
        err = verify_cycle(t, HamCycle(tuple(obj["cycle"])))
        bad = None if err is None else Diagnostic("hamiltonian", err)
    else:
        t = tri_from_json_obj(obj)
        bad = validate(t)
        if bad is None and a.check == "4connected" and not is_four_connected(t):
            bad = Diagnostic("4connected", "the triangulation has a separating triangle or n < 6")
    if bad is not None:
        raise DiagnosticFailure({"rule": bad.rule, "detail": bad.detail})
    _write(dumps({"ok": True, "check": a.check}) + "\n", None)
    return EXIT_OK


def _cmd_oracle(a) -> int:
    if a.query == "enumerate":
        if a.n is None:
            raise UsageError("oracle enumerate needs --n")
        ix = enumerate_triangulations(a.n)
        _emit({"n": a.n, "classes": len(ix), "codes": [c.hex() for c in ix.nodes]}, a.output)
        return EXIT_OK
    need = 2 if a.query == "flipdist" else 1
    if len(a.inputs) != need:
        raise UsageError(f"oracle {a.query} takes {need} input file(s)")
    ts = [_load_tri(p) for p in a.inputs]
    if a.query == "flipdist":
        value: Any = flip_distance(ts[0], ts[1])
    elif a.query == "minsim":
        m = min_simflip_to_4connected(ts[0])
        value = None if m == float("inf") else m
    else:
        value = min_biarcs(ts[0])
    _emit({"query": a.query, "value": value}, a.output, ts[0])
    return EXIT_OK


def _cmd_render(a) -> int:
    d = ArcDiagram.from_json_obj(_read(a.input))
    try:
        svg = render_svg(d, a.squash, force=a.force, comment=f"flipforge {__version__}")
    except NotPlaneError as exc:
        raise DiagnosticFailure({"rule": "crossing", "detail": str(exc)}) from exc
    _write(svg, a.output)
    return EXIT_OK


COMMANDS = {
    "gen": _cmd_gen,
    "simflip4c": _cmd_simflip4c,
    "hamflip": _cmd_hamflip,
    "subdivide": _cmd_subdivide,
    "biarc": _cmd_biarc,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "render": _cmd_render,
}


def _fail(kind: str, message: str, extra: dict | None = None) -> None:
    obj = {"error": kind, "message": message}
    if extra:
        obj.update(extra)
    sys.stderr.write(dumps(obj) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    try:
        a = _parser().parse_args(argv)
        return COMMANDS[a.verb](a)
    except UsageError as exc:
        _fail("usage", str(exc))
        return EXIT_USAGE
    except DiagnosticFailure as exc:
        _fail("diagnostic", str(exc), {"report": exc.report})
        return EXIT_DIAGNOSTIC
    except (OSError, ValueError, KeyError, TypeError, RuntimeError, AssertionError) as exc:
        _fail(type(exc).__name__, str(exc))
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
