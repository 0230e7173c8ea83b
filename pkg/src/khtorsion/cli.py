"""``khtor``: command-line front end.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 crossing cap exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .alexander import alexander, check_family
from .diagram import (
    DiagramError,
    LinkDiagram,
    connected_sum,
    faces,
    kt_tangle,
    load,
    parse_pd,
    satellite,
    serialize,
    tangle_replace,
)
from .khovanov import check_summand, kh, parse_ring
from .states import CapExceeded

ALIASES = {
    "trefoil": "3_1",
    "right_trefoil": "3_1_right",
    "figure8": "4_1",
    "figure_eight": "4_1",
    "stevedore": "6_1",
}


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    ring: str = "Z"
    cap: int | None = None
    fmt: str = "text"
    threads: int = 1


class InputError(Exception):
    pass


def read_diagram(path: str) -> LinkDiagram:
    """Read a PD file; a bare corpus name such as ``6_1`` or ``trefoil.pd`` also works."""
    p = Path(path)
    if p.is_file():
        try:
            return parse_pd(p.read_text(), name=p.stem)
        except DiagramError as exc:
            raise InputError("%s: %s" % (path, exc)) from None
    stem = p.name[:-3] if p.name.endswith(".pd") else p.name
    if p.parent == Path("."):
        try:
            return load(ALIASES.get(stem, stem))
        except DiagramError:
            pass
    raise InputError("%s: no such file" % path)


def _default_arcs(d: LinkDiagram) -> tuple[int, int]:
    for face in faces(d):
        labs = sorted({lab for lab, _ in face})
        if len(labs) >= 2:
            return labs[0], labs[1]
    raise InputError("diagram has no face with two distinct arcs")


def cmd_kh(cfg: RunConfig, out) -> int:
    t = kh(read_diagram(cfg.inputs[0]), cfg.ring, cap=cfg.cap, threads=cfg.threads)
    if cfg.fmt == "csv":
        out.write(t.to_csv())
    elif cfg.fmt == "json":
        out.write(t.to_json() + "\n")
    else:
        out.write(t.to_text())
    return 0


def cmd_summand(cfg: RunConfig, out) -> int:
    d0, d1 = (read_diagram(p) for p in cfg.inputs[:2])
    t0 = kh(d0, cfg.ring, cap=cfg.cap, threads=cfg.threads)
    t1 = kh(d1, cfg.ring, cap=cfg.cap, threads=cfg.threads)
    rep = check_summand(t0, t1)
    out.write(str(rep) + "\n")
    return 0 if rep.passed else 1


def cmd_construct(args, out) -> int:
    d = read_diagram(args.pd)
    if args.kind == "consum":
        res = connected_sum(d, read_diagram(args.other))
    elif args.kind == "ktjoin":
        arcs = args.arc or []
        if len(arcs) not in (0, 2):
            raise InputError("ktjoin needs exactly two --arc values")
        a1, a2 = arcs if arcs else _default_arcs(d)
        res = tangle_replace(d, a1, a2, kt_tangle())
    else:
        res = satellite(d)
    text = serialize(res)
    # every emitted code must parse back
    parse_pd(text)
    out.write(text + "\n")
    return 0


def cmd_alexander(args, out) -> int:
    d = read_diagram(args.pd)
    if args.family:
        rep = check_family(d, read_diagram(args.family), args.n)
        out.write(str(rep) + "\n")
        return 0 if rep.passed else 1
    a = alexander(d)
    line = str(a)
    if a.polynomial.max_degree:
        line += "  (offset %d)" % a.offset
    out.write(line + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khtor", description="Khovanov homology with exact torsion.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--ring", default="Z", help="Z, Q or Fp (p prime), e.g. F2")
        p.add_argument("--cap", type=int, default=None, help="maximum number of crossings (default 16)")
        p.add_argument("--threads", type=int, default=None, help="worker processes (default $KHTOR_THREADS or 1)")

    p = sub.add_parser("kh", help="Khovanov homology table")
    p.add_argument("pd")
    p.add_argument("--format", dest="fmt", choices=["text", "csv", "json"], default="text")
    common(p)

    p = sub.add_parser("summand", help="check Kh(pd0) is a direct summand of Kh(pd1)")
    p.add_argument("pd0")
    p.add_argument("pd1")
    common(p)

    p = sub.add_parser("construct", help="build a diagram and print its PD code")
    csub = p.add_subparsers(dest="kind", required=True)
    q = csub.add_parser("consum", help="connected sum")
    q.add_argument("pd")
    q.add_argument("other")
    q = csub.add_parser("ktjoin", help="replace a trivial tangle by the bundled KT-type tangle")
    q.add_argument("pd")
    q.add_argument("--arc", type=int, action="append")
    q = csub.add_parser("satellite", help="0-framed satellite with the bundled pattern")
    q.add_argument("pd")

    p = sub.add_parser("alexander", help="normalised Alexander polynomial")
    p.add_argument("pd")
    p.add_argument("--family", metavar="J0.pd", help="check K # J0 # ... # J0 against the product formula")
    p.add_argument("--n", type=int, default=3)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command in ("kh", "summand"):
            threads = args.threads
            if threads is None:
                threads = int(os.environ.get("KHTOR_THREADS", "1") or 1)
            parse_ring(args.ring)
            cfg = RunConfig(
                args.command,
                [args.pd] if args.command == "kh" else [args.pd0, args.pd1],
                args.ring,
                args.cap,
                getattr(args, "fmt", "text"),
                threads,
            )
            return cmd_kh(cfg, out) if args.command == "kh" else cmd_summand(cfg, out)
        if args.command == "construct":
            return cmd_construct(args, out)
        return cmd_alexander(args, out)
    except CapExceeded as exc:
        print("khtor: %s" % exc, file=sys.stderr)
        return 3
    except (InputError, DiagramError, ValueError, OSError) as exc:
        print("khtor: %s" % exc, file=sys.stderr)
        return 2


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
