"""Command line interface.

Exit status: 0 on success, 1 on a mathematical discrepancy (or a negative
coefficient when ``--expect-positive`` is given), 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import combinatorics as cb
from .chromatic import (
    RouteError,
    corollary_f_expansion,
    cstd,
    generalized_f_expansion,
    h_descents,
    oracle_m_expansion,
    oracle_p_expansion,
    theorem_f_expansion,
    verify,
)
from .hypergraph import HypergraphError, Hypertree, classify, parse_hypergraph, random_hypertree
from .partition_search import AssignmentError, export_assignment, import_assignment, search_assignment
from .qsym import (
    NotSymmetricError,
    QSymF,
    SymExpansion,
    f_to_m,
    m_to_f,
    msym_to_qsym,
    msym_to_ssym,
    positivity,
    psym_to_msym,
    qsym_to_msym,
)

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    return raw, hashlib.sha256(raw).hexdigest()


def _load(path, need_tree=False):
    raw, digest = _read(path)
    try:
        h, cycles, order = parse_hypergraph(raw.decode())
    except HypergraphError as exc:
        raise UsageError(f"{path}: {exc}") from None
    t = None
    if classify(h).hypertree:
        try:
            t = Hypertree.build(h, order, cycles)
        except HypergraphError as exc:
            raise UsageError(f"{path}: {exc}") from None
    elif need_tree:
        raise UsageError(f"{path}: not a hypertree ({classify(h).describe()})")
    return h, t, digest


def _assignments(paths) -> dict:
    out = {}
    for p in paths or ():
        try:
            a = import_assignment(p)
        except (OSError, AssignmentError, KeyError, ValueError) as exc:
            raise UsageError(f"{p}: {exc}") from None
        out[a.n] = a
    return out


def _convert(x, basis):
    """Bring an F, M or p expansion into the requested basis."""
    if isinstance(x, SymExpansion) and x.basis == "p":
        if basis == "p":
            return x
        x = msym_to_qsym(psym_to_msym(x))
    if basis == "p":
        raise UsageError("the p basis is only available from the psum route")
    if isinstance(x, QSymF):
        if basis == "F":
            return x
        x = f_to_m(x)
    if basis == "M":
        return x
    if basis == "F":
        return m_to_f(x)
    try:
        m = qsym_to_msym(x)
    except NotSymmetricError as exc:
        raise UsageError(str(exc)) from None
    return m if basis == "m" else msym_to_ssym(m)


def _parse_word(text: str) -> tuple:
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot read {text!r} as a word of positive integers") from None


def _emit(args, command, payload, human, digest=None, started=None):
    if args.json:
        report = {"command": command, "input_sha256": digest, "result": payload}
        if args.timing and started is not None:
            report["seconds"] = round(time.perf_counter() - started, 6)
        print(json.dumps(report, sort_keys=True))
    else:
        print(human)
        if args.timing and started is not None:
            print(f"time: {time.perf_counter() - started:.3f}s")


def cmd_validate(args) -> int:
    started = time.perf_counter()
    h, t, digest = _load(args.file)
    cls = classify(h)
    payload = {"classification": {"connected": cls.connected, "linear": cls.linear, "hypertree": cls.hypertree}}
    lines = [cls.describe()]
    if t is not None:
        payload["edge_order"] = list(t.edge_order)
        payload["cycles"] = [h.edge_labels(c) for c in t.cycles]
        lines.append("edge order: " + " ".join(str(j) for j in t.edge_order))
        for j, c in enumerate(t.cycles):
            lines.append(f"cycle e{j}: (" + " ".join(map(str, h.edge_labels(c))) + ")")
    _emit(args, "validate", payload, "\n".join(lines), digest, started)
    return EXIT_OK


def cmd_expand(args) -> int:
    started = time.perf_counter()
    h, t, digest = _load(args.file)
    route = args.route
    try:
        if route == "oracle":
            x = oracle_m_expansion(h)
        elif route == "psum":
            x = oracle_p_expansion(h)
        else:
            if t is None:
                raise RouteError(f"{route} route requires a hypertree ({classify(h).describe()})")
            if route == "theorem":
                x = theorem_f_expansion(t)
            elif route == "corollary":
                x = corollary_f_expansion(t)
            else:
                x = generalized_f_expansion(t, _assignments(args.assignment))
    except RouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    y = _convert(x, args.basis)
    verdict = positivity(y)
    payload = {"route": route, "expansion": y.to_json(), "positive": verdict.positive}
    _emit(args, "expand", payload, str(y), digest, started)
    if args.expect_positive and not verdict.positive:
        print(f"negativity witness: {verdict.describe(y)}", file=sys.stderr)
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_verify(args) -> int:
    started = time.perf_counter()
    if args.random is not None:
        t = random_hypertree(args.random, args.sizes, args.seed)
        h, digest = t.base, None
    elif args.file:
        h, t, digest = _load(args.file)
    else:
        raise UsageError("verify needs a FILE or --random N")
    report = verify(t if t is not None else h, assignments=_assignments(args.assignment))
    payload = report.to_json()
    if args.random is not None:
        payload["hypertree"] = t.to_json()
    lines = []
    for route in sorted(report.expansions):
        lines.append(f"{route}: computed")
    for route, why in sorted(report.skipped.items()):
        lines.append(f"{route}: skipped ({why})")
    if report.discrepancy:
        d = report.discrepancy
        lines.append(f"DISCREPANCY in {d['route']} at F_{d['index']}: oracle {d['oracle']}, route {d['route_value']}")
    elif not report.symmetric:
        lines.append("DISCREPANCY: oracle output is not symmetric")
    else:
        lines.append("all routes agree")
    lines.append("X_H = " + str(report.expansions["oracle"]))
    if not report.f_positivity.positive:
        lines.append("F-positivity: " + report.f_positivity.describe(report.expansions["oracle"]))
    else:
        lines.append("F-positivity: positive")
    _emit(args, "verify", payload, "\n".join(lines), digest, started)
    if not report.agree:
        return EXIT_DISCREPANCY
    if args.expect_positive and not report.f_positivity.positive:
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_search(args) -> int:
    started = time.perf_counter()
    result = search_assignment(args.n, args.budget)
    if result.assignment is not None and args.out:
        export_assignment(result.assignment, args.out)
    human = f"n={args.n}: {result.status} after {result.nodes} nodes"
    if result.status == "exhausted":
        human += " (no assignment exists)"
    elif result.status == "budget":
        human += " (budget exceeded; existence undecided)"
    elif not args.out:
        human += "\n" + "\n".join(f"{''.join(map(str, p)) if args.n < 10 else list(p)} -> {list(cb.members(s))}"
                                  for p, s in sorted(result.assignment.table.items()))
    _emit(args, "search", result.to_json(), human, None, started)
    return EXIT_OK


def cmd_cstd(args) -> int:
    started = time.perf_counter()
    w = _parse_word(args.word)
    try:
        pi = cstd(w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sep = "" if len(pi) < 10 else " "
    _emit(args, "cstd", {"word": list(w), "cstd": list(pi)}, sep.join(map(str, pi)), None, started)
    return EXIT_OK


def cmd_descents(args) -> int:
    started = time.perf_counter()
    h, t, digest = _load(args.file, need_tree=True)
    pi = _parse_word(args.perm)
    if not cb.is_permutation(pi) or len(pi) != h.n:
        raise UsageError(f"labeling must be a permutation of 1..{h.n}")
    d = list(cb.members(h_descents(t, pi)))
    _emit(args, "descents", {"labeling": list(pi), "h_descents": d},
          "{" + ", ".join(map(str, d)) + "}", digest, started)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--timing", action="store_true", help="report wall-clock time")
    common.add_argument("--guard-override", type=int, metavar="N",
                        help="raise every enumeration guard to at least N")

    parser = argparse.ArgumentParser(prog="hyperchrom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="classify a hypergraph file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("expand", parents=[common], help="expand X_H in a basis")
    p.add_argument("file")
    p.add_argument("--route", choices=["oracle", "psum", "theorem", "corollary", "generalized"], default="oracle")
    p.add_argument("--basis", choices=["F", "M", "m", "p", "s"], default="F")
    p.add_argument("--assignment", action="append", metavar="FILE")
    p.add_argument("--expect-positive", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="cross-check every applicable route")
    p.add_argument("file", nargs="?")
    p.add_argument("--random", type=int, metavar="N", help="verify a random hypertree on N vertices")
    p.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 5])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--assignment", action="append", metavar="FILE")
    p.add_argument("--expect-positive", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", parents=[common], help="search for a partition assignment")
    p.add_argument("n", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("cstd", parents=[common], help="cyclic standardization of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_cstd)

    p = sub.add_parser("descents", parents=[common], help="H-descents of a labeling")
    p.add_argument("file")
    p.add_argument("perm", help="labels of the vertices in file order")
    p.set_defaults(func=cmd_descents)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    limits = {}
    if args.guard_override is not None:
        limits = {k: max(v, args.guard_override) for k, v in cb.GUARDS.items()}
    try:
        with cb.guard_override(**limits):
            return args.func(args)
    except (UsageError, cb.GuardError, HypergraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
