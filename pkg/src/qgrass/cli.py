"""Command-line front end.

    qgrass <kind> <n> <command> [--class P] [--a P --b P] [--tol X]
                                [--format text|json|csv] [--out PATH] [--unsafe-n]

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

import argparse
import sys
import warnings

import numpy as np

from . import serialize
from .partitions import (MAX_N, complement, enumerate_strict, format_partition,
                         is_strict, parse_partition)
from .peterson import points
from .ring import MAX_SAFE_N, RingElement, structure_constants
from .spectral import c1_spectrum, conjecture_o, eigenpairs, operator_matrix
from .verify import run_suite

COMMANDS = ("basis", "points", "multiply", "operator", "spectrum", "conjecture-o", "verify")


def build_parser():
    p = argparse.ArgumentParser(prog="qgrass", description=(
        "Quantum multiplication operators on OG(n) and LG(n) at q = 1."))
    p.add_argument("kind", type=str.lower, choices=("og", "lg"))
    p.add_argument("n", type=int)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--class", dest="cls", metavar="P", help="Schubert class, e.g. '2,1'")
    p.add_argument("--a", metavar="P", help="left factor for multiply")
    p.add_argument("--b", metavar="P", help="right factor for multiply")
    p.add_argument("--tol", type=float, default=1e-8, help="clustering tolerance (default 1e-8)")
    p.add_argument("--format", dest="fmt", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--unsafe-n", action="store_true",
                   help=f"allow n above {MAX_SAFE_N} (double precision may not suffice)")
    return p


def _partition(parser, text, n, what):
    try:
        lam = parse_partition(text)
    except ValueError as exc:
        parser.error(f"{what}: {exc}")
    if not is_strict(lam, n):
        parser.error(f"{what}: {text!r} is not in D({n})")
    return lam


def _symbol(kind):
    return "τ" if kind == "og" else "σ"


def _cmd_basis(args):
    n = args.n
    rows = [(i, format_partition(lam), sum(lam), format_partition(complement(lam, n)))
            for i, lam in enumerate(enumerate_strict(n))]
    if args.fmt == "json":
        return serialize.dumps([{"index": i, "partition": p, "weight": w, "complement": c}
                                for i, p, w, c in rows])
    if args.fmt == "csv":
        return serialize.csv_text(["index", "partition", "weight", "complement"], rows)
    return "".join(f"{i:4d}  ({p})  weight {w}  complement ({c})\n" for i, p, w, c in rows)


def _cmd_points(args):
    pts = points(args.kind, args.n)
    if args.fmt == "json":
        return serialize.dumps([p.to_dict() for p in pts])
    if args.fmt == "csv":
        m = pts[0].exclusive.order
        header = ["index", "doubled_indices", "parity", "closed", "t"]
        header += [f"{part}{k}" for k in range(1, m + 1) for part in ("re", "im")]
        rows = []
        for i, p in enumerate(pts):
            coords = [v for c in p.coordinates for v in (c.real, c.imag)]
            rows.append([i, " ".join(map(str, p.exclusive.doubled)), p.exclusive.parity,
                         p.exclusive.closed, p.t] + coords)
        return serialize.csv_text(header, rows)
    lines = []
    for i, p in enumerate(pts):
        I = p.exclusive
        lines.append(f"{i:4d}  I={I}  parity {I.parity}  closed {I.closed}  t={p.t:.17g}\n")
    return "".join(lines)


def _cmd_multiply(args, parser):
    if args.a is None or args.b is None:
        parser.error("multiply needs --a and --b")
    a = _partition(parser, args.a, args.n, "--a")
    b = _partition(parser, args.b, args.n, "--b")
    terms = {(nu, d): c for nu, d, c in structure_constants(args.kind, args.n, a, b)}
    prod = RingElement(args.kind, args.n, terms)
    if args.fmt == "json":
        return serialize.dumps(prod.to_json())
    if args.fmt == "csv":
        return serialize.csv_text(["partition", "q", "coeff"],
                                  [(t["partition"], t["q"], t["coeff"]) for t in prod.to_json()])
    s = _symbol(args.kind)
    return f"{s}({format_partition(a)})·{s}({format_partition(b)}) = {prod.format()}\n"


def _cmd_operator(args, parser):
    lam = _partition(parser, args.cls or "1", args.n, "--class")
    op = operator_matrix(args.kind, args.n, lam)
    labels = [format_partition(mu) for mu in enumerate_strict(args.n)]
    if args.fmt == "json":
        return serialize.dumps({"kind": op.kind, "n": op.n, "class": format_partition(lam),
                                "basis": labels, "entries": op.entries})
    if args.fmt == "csv":
        return serialize.csv_text(["row"] + labels,
                                  [[labels[i]] + list(map(int, row)) for i, row in enumerate(op.entries)])
    width = max(len(str(int(v))) for v in op.entries.flat)
    return "".join(" ".join(f"{int(v):>{width}d}" for v in row) + "\n" for row in op.entries)


def _cmd_spectrum(args, parser):
    if args.cls is None:
        values = c1_spectrum(args.kind, args.n)
        label = "c1"
    else:
        lam = _partition(parser, args.cls, args.n, "--class")
        values = np.array([pair.value for pair in eigenpairs(args.kind, args.n, lam)])
        label = format_partition(lam)
    pts = points(args.kind, args.n)
    if args.fmt == "json":
        return serialize.dumps({
            "kind": args.kind, "n": args.n, "class": label,
            "eigenvalues": [{"re": v.real, "im": v.imag, "doubled_indices": list(p.exclusive.doubled)}
                            for v, p in zip(values, pts)]})
    if args.fmt == "csv":
        return serialize.csv_text(["re", "im"], [(v.real, v.imag) for v in values])
    return "".join(f"I={p.exclusive}  {serialize.fmt_float(v.real)} {'-' if v.imag < 0 else '+'} "
                   f"{serialize.fmt_float(abs(v.imag))}i\n" for v, p in zip(values, pts))


def _cmd_conjecture(args):
    rep = conjecture_o(args.kind, args.n, args.tol)
    status = 0 if rep.passed else 1
    if args.fmt == "json":
        return serialize.dumps(rep.to_dict()), status
    if args.fmt == "csv":
        return serialize.csv_text(["re", "im", "multiplicity"],
                                  [(c.value.real, c.value.imag, c.multiplicity) for c in rep.spectrum]), status
    lines = [
        f"{args.kind.upper()}({args.n}): Fano index {rep.fano_index}, T0 = {rep.T0:.17g}",
        f"  (1) T0 is an eigenvalue:             {rep.cond1}",
        f"  (2) |u| = T0 => u = T0 * root of 1:  {rep.cond2}",
        f"  (3) T0 is simple:                    {rep.cond3}",
        f"  eigenvalues of modulus T0: {rep.max_modulus_count}",
    ]
    if rep.indeterminate:
        lines.append("  clustering indeterminate at this tolerance")
    return "\n".join(lines) + "\n", status


def _cmd_verify(args):
    results = run_suite(args.kind, args.n, args.tol)
    status = 0 if all(r.passed for r in results) else 1
    if args.fmt == "json":
        return serialize.dumps({"kind": args.kind, "n": args.n, "passed": status == 0,
                                "checks": [r.to_dict() for r in results]}), status
    if args.fmt == "csv":
        return serialize.csv_text(["check", "passed", "detail"],
                                  [(r.name, r.passed, r.detail) for r in results]), status
    text = "".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name:20s} {r.detail}\n" for r in results)
    return text, status


def run(argv=None):
    """Parse ``argv``, execute, and return (output text, exit status, parsed args)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 2:
        parser.error(f"n must be at least 2, got {args.n}")
    if args.n > MAX_SAFE_N:
        if not args.unsafe_n:
            parser.error(f"n must be in [2, {MAX_SAFE_N}]; pass --unsafe-n to go higher")
        if args.n > MAX_N:
            parser.error(f"n above {MAX_N} is not supported")
        warnings.warn(f"n = {args.n} exceeds {MAX_SAFE_N}; integer recovery may lose precision")
    if args.tol <= 0:
        parser.error("--tol must be positive")

    status = 0
    if args.command == "basis":
        text = _cmd_basis(args)
    elif args.command == "points":
        text = _cmd_points(args)
    elif args.command == "multiply":
        text = _cmd_multiply(args, parser)
    elif args.command == "operator":
        text = _cmd_operator(args, parser)
    elif args.command == "spectrum":
        text = _cmd_spectrum(args, parser)
    elif args.command == "conjecture-o":
        text, status = _cmd_conjecture(args)
    else:
        text, status = _cmd_verify(args)
    return text, status, args


def main(argv=None):
    text, status, args = run(argv)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
