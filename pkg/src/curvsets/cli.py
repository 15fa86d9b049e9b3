"""Command-line interface.

Subcommands
-----------
enumerate   cluster structures, or the whole state complex, as JSON/CSV
homology    the multi-way verified homology report for one n
locate      minimal simplex containing a distance matrix read from a file
verify      seeded property suites (exact identities + elliptope sweep)
elliptope   PSD / rank certification of one distance matrix

Exit codes: 0 success, 1 usage errors (bad flags, unparsable input files),
2 domain errors (non-realizable matrices, size caps, failed verification).
Output JSON is key-sorted and stable for fixed inputs, flags, and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .circle import parse_distance_matrix
from .cluster import ClusterStructure
from .elliptope import PSD_TOL, RANK_TOL, elliptope_membership
from .errors import CurvsetsError
from .homology import (
    HomologyGroup,
    betti_over_field,
    boundary_matrices,
    closed_form_all,
    format_boundary_triples,
    verify_homology,
)
from .state_complex import (
    build_state_complex,
    complex_to_json_dict,
    enumerate_cluster_structures,
    minimal_simplex,
)
from .verify import run_elliptope_sweep, run_identity_suite

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; our contract wants 1."""

    def error(self, message: str):  # noqa: D102 - argparse override
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _emit(payload: dict) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _parse_range(text: str) -> list[int]:
    """'4' -> [4]; '2..6' -> [2, 3, 4, 5, 6]."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
        if lo > hi:
            raise ValueError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


# --------------------------------------------------------------------------
# subcommands


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.complex:
        if args.format == "csv":
            print("error: --complex output is JSON only", file=sys.stderr)
            return 1
        K = build_state_complex(args.n)
        payload = complex_to_json_dict(K)
        payload["f_vector"] = list(K.f_vector())
        payload["euler_characteristic"] = K.euler_characteristic()
        _emit(payload)
        return 0

    ms = [args.m] if args.m is not None else list(range(1, args.n + 1))
    structures: list[ClusterStructure] = []
    for m in ms:
        structures.extend(enumerate_cluster_structures(args.n, m))
    if args.format == "csv":
        for c in structures:
            print(",".join(str(v) for v in c.values))
        return 0
    _emit(
        {
            "n": args.n,
            "m": args.m,
            "count": len(structures),
            "structures": [list(c.values) for c in structures],
        }
    )
    return 0


def _group_text(betti: int, torsion2: int) -> str:
    return str(HomologyGroup(betti=betti, torsion2=torsion2))


def cmd_homology(args: argparse.Namespace) -> int:
    K = build_state_complex(args.n)
    if args.dump_boundaries:
        C = boundary_matrices(K)
        os.makedirs(args.dump_boundaries, exist_ok=True)
        for d in sorted(C.boundaries):
            path = os.path.join(args.dump_boundaries, f"boundary_{d}.txt")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(format_boundary_triples(C, d))

    if args.coeff in ("q", "gf2", "gf3"):
        p = {"q": 0, "gf2": 2, "gf3": 3}[args.coeff]
        C = boundary_matrices(K)
        betti = betti_over_field(C, p)
        expected_groups = closed_form_all(args.n)
        bq = tuple(g.betti for g in expected_groups)
        t = tuple(g.torsion2 for g in expected_groups)
        if args.coeff == "gf2":
            expected = tuple(
                bq[d] + t[d] + (t[d - 1] if d else 0) for d in range(len(bq))
            )
        else:
            expected = bq
        passed = betti == expected
        _emit(
            {
                "n": args.n,
                "coeff": args.coeff,
                "dims": list(C.dims),
                "betti": list(betti),
                "expected": list(expected),
                "passed": passed,
            }
        )
        return 0 if passed else 2

    report = verify_homology(args.n, snf_cap=args.max_snf, complex_=K)
    t_obs = report.torsion2_observed
    degrees = []
    for d in range(len(report.dims)):
        snf_ok: Optional[bool] = None
        if report.snf_groups is not None:
            snf_ok = report.snf_groups[d] == report.expected[d]
        if report.snf_groups is not None:
            group = str(report.snf_groups[d])
        else:
            group = _group_text(report.betti_q[d], t_obs[d])
        degrees.append(
            {
                "degree": d,
                "betti": report.betti_q[d],
                "torsion2": t_obs[d],
                "group": group,
                "checks": {
                    "q": report.betti_q[d] == report.expected[d].betti,
                    "gf2": report.betti_gf2[d]
                    == report.betti_q[d] + t_obs[d] + (t_obs[d - 1] if d else 0),
                    "gf3": report.betti_gf3[d] == report.betti_q[d],
                    "snf": snf_ok,
                },
            }
        )
    payload = report.to_json_dict()
    payload["coeff"] = "z"
    payload["degrees"] = degrees
    _emit(payload)
    return 0 if report.passed else 2


def cmd_locate(args: argparse.Namespace) -> int:
    try:
        M = parse_distance_matrix(_read_text(args.matrix_file))
    except OSError as exc:
        print(f"error: cannot read {args.matrix_file}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: cannot parse distance matrix: {exc}", file=sys.stderr)
        return 1
    located = minimal_simplex(M)
    K = build_state_complex(M.n)
    signs = {v.bits: list(v.signs) for v in K.vertices}
    _emit(
        {
            "n": M.n,
            "dimension": located.dimension,
            "simplex": list(located.simplex),
            "vertex_order": list(located.vertex_order),
            "vertices": [signs[b] for b in located.vertex_order],
            "structure": list(located.structure.values),
            "barycentric": [str(v) for v in located.barycentric],
            "canonical_label": list(located.canonical_label),
            "configuration": [str(p.angle) for p in located.configuration],
        }
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    ns = _parse_range(args.n)
    if any(n < 2 for n in ns):
        print("error: verify needs n >= 2", file=sys.stderr)
        return 1
    identities = run_identity_suite(ns=ns, samples=args.samples, seed=args.seed)
    payload: dict = {"identities": identities.to_json_dict()}
    sweep_ns = [n for n in ns if n >= 3]
    passed = identities.passed
    if sweep_ns:
        sweep = run_elliptope_sweep(
            ns=sweep_ns, samples=args.samples, seed=args.seed
        )
        payload["elliptope"] = sweep.to_json_dict()
        passed = passed and sweep.passed
    payload["passed"] = passed
    _emit(payload)
    return 0 if passed else 2


def cmd_elliptope(args: argparse.Namespace) -> int:
    try:
        M = parse_distance_matrix(_read_text(args.matrix_file))
    except OSError as exc:
        print(f"error: cannot read {args.matrix_file}: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: cannot parse distance matrix: {exc}", file=sys.stderr)
        return 1
    report = elliptope_membership(M, psd_tol=args.psd_tol, rank_tol=args.rank_tol)
    _emit(
        {
            "n": report.n,
            "psd": report.psd,
            "min_eig": report.min_eigenvalue,
            "rank": report.rank,
            "in_elliptope": report.in_elliptope,
            "circle_consistent": report.circle_consistent,
        }
    )
    return 0


# --------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="curvsets",
        description="Curvature sets of the circle: enumeration, homology, "
        "location, and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="list cluster structures or the complex")
    p.add_argument("--n", type=int, required=True, help="number of points (>= 1)")
    p.add_argument("--m", type=int, default=None, help="restrict to m clusters")
    p.add_argument(
        "--complex",
        action="store_true",
        help="emit the deduplicated simplicial complex instead of raw structures",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("homology", help="verified homology report")
    p.add_argument("--n", type=int, required=True, help="number of points (>= 2)")
    p.add_argument(
        "--coeff",
        choices=("z", "q", "gf2", "gf3"),
        default="z",
        help="coefficients: full integer report (z) or one field",
    )
    p.add_argument(
        "--max-snf",
        type=int,
        default=None,
        metavar="N",
        help="largest matrix dimension the exact integer stage may attempt "
        "(default 800; CURVATURE_SNF_CAP overrides)",
    )
    p.add_argument(
        "--dump-boundaries",
        metavar="DIR",
        default=None,
        help="also write boundary matrices as 'row col value' triple files",
    )
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("locate", help="minimal simplex containing a matrix")
    p.add_argument("matrix_file", help="distance-matrix file ('-' for stdin)")
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("verify", help="run the seeded property suites")
    p.add_argument("--n", default="2..5", help="n or lo..hi range (default 2..5)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("elliptope", help="PSD/rank certification of a matrix")
    p.add_argument("matrix_file", help="distance-matrix file ('-' for stdin)")
    p.add_argument("--psd-tol", type=float, default=PSD_TOL)
    p.add_argument("--rank-tol", type=float, default=RANK_TOL)
    p.set_defaults(func=cmd_elliptope)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and isinstance(args.n, int):
        if args.command == "enumerate" and args.n < 1:
            parser.error("enumerate needs n >= 1")
        if args.command == "homology" and args.n < 2:
            parser.error("homology needs n >= 2")
    try:
        return args.func(args)
    except CurvsetsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
