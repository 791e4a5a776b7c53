"""Command-line front-end: ``retorix <command> ...``.

Every command prints one JSON document with sorted keys.  Domain errors
exit with status 1 and ``{"error": ...}``; capacity guards exit with 2.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from pathlib import Path
from typing import Sequence

from .bott import (
    BottSpec,
    betti_from_presentation,
    lambda_matrix,
    presentation_from_matrix,
    random_generalized_spec,
    random_real_spec,
    ring_presentation,
)
from .complex import ComplexError, SimplicialComplex, standard_complex
from .csymp import CounterexampleError, almost_c_symplectic, decide_c_symplectic
from .dga import ConsistencyError, Cochain, Monomial, differential, multiply, ring_structure
from .gf2 import CapacityError, Gf2Matrix, is_characteristic, parse_matrix
from .hochster import graded_betti
from .matroid import circuits, count_binary_matroids, dependency_from_relation, matrix_from_dependencies, triangularize
from .qlinalg import QuotientError
from .repro import run_all


class InputError(ValueError):
    pass


def load_complex(arg: str) -> SimplicialComplex:
    """A JSON file ``{"m", "facets"}`` or a family string like ``cross:3``."""
    path = Path(arg)
    if path.exists():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise InputError(f"{arg}: not valid JSON ({exc})") from exc
        return SimplicialComplex.from_json(data)
    if ":" in arg:
        return standard_complex(arg)
    raise InputError(f"{arg}: no such file")


def load_matrix(arg: str) -> Gf2Matrix:
    path = Path(arg)
    if not path.exists():
        raise InputError(f"{arg}: no such file")
    return parse_matrix(path.read_text())


_TOKEN = re.compile(r"v?_?\{?(\d+)\}?")


def parse_relations(text: str) -> list[list[int]]:
    """One relation per line: ``v1 + v2 + v3 = 0`` or ``1 2 3``; ``#`` comments."""
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        line = re.sub(r"=\s*0\s*$", "", line)
        tokens = [t for t in re.split(r"[+\s,]+", line) if t]
        idx = []
        for t in tokens:
            match = _TOKEN.fullmatch(t)
            if not match:
                raise InputError(f"cannot parse relation term {t!r}")
            idx.append(int(match.group(1)))
        out.append(idx)
    if not out:
        raise InputError("no relations given")
    return out


def load_relations(arg: str) -> tuple[int, list[list[int]]]:
    path = Path(arg)
    if not path.exists():
        raise InputError(f"{arg}: no such file")
    rels = parse_relations(path.read_text())
    return 1 + max(max(r) for r in rels), rels


def matroid_matrix(args: argparse.Namespace) -> Gf2Matrix:
    if args.deps:
        n, rels = load_relations(args.deps)
        return matrix_from_dependencies(n, [dependency_from_relation(r) for r in rels])
    if args.matrix:
        return load_matrix(args.matrix)
    raise InputError("give --matrix or --deps")


def bott_spec(args: argparse.Namespace) -> BottSpec:
    if args.deps:
        return BottSpec.real(triangularize(matroid_matrix(args)).matrix)
    if not args.matrix:
        raise InputError("give --matrix or --deps")
    M = load_matrix(args.matrix)
    if not args.blocks:
        return BottSpec.real(M)
    sizes = [int(x) for x in args.blocks.split(",")]
    if M.nrows != len(sizes) or M.ncols != sum(sizes):
        raise InputError(f"block matrix must be {len(sizes)}×{sum(sizes)}")
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    blocks = {}
    for i, row in enumerate(M.rows):
        for j, nj in enumerate(sizes):
            part = (row >> offs[j]) & ((1 << nj) - 1)
            if part and j <= i:
                raise InputError(f"block ({i + 1},{j + 1}) must be zero")
            if part:
                blocks[(i, j)] = part
    return BottSpec(tuple(sizes), blocks)


# -- commands --------------------------------------------------------------------------------


def cmd_betti(args: argparse.Namespace) -> dict:
    K = load_complex(args.complex)
    L = load_matrix(args.lambda_) if args.lambda_ else None
    table = graded_betti(K, L)
    out = table.to_json()
    if args.totals_only:
        out.pop("graded")
    return out


def cmd_ring(args: argparse.Namespace) -> dict:
    K = load_complex(args.complex)
    L = load_matrix(args.lambda_) if args.lambda_ else None
    return ring_structure(K, L, args.max_degree, args.mode).to_json()


def cmd_bott(args: argparse.Namespace) -> dict:
    spec = bott_spec(args)
    pres = ring_presentation(spec)
    dim = args.dim if args.dim is not None else spec.n
    out = {
        "generators": pres.to_json()["generators"],
        "betti": betti_from_presentation(pres, dim),
        "disjoint_pairs": [[sorted(a), sorted(b)] for a, b in pres.disjoint_pairs()],
    }
    if args.engine:
        L, K = lambda_matrix(spec)
        out["engine_betti"] = graded_betti(K, L).totals
    return out


def cmd_matroid(args: argparse.Namespace) -> dict:
    if args.action == "count":
        if args.n is None:
            raise InputError("count needs --n")
        return {"n": args.n, "count": count_binary_matroids(args.n)}
    M = matroid_matrix(args)
    if args.action == "circuits":
        pres = presentation_from_matrix(M)
        return {"circuits": [sorted(c) for c in circuits(M)], "degrees": pres.degree_multiset()}
    tri = triangularize(M)
    return {
        "matrix": tri.matrix.to_lists(),
        "perm": list(tri.perm),
        "circuits": [sorted(c) for c in circuits(tri.matrix)],
    }


def cmd_csymp(args: argparse.Namespace) -> dict:
    K = load_complex(args.complex)
    if args.almost:
        return almost_c_symplectic(K).to_json()
    L = load_matrix(args.lambda_) if args.lambda_ else None
    return decide_c_symplectic(K, L).to_json()


def cmd_check(args: argparse.Namespace) -> dict:
    K = load_complex(args.complex)
    L = load_matrix(args.lambda_)
    ok, face = is_characteristic(K, L)
    out: dict = {"characteristic": ok, "rank": L.rank}
    if face is not None:
        out["singular_face"] = list(face)
    return out


def cmd_repro(args: argparse.Namespace) -> dict:
    rows = run_all()
    return {
        "all_pass": all(ok for _, ok, _ in rows),
        "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in rows],
    }


def cmd_selftest(args: argparse.Namespace) -> dict:
    """Randomized spot checks: Bott oracle agreement and d∘d = 0."""
    rng = random.Random(args.seed)
    failures = []
    for _ in range(args.cases):
        spec = random_real_spec(rng.randint(1, 4), rng) if rng.random() < 0.7 else random_generalized_spec(
            rng.randint(1, 3), 2, rng)
        L, K = lambda_matrix(spec)
        a = betti_from_presentation(ring_presentation(spec), spec.n)
        b = graded_betti(K, L).totals
        if a != b:
            failures.append({"kind": "bott", "sizes": list(spec.sizes), "presentation": a, "engine": b})
        m = K.m
        omega = rng.randrange(1 << m)
        sigma = omega & rng.randrange(1 << m)
        c = Cochain.monomial(Monomial(sigma, omega))
        if differential(differential(c, K), K):
            failures.append({"kind": "dd", "monomial": str(Monomial(sigma, omega))})
        x = Cochain.monomial(Monomial(sigma, omega))
        y = Cochain.monomial(Monomial(omega & ~sigma & rng.randrange(1 << m), rng.randrange(1 << m)))
        lhs = differential(multiply(x, y, K), K)
        rhs = multiply(differential(x, K), y, K) + multiply(x, differential(y, K), K) * (-1) ** Monomial(sigma, omega).degree
        if lhs != rhs:
            failures.append({"kind": "leibniz", "x": str(x), "y": str(y)})
    return {"seed": args.seed, "cases": args.cases, "failures": failures, "pass": not failures}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="retorix", description="Rational cohomology of real toric spaces.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("betti", help="graded Betti table of M(K, Λ)")
    b.add_argument("--complex", required=True, help="complex JSON file or family such as cross:3")
    b.add_argument("--lambda", dest="lambda_", help="characteristic matrix file (default: identity)")
    b.add_argument("--totals-only", action="store_true")
    b.set_defaults(func=cmd_betti)

    r = sub.add_parser("ring", help="cohomology bases and structure constants")
    r.add_argument("--complex", required=True)
    r.add_argument("--lambda", dest="lambda_")
    r.add_argument("--max-degree", type=int)
    r.add_argument("--mode", choices=["full", "rule"], default="rule")
    r.set_defaults(func=cmd_ring)

    bt = sub.add_parser("bott", help="ring presentation of a (generalized) real Bott manifold")
    bt.add_argument("--matrix", help="A (n×n) or the block matrix (k×n with --blocks)")
    bt.add_argument("--blocks", help="block sizes n1,n2,...")
    bt.add_argument("--deps", help="dependency relations, one per line")
    bt.add_argument("--dim", type=int)
    bt.add_argument("--engine", action="store_true", help="also compute Betti numbers with the general engine")
    bt.set_defaults(func=cmd_bott)

    mt = sub.add_parser("matroid", help="binary matroid utilities")
    mt.add_argument("action", choices=["circuits", "triangularize", "count"])
    mt.add_argument("--matrix")
    mt.add_argument("--deps")
    mt.add_argument("--n", type=int)
    mt.set_defaults(func=cmd_matroid)

    cs = sub.add_parser("csymp", help="c-symplectic decision")
    cs.add_argument("--complex", required=True)
    cs.add_argument("--lambda", dest="lambda_")
    cs.add_argument("--almost", action="store_true")
    cs.set_defaults(func=cmd_csymp)

    ck = sub.add_parser("check", help="is Λ characteristic over K?")
    ck.add_argument("--complex", required=True)
    ck.add_argument("--lambda", dest="lambda_", required=True)
    ck.set_defaults(func=cmd_check)

    rp = sub.add_parser("repro", help="run the built-in fixture checks")
    rp.set_defaults(func=cmd_repro)

    st = sub.add_parser("selftest", help="randomized property spot checks")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--cases", type=int, default=50)
    st.set_defaults(func=cmd_selftest)
    return p


def emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = args.func(args)
    except CapacityError as exc:
        emit({"error": str(exc), "kind": "capacity"})
        return 2
    except (ComplexError, QuotientError, ConsistencyError, CounterexampleError, ValueError, KeyError) as exc:
        emit({"error": str(exc)})
        return 1
    emit(out)
    if args.command in ("repro", "selftest"):
        return 0 if out.get("all_pass", out.get("pass")) else 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
