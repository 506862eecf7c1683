"""Command-line front end.

Every verb routes to library operations and renders either human-readable
text or JSON (--json).  Sampling verbs take --seed (default 0) and identical
invocations produce byte-identical JSON.  Exit codes: 0 success/pass, 1 a
verification that ran and failed, 2 usage or input errors.

Numerical modules import lazily inside handlers so exact verbs stay snappy.
"""

from __future__ import annotations

import argparse
import json
import sys

from .alcove import (
    alcove_contains,
    alcove_vertices,
    level_weights,
    minimal_integral_level,
    open_face_set,
    transition_weight,
    weight_lattice_contains,
)
from .errors import ToolkitError
from .prequant import class_prequantizable, fusion_prequantizable, torsion_level_admissible
from .rational import format_vector, parse_vector
from .roots import (
    LieType,
    a_series_embedding,
    a_series_from_euclidean,
    build_root_system,
    height,
)

# Verb -> public operations exercised through its call graph; the test suite
# checks this table covers the whole public API.
VERB_COVERAGE = {
    "table": ["build_root_system", "alcove_vertices", "minimal_integral_level"],
    "vertices": [
        "build_root_system",
        "alcove_vertices",
        "transition_weight",
        "a_series_embedding",
        "height",
    ],
    "level-weights": [
        "level_weights",
        "weight_lattice_contains",
        "alcove_contains",
        "inner_product",
    ],
    "check-class": [
        "class_prequantizable",
        "fusion_prequantizable",
        "torsion_level_admissible",
        "open_face_set",
        "alcove_contains",
    ],
    "verify": [
        "make_space",
        "verify_axiom",
        "canonical_three_form",
        "maurer_cartan",
        "eta_integral_su2",
        "sphere4_moment",
        "sphere4_equivariance_residual",
    ],
    "cocycle": [
        "cover_index_set",
        "spectral_det_line",
        "cocycle_check",
        "eigenline_weight",
        "vertex_weight_consistency",
        "alcove_coordinates",
    ],
    "holonomy-convergence": [
        "holonomy",
        "gauge_transform",
        "convergence_order",
    ],
    "reduce-rank": ["make_space", "reduction_rank"],
}

_TABLE_RANKS = {
    "A": range(1, 9),
    "B": range(3, 9),
    "C": range(2, 9),
    "D": range(4, 9),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}


def _parse_xi(rs, text: str):
    xi = parse_vector(text)
    if rs.lie_type.series == "A" and len(xi) == rs.rank + 1:
        return a_series_from_euclidean(rs, xi)
    if len(xi) != rs.rank:
        raise ToolkitError(
            f"--xi expects {rs.rank} entries "
            f"(or {rs.rank + 1} eigenvalue coordinates for type A), got {len(xi)}"
        )
    return xi


def _run_table(args) -> tuple[int, dict]:
    rows = {}
    for series, ranks in _TABLE_RANKS.items():
        for d in ranks:
            lt = LieType(series, d)
            rows[str(lt)] = minimal_integral_level(build_root_system(lt))
    return 0, {"minimal_levels": rows}


def _run_vertices(args) -> tuple[int, dict]:
    rs = build_root_system(LieType.parse(args.type))
    model = alcove_vertices(rs)
    payload = {
        "lie_type": str(rs.lie_type),
        "positive_roots": len(rs.positive_roots),
        "highest_root_height": height(rs, rs.highest_root),
        "dual_coxeter": rs.dual_coxeter,
        "minimal_level": minimal_integral_level(rs),
        "vertices": model.to_json()["vertices"],
        "transition_weights": {
            f"{i},{j}": format_vector(transition_weight(rs, i, j))
            for i in range(rs.rank + 1)
            for j in range(rs.rank + 1)
            if i < j
        },
    }
    if rs.lie_type.series == "A":
        payload["vertices_euclidean"] = [
            format_vector(a_series_embedding(rs, v)) for v in model.vertices
        ]
    return 0, payload


def _run_level_weights(args) -> tuple[int, dict]:
    rs = build_root_system(LieType.parse(args.type))
    lws = level_weights(rs, args.level)
    for w in lws.weights:
        if not weight_lattice_contains(rs, w):
            raise ToolkitError("enumerated weight escaped the lattice")
        if args.level >= 1 and not alcove_contains(rs, w, args.level).contains:
            raise ToolkitError("enumerated weight escaped the alcove")
    return 0, lws.to_json()


def _run_check_class(args) -> tuple[int, dict]:
    rs = build_root_system(LieType.parse(args.type))
    xis = [_parse_xi(rs, text) for text in args.xi]
    verdicts = [class_prequantizable(rs, xi, args.level) for xi in xis]
    entries = []
    for xi, verdict in zip(xis, verdicts):
        membership = alcove_contains(rs, xi, 1)
        entries.append(
            {
                "xi": format_vector(xi),
                "verdict": verdict.to_json(),
                "boundary": membership.boundary,
                "open_faces": sorted(open_face_set(rs, xi)),
            }
        )
    answer = fusion_prequantizable(verdicts)
    payload = {
        "lie_type": str(rs.lie_type),
        "level": args.level,
        "classes": entries,
        "prequantizable": answer,
    }
    if args.torsion is not None:
        payload["torsion_admissible"] = torsion_level_admissible(args.torsion, args.level)
        answer = answer and payload["torsion_admissible"]
    return (0 if answer else 1), payload


def _build_space(args):
    from . import spaces

    if args.space == "conjugacy_class":
        if not args.xi:
            raise ToolkitError("--xi is required for conjugacy_class")
        rs = build_root_system(LieType("A", args.n - 1))
        xi = _parse_xi(rs, args.xi[0])
        return spaces.make_space(
            "conjugacy_class", n=args.n, xi=a_series_embedding(rs, xi)
        )
    if args.space == "double":
        return spaces.make_space("double", n=args.n)
    if args.space == "fused_double":
        return spaces.make_space("fused_double", n=args.n)
    if args.space == "genus":
        return spaces.make_space("genus", n=args.n, h=args.genus)
    raise ToolkitError(f"no such space {args.space!r}")


def _run_verify(args) -> tuple[int, dict]:
    if args.space == "eta_su2":
        from .sun import eta_integral_su2

        tol = 1e-2 if args.tol is None else args.tol
        value = eta_integral_su2(samples=args.samples, seed=args.seed)
        ok = bool(abs(value - 1.0) < tol)
        return (0 if ok else 1), {
            "check": "eta_normalization",
            "samples": args.samples,
            "value": value,
            "tolerance": tol,
            "pass": ok,
        }
    if args.space == "sphere4":
        if args.axiom not in (None, "equivariance"):
            raise ToolkitError("sphere4 only supports the equivariance check")
        from .spaces import sphere4_equivariance_residual

        tol = 1e-10 if args.tol is None else args.tol
        worst = sphere4_equivariance_residual(samples=args.samples, seed=args.seed)
        ok = worst < tol
        return (0 if ok else 1), {
            "axiom": "equivariance",
            "space": "sphere4",
            "samples": args.samples,
            "max_residual": worst,
            "tolerance": tol,
            "pass": ok,
        }
    if args.axiom is None:
        raise ToolkitError("--axiom is required for this space")
    from .spaces import verify_axiom

    space = _build_space(args)
    report = verify_axiom(
        space,
        args.axiom,
        samples=args.samples,
        fd_step=args.fd_step,
        tol=args.tol,
        seed=args.seed,
    )
    payload = {"space": args.space, "n": args.n, **report.to_json()}
    return (0 if report.passed else 1), payload


def _run_cocycle(args) -> tuple[int, dict]:
    import numpy as np

    from .gerbe import (
        cocycle_check,
        cover_index_set,
        eigenline_weight,
        vertex_weight_consistency,
    )
    from .sun import random_special_unitary

    rng = np.random.default_rng(args.seed)
    worst = 0.0
    rejected = 0
    done = 0
    while done < args.samples:
        a = random_special_unitary(args.n, rng)
        if len(cover_index_set(a)) < args.n:
            rejected += 1
            if rejected > 100 * args.samples:
                raise ToolkitError("sampling failed to produce regular matrices")
            continue
        for i in range(1, args.n - 1):
            for j in range(i + 1, args.n):
                for k in range(j + 1, args.n + 1):
                    coeff, ok = cocycle_check(a, i, j, k)
                    if not ok:
                        raise ToolkitError("cocycle coefficient collapsed")
                    worst = max(worst, abs(abs(coeff) - 1.0))
        done += 1
    tol = 1e-8 if args.tol is None else args.tol
    ok = worst < tol
    payload = {
        "n": args.n,
        "samples": args.samples,
        "max_unimodularity_defect": worst,
        "tolerance": tol,
        "eigenline_weights": [
            format_vector(eigenline_weight(args.n, i)) for i in range(1, args.n + 1)
        ],
        "vertex_weight_consistency": vertex_weight_consistency(args.n),
        "pass": ok and vertex_weight_consistency(args.n),
    }
    return (0 if payload["pass"] else 1), payload


def _run_holonomy(args) -> tuple[int, dict]:
    import numpy as np
    import scipy.linalg

    from .holonomy import (
        convergence_order,
        gauge_equivariance_residual,
        holonomy,
    )
    from .serialize import connection_from_json, matrix_to_json
    from .sun import random_algebra, random_special_unitary

    if args.file is not None:
        with open(args.file, "r", encoding="utf-8") as fh:
            conn = connection_from_json(json.load(fh))
        hol = holonomy(conn)
        return 0, {"steps": conn.steps, "holonomy": matrix_to_json(hol)}

    rng = np.random.default_rng(args.seed)
    x = random_algebra(args.n, rng)
    y = random_algebra(args.n, rng)
    z = random_algebra(args.n, rng)
    g0 = random_special_unitary(args.n, rng)
    winding = 1j * np.diag([1.0] + [0.0] * (args.n - 2) + [-1.0])

    def conn_fn(t):
        return np.sin(2 * np.pi * t) * x + np.cos(4 * np.pi * t) * y

    def loop_fn(t):
        return (
            g0
            @ scipy.linalg.expm(2 * np.pi * t * winding)
            @ scipy.linalg.expm(np.sin(2 * np.pi * t) * z)
        )

    grids = [int(s) for s in args.grids.split(",")]
    residuals = {
        n_steps: gauge_equivariance_residual(conn_fn, loop_fn, n_steps)
        for n_steps in grids
    }
    order = convergence_order(residuals)
    ok = abs(order - 2.0) <= 0.3
    payload = {
        "grids": grids,
        "residuals": {str(k): v for k, v in residuals.items()},
        "order": order,
        "pass": ok,
    }
    return (0 if ok else 1), payload


def _run_reduce_rank(args) -> tuple[int, dict]:
    import numpy as np
    import scipy.linalg

    from .spaces import make_space, reduction_rank
    from .sun import random_special_unitary

    rng = np.random.default_rng(args.seed)
    if args.at == "abba":
        h = 2
        a = random_special_unitary(args.n, rng)
        b = random_special_unitary(args.n, rng)
        point = (a, b, b, a)
    elif args.at == "commuting":
        h = 1
        diag = 1j * np.diag([1.0] + [0.0] * (args.n - 2) + [-1.0])
        u = random_special_unitary(args.n, rng)
        a = u @ scipy.linalg.expm(rng.normal() * diag) @ u.conj().T
        b = u @ scipy.linalg.expm(rng.normal() * diag) @ u.conj().T
        point = (a, b)
    elif args.at == "identity":
        h = args.genus
        point = tuple(np.eye(args.n, dtype=complex) for _ in range(2 * h))
    else:
        raise ToolkitError(f"unknown point kind {args.at!r}")
    space = make_space("genus", n=args.n, h=h)
    rank = reduction_rank(space, point)
    return 0, {
        "space": f"genus({args.n},{h})",
        "at": args.at,
        "rank": rank,
        "group_dim": args.n**2 - 1,
        "regular": rank == args.n**2 - 1,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasiham",
        description="Exact alcove arithmetic and numerical moment-map checks",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("table", help="minimal integral levels per simple type")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("vertices", help="alcove vertices and transition weights")
    p.add_argument("--type", required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("level-weights", help="weights inside the level-k alcove")
    p.add_argument("--type", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("check-class", help="level-k pre-quantization of classes")
    p.add_argument("--type", required=True)
    p.add_argument("--xi", action="append", required=True,
                   help="alcove parameter as comma-separated rationals; repeatable")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--torsion", type=int, default=None,
                   help="torsion exponent of second homology, if known")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="residual checks of the space axioms")
    p.add_argument("--space", required=True,
                   choices=["conjugacy_class", "double", "fused_double", "genus",
                            "sphere4", "eta_su2"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--xi", action="append", default=None)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--axiom", default=None,
                   choices=["cocycle", "moment", "min_degeneracy", "equivariance"])
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--fd-step", type=float, default=1e-4)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("cocycle", help="determinant-line cocycle over random matrices")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("holonomy-convergence",
                       help="gauge equivariance residual against grid size")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--grids", default="8,16,32,64,128")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--file", default=None,
                   help="JSON connection file; compute a single holonomy instead")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("reduce-rank", help="moment-map rank on the identity level set")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--at", required=True, choices=["abba", "commuting", "identity"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    return parser


_HANDLERS = {
    "table": _run_table,
    "vertices": _run_vertices,
    "level-weights": _run_level_weights,
    "check-class": _run_check_class,
    "verify": _run_verify,
    "cocycle": _run_cocycle,
    "holonomy-convergence": _run_holonomy,
    "reduce-rank": _run_reduce_rank,
}


def dispatch(argv: list[str]) -> tuple[int, dict]:
    """Parse arguments and run the verb; returns (exit code, payload)."""
    args = build_parser().parse_args(argv)
    return _HANDLERS[args.verb](args)


def render(payload: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(payload, sort_keys=True, indent=2)
    if "minimal_levels" in payload:
        return _render_table(payload["minimal_levels"])
    lines = []

    def emit(prefix, value):
        if isinstance(value, dict):
            for k in value:
                emit(f"{prefix}{k}." if prefix else f"{k}.", value[k])
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, item in enumerate(value):
                emit(f"{prefix[:-1]}[{i}].", item)
        elif isinstance(value, bool):
            lines.append(f"{prefix[:-1]}: {str(value).lower()}")
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    emit("", payload)
    return "\n".join(lines)


def _render_table(levels: dict) -> str:
    lines = ["series  ranks      level"]
    for series in "ABCDEFG":
        entries = {
            int(key[1:]): v for key, v in levels.items() if key[0] == series
        }
        ranks = sorted(entries)
        if series == "E":
            for d in ranks:
                lines.append(f"E{d}      -          {entries[d]}")
            continue
        values = sorted(set(entries.values()))
        value = values[0] if len(values) == 1 else entries
        if len(ranks) > 1:
            span = f"d={ranks[0]}..{ranks[-1]}"
            lines.append(f"{series}_d     {span:<10} {value}")
        else:
            lines.append(f"{series}{ranks[0]}      -          {value}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, payload = dispatch(argv)
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    as_json = "--json" in argv
    print(render(payload, as_json))
    return code


if __name__ == "__main__":
    sys.exit(main())
