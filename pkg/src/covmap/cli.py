"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 validation error, 3 I/O error.
All output is deterministic for a fixed command line and --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import catalog, positivity, reporting
from .groups import group_by_name
from .irreps import character_table, irreducibility_norm, one_dim_irreps, quaternion_irrep_2d, standard_irrep_sym
from .reporting import grid_axis, matrix_to_json_obj


class ValidationError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


FAMILY_AXES = {
    "s3": ("lsgn", "llam"),
    "q": ("li", "lj", "lk"),
    "s4": ("lmb1", "lmb2", "lmb3"),
    "mu": ("alpha", "beta"),
}


def _family_for(group: str, d: int | None):
    if group == "mu":
        if d is None:
            raise ValidationError("--d is required for the monomial family")
        return catalog.mu_family(d)
    if group in ("s3", "q", "s4"):
        return catalog.family_by_key(group)
    raise ValidationError(f"unknown family {group!r}")


def _values_from_params(group: str, params: dict) -> list[float]:
    if group == "mu":
        return [1.0, params["beta"], params["alpha"]]
    return [1.0] + [params[name] for name in FAMILY_AXES[group]]


def _parse_floats(text: str, expected: int | None = None) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad numeric list {text!r}") from exc
    if expected is not None and len(values) != expected:
        raise ValidationError(f"expected {expected} comma-separated values, got {len(values)}")
    return values


def _parse_range(text: str) -> tuple[float, float, float]:
    try:
        a, b, s = (float(tok) for tok in text.split(":"))
    except ValueError as exc:
        raise ValidationError(f"bad range {text!r}; expected start:stop:step") from exc
    return a, b, s


def _emit(obj, out: str | None, argv, seed=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if out:
        reporting._write_text(out, text)
        reporting.write_metadata(out, seed, argv)
    else:
        sys.stdout.write(text)


def _cmd_group_info(args, argv) -> int:
    g = group_by_name(args.group)
    generators = {
        "S3": ["(01)", "(012)"],
        "S4": ["(01)", "(0123)"],
        "Q": ["i", "j"],
    }.get(g.name)
    if generators is None:  # monomial family: one phase, one transposition, one cycle
        d = g.natural.shape[1]
        phase = "w^" + ",".join(["1"] + ["0"] * (d - 1)) + "|e"
        cycle = "(" + "".join(str(i) for i in range(d)) + ")" if d > 1 else "e"
        generators = [phase] + (["(01)", cycle] if d > 2 else ["(01)"] if d == 2 else [])
    info = {
        "name": g.name,
        "order": g.order,
        "class_sizes": list(g.class_sizes()),
        "generators": generators,
    }
    _emit(info, args.out, argv)
    return 0


def _resolve_irrep(group_name: str, irrep: str):
    g = group_by_name(group_name)
    if irrep in ("std", "standard"):
        if g.name not in ("S3", "S4"):
            raise ValidationError("the standard irrep is available for s3 and s4")
        return g, standard_irrep_sym(g.natural.shape[1], g)
    if irrep == "2d":
        if g.name != "Q":
            raise ValidationError("the 2d irrep is available for q")
        return g, quaternion_irrep_2d(g)
    for rep in one_dim_irreps(g):
        if rep.label == irrep:
            return g, rep
    raise ValidationError(f"unknown irrep {irrep!r} for group {group_name}")


def _cmd_irrep_verify(args, argv) -> int:
    g, rep = _resolve_irrep(args.group, args.irrep)
    report = rep.validate()
    norm = irreducibility_norm(rep.character(), g)
    out = {
        "group": g.name,
        "irrep": rep.label,
        "dim": rep.dim,
        "identity_dev": report["identity"],
        "unitarity_dev": report["unitarity"],
        "homomorphism_dev": report["homomorphism"],
        "character_norm": norm,
        "irreducible": bool(abs(norm - 1.0) < 1e-8),
    }
    _emit(out, args.out, argv)
    return 0


def _cmd_irrep_show(args, argv) -> int:
    g, rep = _resolve_irrep(args.group, args.irrep)
    idx = g.index_of(args.element)
    obj = {"group": g.name, "irrep": rep.label, "element": args.element}
    obj.update(matrix_to_json_obj(rep.matrix(idx)))
    _emit(obj, args.out, argv)
    return 0


def _make_cm(args):
    fam = _family_for(args.group, getattr(args, "d", None))
    if args.group == "mu":
        if args.alpha is None or args.beta is None:
            raise ValidationError("--alpha and --beta are required for the monomial family")
        values = [1.0, args.beta, args.alpha]
    else:
        if args.l is None:
            raise ValidationError("--l is required for this family")
        values = _parse_floats(args.l, expected=len(fam.labels))
    return fam.make(values)


def _cmd_map_build(args, argv) -> int:
    cm = _make_cm(args)
    obj = {
        "family": cm.family,
        "dim": cm.dim,
        "labels": list(cm.labels),
        "values": [float(v) for v in np.asarray(cm.values, dtype=float)],
        "mat": matrix_to_json_obj(cm.matrix()),
        "choi": matrix_to_json_obj(cm.choi()),
    }
    _emit(obj, args.out, argv)
    return 0


def _cmd_classify(args, argv) -> int:
    cm = _make_cm(args)
    report = positivity.classify(
        cm,
        seed=args.seed,
        restarts=args.restarts,
        iters=args.iters,
        psd_rtol=args.tol_psd,
        eq_tol=args.tol_eq,
    )
    _emit(report.to_dict(), args.out, argv, seed=args.seed)
    return 0


def _scan_worker_factory(family_key: str, restarts: int, iters: int, group: str):
    fam = catalog.family_by_key(family_key)

    def run(point, point_seed):
        params = dict(zip(FAMILY_AXES[group], point))
        cm = fam.make(_values_from_params(group, params))
        r = positivity.classify(cm, seed=point_seed, restarts=restarts, iters=iters)
        return {
            "cp": r.cp,
            "cop": r.cop,
            "cuboid": r.cuboid_necessary,
            "diag": r.diagonal_necessary,
            "reduction": r.reduction_sufficient,
            "exact": r.exact_positive,
            "sampled_min": r.sampled_block_min,
        }

    return run


def _cmd_scan(args, argv) -> int:
    group = args.group
    axis_names = FAMILY_AXES.get(group)
    if axis_names is None:
        raise ValidationError(f"unknown family {group!r}")
    ranges: dict[str, tuple[float, float, float]] = {}
    if args.range:
        for part in args.range.split(","):
            if "=" not in part:
                raise ValidationError(f"bad --range entry {part!r}; expected name=start:stop:step")
            name, spec = part.split("=", 1)
            if name not in axis_names:
                raise ValidationError(f"unknown axis {name!r}; expected one of {axis_names}")
            ranges[name] = _parse_range(spec)
    if group == "mu":
        if args.alpha:
            ranges["alpha"] = _parse_range(args.alpha)
        if args.beta:
            ranges["beta"] = _parse_range(args.beta)
    missing = [n for n in axis_names if n not in ranges]
    if missing:
        raise ValidationError(f"missing ranges for axes: {', '.join(missing)}")
    axes = [grid_axis(n, *ranges[n]) for n in axis_names]

    fam = _family_for(group, getattr(args, "d", None))
    jobs = args.jobs if args.jobs is not None else int(os.environ.get("COVMAP_JOBS", "1"))
    scan = reporting.run_region_scan(
        axes,
        _scan_worker_factory(fam.key, args.restarts, args.iters, group),
        seed=args.seed,
        jobs=jobs,
        worker_factory=_scan_worker_factory,
        worker_args=(fam.key, args.restarts, args.iters, group),
    )
    reporting.write_region_csv(scan, args.out)
    reporting.write_metadata(args.out, args.seed, argv, extra={"backend": _backend_name()})
    return 0


def _backend_name() -> str:
    from . import _core

    return _core.default_backend()


def _cmd_catalog_mu(args, argv) -> int:
    if args.d < 2:
        raise ValidationError("--d must be at least 2")
    cp, cp_vals = catalog.mu_cp(args.d, args.alpha, args.beta)
    cop, cop_vals = catalog.mu_cop(args.d, args.alpha, args.beta)
    obj = {
        "d": args.d,
        "alpha": args.alpha,
        "beta": args.beta,
        "cp": cp,
        "cp_values": [float(v) for v in cp_vals],
        "cop": cop,
        "cop_values": [float(v) for v in cop_vals],
        "exact_positive": catalog.mu_exact_positive(args.d, args.alpha, args.beta)
        if args.d >= 3
        else None,
    }
    if args.full_report:
        cm = catalog.mu_map(args.d, args.alpha, args.beta)
        report = positivity.classify(cm, seed=args.seed)
        obj["classification"] = report.to_dict()
    _emit(obj, args.out, argv, seed=args.seed)
    return 0


def _cmd_catalog_quat_decompose(args, argv) -> int:
    l = np.array(_parse_floats(args.l, expected=4))
    delta = catalog.quat_choi_eigenvalues(l)
    if not catalog.quat_exact_positive(l):
        raise ValidationError("parameters lie outside the positivity region; no split exists")
    a, b = catalog.quat_decompose(l)
    fam = catalog.quaternion_family()
    from .superop import compose_with_transpose

    recon = fam.make(a).matrix() + compose_with_transpose(fam.make(b).matrix())
    dev = float(np.abs(recon - fam.make(l).matrix()).max())
    obj = {
        "params": [float(v) for v in l],
        "choi_eigenvalues": [float(v) for v in delta],
        "cp_part": [float(v) for v in a],
        "transposed_part": [float(v) for v in b],
        "parts_cp": [catalog.quat_cp(a), catalog.quat_cp(b)],
        "reconstruction_max_dev": dev,
    }
    _emit(obj, args.out, argv)
    return 0


def _cmd_catalog_choi_compare(args, argv) -> int:
    params = catalog.mu_choi_correspondence(args.alpha, args.beta)
    obj = {"alpha": args.alpha, "beta": args.beta}
    if params is None:
        obj["correspondence"] = None
    else:
        a, b, c = params
        dev = float(
            np.abs(catalog.mu_choi(3, args.alpha, args.beta) - catalog.gen_choi_choi(a, b, c)).max()
        )
        obj["correspondence"] = {"a": a, "b": b, "c": c}
        obj["choi_max_dev"] = dev
        obj["positive_not_cp"] = catalog.gen_choi_positive_not_cp(a, b, c)
        obj["nondecomposable"] = catalog.gen_choi_nondecomposable(a, b, c)
    _emit(obj, args.out, argv)
    return 0


def _cmd_catalog_ssv(args, argv) -> int:
    eta = _parse_floats(args.eta, expected=3)
    cp, positive = catalog.fujiwara_algoet(eta)
    obj = {
        "eta": eta,
        "cp": cp,
        "positive": positive,
        "quaternion_params": [float(v) for v in catalog.quat_params_from_ssv(eta)],
    }
    _emit(obj, args.out, argv)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="covmap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="group inspection")
    group_sub = p_group.add_subparsers(dest="subcommand", required=True)
    p_info = group_sub.add_parser("info", help="order, class sizes, generators")
    p_info.add_argument("--group", required=True, help="s3 | s4 | q | mu:d,n")
    p_info.add_argument("--out")
    p_info.set_defaults(func=_cmd_group_info)

    p_irrep = sub.add_parser("irrep", help="irrep inspection")
    irrep_sub = p_irrep.add_subparsers(dest="subcommand", required=True)
    p_verify = irrep_sub.add_parser("verify", help="homomorphism/unitarity/irreducibility report")
    p_verify.add_argument("--group", required=True)
    p_verify.add_argument("--irrep", default="std")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=_cmd_irrep_verify)
    p_show = irrep_sub.add_parser("show", help="print one irrep matrix")
    p_show.add_argument("--group", required=True)
    p_show.add_argument("--element", required=True, help='element label, e.g. "(23)"')
    p_show.add_argument("--irrep", default="std")
    p_show.add_argument("--out")
    p_show.set_defaults(func=_cmd_irrep_show)

    p_map = sub.add_parser("map", help="covariant-map construction")
    map_sub = p_map.add_subparsers(dest="subcommand", required=True)
    p_build = map_sub.add_parser("build", help="map and Choi matrices as JSON")
    _add_family_args(p_build)
    p_build.add_argument("--out")
    p_build.set_defaults(func=_cmd_map_build)

    p_classify = sub.add_parser("classify", help="full positivity classification")
    _add_family_args(p_classify)
    p_classify.add_argument("--seed", type=int, required=True)
    p_classify.add_argument("--restarts", type=int, default=positivity.DEFAULT_RESTARTS)
    p_classify.add_argument("--iters", type=int, default=positivity.DEFAULT_ITERS)
    p_classify.add_argument("--tol-psd", type=float, default=positivity.PSD_RTOL)
    p_classify.add_argument("--tol-eq", type=float, default=positivity.EQ_TOL)
    p_classify.add_argument("--out")
    p_classify.set_defaults(func=_cmd_classify)

    p_scan = sub.add_parser("scan", help="grid scan to CSV")
    p_scan.add_argument("--group", required=True, help="s3 | q | s4 | mu")
    p_scan.add_argument("--d", type=int)
    p_scan.add_argument("--range", help="comma list of name=start:stop:step")
    p_scan.add_argument("--alpha", help="start:stop:step (mu only)")
    p_scan.add_argument("--beta", help="start:stop:step (mu only)")
    p_scan.add_argument("--seed", type=int, required=True)
    p_scan.add_argument("--out", required=True)
    p_scan.add_argument("--jobs", type=int, default=None, help="default COVMAP_JOBS or 1")
    p_scan.add_argument("--restarts", type=int, default=positivity.DEFAULT_RESTARTS)
    p_scan.add_argument("--iters", type=int, default=positivity.DEFAULT_ITERS)
    p_scan.set_defaults(func=_cmd_scan)

    p_cat = sub.add_parser("catalog", help="named-family closed forms")
    cat_sub = p_cat.add_subparsers(dest="subcommand", required=True)
    p_mu = cat_sub.add_parser("mu", help="monomial-family report")
    p_mu.add_argument("--d", type=int, required=True)
    p_mu.add_argument("--alpha", type=float, required=True)
    p_mu.add_argument("--beta", type=float, required=True)
    p_mu.add_argument("--full-report", action="store_true")
    p_mu.add_argument("--seed", type=int, default=None)
    p_mu.add_argument("--out")
    p_mu.set_defaults(func=_cmd_catalog_mu)
    p_qd = cat_sub.add_parser("quat-decompose", help="CP + CP-after-T split")
    p_qd.add_argument("--l", required=True, help="id,sign_i,sign_j,sign_k")
    p_qd.add_argument("--out")
    p_qd.set_defaults(func=_cmd_catalog_quat_decompose)
    p_cc = cat_sub.add_parser("choi-compare", help="three-parameter family correspondence")
    p_cc.add_argument("--alpha", type=float, required=True)
    p_cc.add_argument("--beta", type=float, required=True)
    p_cc.add_argument("--out")
    p_cc.set_defaults(func=_cmd_catalog_choi_compare)
    p_ssv = cat_sub.add_parser("ssv", help="unital qubit channel conditions")
    p_ssv.add_argument("--eta", required=True, help="eta1,eta2,eta3")
    p_ssv.add_argument("--out")
    p_ssv.set_defaults(func=_cmd_catalog_ssv)

    return parser


def _add_family_args(p) -> None:
    p.add_argument("--group", required=True, help="s3 | q | s4 | mu")
    p.add_argument("--d", type=int, help="dimension (mu only)")
    p.add_argument("--l", help="comma list in the family's canonical order, leading l_id")
    p.add_argument("--alpha", type=float, help="mu only")
    p.add_argument("--beta", type=float, help="mu only")


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, list(argv))
    except ValidationError as exc:
        print(f"covmap: validation error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"covmap: validation error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"covmap: i/o error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    raise SystemExit(run(sys.argv[1:]))
