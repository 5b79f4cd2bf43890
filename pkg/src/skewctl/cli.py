"""Command-line front end.

Each invocation runs one subcommand and writes a single JSON report to
stdout (diagnostics go to stderr).  Reports echo the resolved tolerances,
seed, and start counts, and identical argv produces byte-identical output.
Exit codes: 0 success, 1 verification failure, 2 usage error.

Tolerances may be overridden through the environment variables
SKEWCTL_RANK_TOL, SKEWCTL_RESIDUAL_TOL, and SKEWCTL_DEDUPE_RADIUS.
"""

from __future__ import annotations

import argparse
import sys

from . import schubert
from .errors import NoConvergence, SkewctlError
from .feedback import (
    FeedbackProblem,
    GenericParams,
    closed_loop_charpoly,
    generic_system,
    place_poles,
    verify_structure,
)
from .matcore import ToleranceConfig
from .purbhoo import purbhoo_transfer, reality_experiment
from .serialize import (
    dumps,
    feedback_from_doc,
    load_path,
    realization_from_doc,
    realization_to_doc,
    solution_set_to_doc,
    poly_to_doc,
)
from .sysreal import (
    SymmetryType,
    classify_realization,
    classify_transfer,
    is_minimal,
    moduli_dimension,
    symmetrize,
)

DEFAULT_SEED = 2061


def _parse_complex(text: str) -> complex:
    """Accept '2', '-1.5', '2+3i', '1i', with i or j marking the unit."""
    cleaned = text.strip().replace(" ", "").replace("i", "j")
    if cleaned in ("j", "+j"):
        cleaned = "1j"
    if cleaned == "-j":
        cleaned = "-1j"
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad complex number {text!r}") from exc


def _parse_complex_list(text: str) -> tuple[complex, ...]:
    return tuple(_parse_complex(part) for part in text.split(",") if part.strip())


def _symmetry(label: str) -> SymmetryType:
    try:
        return SymmetryType.parse(label)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _load_realization(path: str):
    doc = load_path(path)
    if "A" not in doc and isinstance(doc.get("realization"), dict):
        doc = doc["realization"]  # reports embed the system document
    return realization_from_doc(doc)


def _config_doc(tol: ToleranceConfig, **extra) -> dict:
    doc = {
        "rank_tol": tol.rank_tol,
        "residual_tol": tol.residual_tol,
        "dedupe_radius": tol.dedupe_radius,
    }
    doc.update(extra)
    return doc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewctl",
        description="Linear systems with matrix symmetries: classification, "
        "symmetrization, and skew-symmetric pole placement.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="symmetry types of a system")
    p.add_argument("--system", required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("symmetrize", help="structured realization synthesis")
    p.add_argument("--system", required=True)
    p.add_argument("--type", required=True, type=_symmetry)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("dimension", help="moduli dimension of a symmetry class")
    p.add_argument("--type", required=True, type=_symmetry)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)

    p = sub.add_parser("generic", help="generic pole-assignable witness system")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--variant", required=True, type=_symmetry)
    p.add_argument("--alphas", required=True, type=_parse_complex_list)
    p.add_argument("--betas", required=True, type=_parse_complex_list)

    p = sub.add_parser("place-poles", help="skew-symmetric pole placement")
    p.add_argument("--system", required=True)
    p.add_argument("--poles", required=True, type=_parse_complex_list)
    p.add_argument("--variant", type=_symmetry, default=None,
                   help="defaults to the system's symmetry tag")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--starts", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("dm", help="count of feedback laws in the square case")
    p.add_argument("-m", type=int, required=True)

    p = sub.add_parser("purbhoo", help="the all-real-feedback curve system")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--poles", type=_parse_complex_list, default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--starts", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("verify", help="closed-loop identity checks")
    p.add_argument("--system", required=True)
    p.add_argument("--feedback", required=True)
    p.add_argument("--checks", default="geometry,square,structure")
    p.add_argument("--samples", type=_parse_complex_list,
                   default=(0.9 + 1.1j, -1.7 + 0.4j, 2.3 - 0.8j, -0.6 - 1.9j))
    return parser


def _cmd_classify(args, tol) -> tuple[dict, int]:
    r = _load_realization(args.system)
    real_types = sorted(t.value for t in classify_realization(r, tol))
    transfer_types = sorted(
        t.value for t in classify_transfer(r, seed=args.seed, tol=tol)
    )
    doc = {
        "config": _config_doc(tol, seed=args.seed),
        "realization_symmetries": real_types,
        "transfer_symmetries": transfer_types,
        "n": r.n,
        "m": r.m,
        "minimal": bool(is_minimal(r, tol)),
    }
    return doc, 0


def _cmd_symmetrize(args, tol) -> tuple[dict, int]:
    r = _load_realization(args.system)
    out = symmetrize(r, args.type, tol, seed=args.seed)
    doc = {
        "config": _config_doc(tol, seed=args.seed, target=args.type.value),
        "realization": realization_to_doc(out),
        "verified": True,
    }
    return doc, 0


def _cmd_dimension(args, tol) -> tuple[dict, int]:
    value = moduli_dimension(args.type, args.m, args.n)
    return {
        "type": args.type.value,
        "m": args.m,
        "n": args.n,
        "dimension": value,
    }, 0


def _cmd_generic(args, tol) -> tuple[dict, int]:
    r = generic_system(args.m, args.n, args.variant,
                       GenericParams(args.alphas, args.betas))
    return {
        "config": _config_doc(tol),
        "realization": realization_to_doc(r),
    }, 0


def _resolve_variant(r, explicit) -> SymmetryType:
    if explicit is not None:
        return explicit
    if r.symmetry is not None:
        return r.symmetry
    raise SkewctlError(
        "system document carries no symmetry tag; pass --variant"
    )


def _cmd_place_poles(args, tol) -> tuple[dict, int]:
    r = _load_realization(args.system)
    variant = _resolve_variant(r, args.variant)
    problem = FeedbackProblem(r, variant, args.poles)
    base = {
        "config": _config_doc(tol, seed=args.seed, threads=args.threads,
                              variant=variant.value),
        "poles": [[p.real, p.imag] for p in problem.target_poles],
    }
    try:
        sols = place_poles(problem, seed=args.seed, max_starts=args.starts,
                           tol=tol, threads=args.threads)
    except NoConvergence as exc:
        base["report"] = {"count": 0, "error": str(exc)}
        return base, 1
    charpolys = [closed_loop_charpoly(r, f) for f in sols.solutions]
    base["config"]["starts"] = sols.starts_used
    base["report"] = solution_set_to_doc(sols, charpolys)
    return base, 0


def _cmd_dm(args, tol) -> tuple[dict, int]:
    return {"m": args.m, "dm": schubert.dm(args.m)}, 0


def _cmd_purbhoo(args, tol) -> tuple[dict, int]:
    system = purbhoo_transfer(args.m, tol)
    doc = {
        "config": _config_doc(tol, seed=args.seed),
        "m": args.m,
        "mcmillan_degree": system.realization.n,
        "realization": realization_to_doc(system.realization),
        "verification": {
            "skew_symmetric_transfer": True,
            "real": True,
            "strictly_proper": True,
        },
    }
    if args.poles is not None:
        doc["expected_count"] = schubert.dm(args.m)
        try:
            sols = reality_experiment(args.m, args.poles, seed=args.seed,
                                      max_starts=args.starts, tol=tol,
                                      threads=args.threads)
        except NoConvergence as exc:
            doc["report"] = {"count": 0, "error": str(exc)}
            return doc, 1
        charpolys = [closed_loop_charpoly(system.realization, f)
                     for f in sols.solutions]
        doc["report"] = solution_set_to_doc(sols, charpolys)
        doc["all_real"] = all(sols.is_real)
        if len(sols) != doc["expected_count"] or not doc["all_real"]:
            return doc, 1
    return doc, 0


def _infer_structure_variant(r, tol) -> SymmetryType:
    if r.symmetry is not None:
        return r.symmetry
    found = classify_realization(r, tol)
    for t in (SymmetryType.SKEW_SYMMETRIC, SymmetryType.SKEW_HAMILTONIAN):
        if t in found:
            return t
    raise SkewctlError("system is neither skew-symmetric nor skew-Hamiltonian")


def _cmd_verify(args, tol) -> tuple[dict, int]:
    r = _load_realization(args.system)
    f = feedback_from_doc(load_path(args.feedback))
    requested = [c.strip() for c in args.checks.split(",") if c.strip()]
    results = {}
    failed = False
    for check in requested:
        if check == "geometry":
            try:
                rep = schubert.geometry_identity_check(r, f, args.samples, tol)
                ok = rep.max_deviation <= tol.residual_tol
                results[check] = {"passed": ok, "max_deviation": rep.max_deviation}
            except SkewctlError as exc:
                results[check] = {"passed": False, "error": str(exc)}
        elif check in ("square", "structure"):
            try:
                variant = _infer_structure_variant(r, tol)
                rep = verify_structure(r, f, variant, tol)
                entry = {
                    "passed": True,
                    "closed_loop_defect": rep.closed_loop_defect,
                }
                if rep.sqrt_residual is not None:
                    entry["sqrt_residual"] = rep.sqrt_residual
                if rep.parity_defect is not None:
                    entry["parity_defect"] = rep.parity_defect
                entry["charpoly"] = poly_to_doc(rep.charpoly)
                results[check] = entry
            except SkewctlError as exc:
                results[check] = {"passed": False, "error": str(exc)}
        else:
            raise SkewctlError(f"unknown check: {check}")
        if not results[check].get("passed", False):
            failed = True
    doc = {
        "config": _config_doc(tol, checks=requested),
        "results": results,
    }
    return doc, 1 if failed else 0


_HANDLERS = {
    "classify": _cmd_classify,
    "symmetrize": _cmd_symmetrize,
    "dimension": _cmd_dimension,
    "generic": _cmd_generic,
    "place-poles": _cmd_place_poles,
    "dm": _cmd_dm,
    "purbhoo": _cmd_purbhoo,
    "verify": _cmd_verify,
}


_LIST_FLAGS = ("--poles", "--alphas", "--betas", "--samples")


def _merge_list_flags(argv: list[str]) -> list[str]:
    """Join '--poles -1,-2' into '--poles=-1,-2' so argparse does not
    mistake a leading negative number for an option."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _LIST_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_list_flags(list(argv)))
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    tol = ToleranceConfig.from_env()
    try:
        doc, code = _HANDLERS[args.command](args, tol)
    except (SkewctlError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc!r}" if isinstance(exc, KeyError) else f"error: {exc}",
              file=sys.stderr)
        return 2
    print(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
