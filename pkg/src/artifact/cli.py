"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .chi_data import assign_chi, verify_theorem
from .cyclo_arith import Rot
from .galois_comb import ASYM, TRIVIAL, ExtShape, enumerate_double_cosets
from .jump_data import JumpDatum, random_valid, validate
from .rectifier import TameChar, canonical_chain, full_rectifier, nu_rectifier
from .suites import SUITES, SweepConfig, parallel_map, run_suite, sweep_instances, worker_count
from .symp_modules import occupancy, t_mu, t_varpi

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def rot_json(r: Rot) -> dict:
    out = {"value": str(r)}
    if r.is_sign():
        out["sign"] = r.to_sign()
    return out


def tame_char_json(chi: TameChar) -> dict:
    return {"mu_mult": chi.mu_mult, "mu_order": chi.mu_order, "varpi_val": rot_json(chi.varpi_val)}


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _add_shape(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--p", type=int, required=required, help="residue characteristic")
    parser.add_argument("--m", type=int, default=1, help="q = p^m")
    parser.add_argument("--e", type=int, required=required, help="ramification index")
    parser.add_argument("--f", type=int, required=required, help="residue degree")
    parser.add_argument("--zeta", type=int, default=0, help="exponent of zeta_{E/F} in mu_E")
    parser.add_argument("--phi", type=int, default=0, help="index into the admissible Frobenius lifts")


def _add_format(parser: argparse.ArgumentParser, default: str = "json") -> None:
    parser.add_argument("--format", choices=("json", "csv"), default=default)


def _add_sweep(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p-values", type=_int_list, default=(2, 3, 5, 7), help="comma-separated primes")
    parser.add_argument("--m-values", type=_int_list, default=(1,))
    parser.add_argument("--e-max", type=int, default=12)
    parser.add_argument("--f-max", type=int, default=12)
    parser.add_argument("--seeds", type=int, default=500, help="number of seeded instances")
    parser.add_argument("--conjugate", action="store_true", help="use the conjugate Gauss-sum convention")
    parser.add_argument(
        "--all-phi", action="store_true", help="repeat every instance for each Frobenius lift"
    )
    parser.add_argument("--output", help="write the report here instead of stdout")


def shape_from(args) -> ExtShape:
    if args.p is None or args.e is None or args.f is None:
        raise UsageError("--p, --e and --f are required")
    try:
        return ExtShape(args.p, args.m, args.e, args.f, args.zeta, args.phi)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def sweep_config(args) -> SweepConfig:
    try:
        worker_count()
        return SweepConfig(
            p_values=args.p_values,
            m_values=args.m_values,
            e_max=args.e_max,
            f_max=args.f_max,
            seeds=args.seeds,
            conjugate=args.conjugate,
            all_phi=args.all_phi,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def jump_datum_from(args) -> JumpDatum:
    if args.jump_file:
        with open(args.jump_file, encoding="utf-8") as fh:
            text = fh.read()
        try:
            jd = JumpDatum.from_json(json.loads(text))
        except (ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"malformed jump file: {exc}") from exc
    else:
        jd = random_valid(shape_from(args), args.random)
    bad = validate(jd)
    if bad:
        raise UsageError("invalid jump datum: " + "; ".join(bad))
    return jd


def emit(args, payload: dict, rows: list[dict] | None = None, columns: list[str] | None = None) -> None:
    """Write JSON (the payload) or CSV (the rows) to --output or stdout."""
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows or []:
            writer.writerow(row)
        text = buf.getvalue()
    else:
        text = json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True) + "\n"
    target = getattr(args, "output", None)
    if target:
        with open(target, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


COSET_COLUMNS = ["k", "i", "kind", "t_min", "deg"]


def cmd_cosets(args) -> int:
    E = shape_from(args)
    rows = [
        {"k": dc.k, "i": dc.i, "kind": dc.kind, "t_min": dc.t_min, "deg": dc.deg_over_E}
        for dc in enumerate_double_cosets(E)
    ]
    emit(args, {"shape": _shape_json(E), "rows": rows}, rows, COSET_COLUMNS)
    return EXIT_OK


def _shape_json(E: ExtShape) -> dict:
    return {"p": E.p, "m": E.m, "e": E.e, "f": E.f, "zeta_EF_exp": E.zeta_EF_exp, "phi_choice": E.phi_choice}


def cmd_rectifier(args) -> int:
    jd = jump_datum_from(args)
    occ = occupancy(jd)
    layers = [
        {
            "kind": layer.kind,
            "j": layer.j,
            "degree": layer.degree,
            "nu": tame_char_json(nu_rectifier(layer, jd, occ)),
        }
        for layer in canonical_chain(jd.E)
    ]
    rect = full_rectifier(jd, occ)
    row = {"mu_mult": rect.mu_mult, "mu_order": rect.mu_order, "varpi_val": str(rect.varpi_val)}
    emit(
        args,
        {"jump_datum": jd.to_json(), "rectifier": tame_char_json(rect), "layers": layers},
        [row],
        ["mu_mult", "mu_order", "varpi_val"],
    )
    return EXIT_OK


CHI_COLUMNS = ["k", "i", "kind", "occupied", "mu", "varpi", "mu_Eg", "pair_varpi"]


def cmd_chi(args) -> int:
    jd = jump_datum_from(args)
    occ = occupancy(jd)
    rows = []
    for dc in enumerate_double_cosets(jd.E):
        if dc.kind == TRIVIAL:
            continue
        chi = assign_chi(dc, jd, occ)
        rows.append(
            {
                "k": dc.k,
                "i": dc.i,
                "kind": dc.kind,
                "occupied": occ[dc.key],
                "mu": str(chi.mu_E_part),
                "varpi": str(chi.varpi_val),
                "mu_Eg": str(chi.mu_Eg_part) if dc.kind == ASYM else "",
                "pair_varpi": str(chi.pair_varpi) if dc.kind == ASYM else "",
            }
        )
    report = verify_theorem(jd)
    emit(
        args,
        {
            "jump_datum": jd.to_json(),
            "cosets": rows,
            "product": tame_char_json(report.product),
            "rectifier": tame_char_json(report.full),
            "equal": report.ok,
        },
        rows,
        CHI_COLUMNS,
    )
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    cfg = sweep_config(args)
    result = run_suite(args.suite, cfg)
    rows = [{"check": c.name, "ok": c.ok, "detail": c.detail} for c in result.checks]
    payload = result.to_json()
    payload["config"] = _config_json(cfg)
    emit(args, payload, rows, ["check", "ok", "detail"])
    for c in result.checks:
        print(f"{'PASS' if c.ok else 'FAIL'} {c.name}", file=sys.stderr)
    return EXIT_OK if result.ok else EXIT_FAIL


def _config_json(cfg: SweepConfig) -> dict:
    return {
        "p_values": list(cfg.p_values),
        "m_values": list(cfg.m_values),
        "e_max": cfg.e_max,
        "f_max": cfg.f_max,
        "seeds": cfg.seeds,
        "conjugate": cfg.conjugate,
        "all_phi": cfg.all_phi,
    }


SWEEP_COLUMNS = [
    "instance", "p", "m", "e", "f", "zeta_EF_exp", "phi_choice",
    "k", "i", "kind", "t_min", "deg", "occupied",
    "t_mu_t0", "t_mu_t1", "t_varpi_t0", "t_varpi_t1",
    "chi_mu", "chi_varpi", "rect_mu_mult", "rect_mu_order", "rect_varpi",
]  # fmt: skip


def sweep_rows(seed: int, jd: JumpDatum) -> list[dict]:
    E = jd.E
    occ = occupancy(jd)
    rect = full_rectifier(jd, occ)
    rows = []
    for dc in enumerate_double_cosets(E):
        row = {
            "instance": seed, **_shape_json(E),
            "k": dc.k, "i": dc.i, "kind": dc.kind, "t_min": dc.t_min, "deg": dc.deg_over_E,
            "occupied": occ[dc.key],
            "rect_mu_mult": rect.mu_mult, "rect_mu_order": rect.mu_order, "rect_varpi": str(rect.varpi_val),
        }  # fmt: skip
        if dc.kind != TRIVIAL:
            tm, tv = t_mu(dc, occ[dc.key], E), t_varpi(dc, occ[dc.key], E)
            chi = assign_chi(dc, jd, occ)
            mu, varpi = (
                (chi.mu_Eg_part, chi.pair_varpi) if dc.kind == ASYM else (chi.mu_E_part, chi.varpi_val)
            )
            row.update(
                t_mu_t0=tm.t0, t_mu_t1=str(tm.t1), t_varpi_t0=tv.t0, t_varpi_t1=str(tv.t1),
                chi_mu=str(mu), chi_varpi=str(varpi),
            )  # fmt: skip
        else:
            row.update(
                {c: "" for c in ("t_mu_t0", "t_mu_t1", "t_varpi_t0", "t_varpi_t1", "chi_mu", "chi_varpi")}
            )
        rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    cfg = sweep_config(args)
    per_instance = parallel_map(lambda item: sweep_rows(*item), sweep_instances(cfg))
    rows = [r for block in per_instance for r in block]
    emit(args, {"config": _config_json(cfg), "columns": SWEEP_COLUMNS, "rows": rows}, rows, SWEEP_COLUMNS)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artifact", description="Invariants of tame extensions and checks of their identities."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cosets", help="list the double cosets of a shape")
    _add_shape(p)
    _add_format(p)
    p.set_defaults(func=cmd_cosets)

    for name, func, help_text in (
        ("rectifier", cmd_rectifier, "rectifier of a jump datum"),
        ("chi", cmd_chi, "per-coset chi-data and their product"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_shape(p, required=False)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--jump-file", help="jump datum JSON file")
        src.add_argument("--random", type=int, metavar="SEED", help="draw a valid jump datum for the shape")
        _add_format(p)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    _add_sweep(p)
    _add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="emit a per-coset invariant dataset")
    _add_sweep(p)
    _add_format(p, default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())
