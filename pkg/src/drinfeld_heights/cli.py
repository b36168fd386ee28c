"""Command-line front end.

    drinfeld-heights height --module run.cfg --beta 1/t --json

Every subcommand reads a ``key = value`` config file (``--module`` or
``--config``) and lets individual keys be overridden by flags or by
``--set key=value``.  Output is a plain table by default, or ``--json`` /
``--csv``.  Exit codes: 0 success, 1 usage or config error, 2 uncertified
result, 3 characterization mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra.factor import factor
from .algebra.places import Place, is_integral
from .algebra.ratfunc import RatFunc
from .config import load_config
from .drinfeld import normalize_integral, reduce
from .equidist import convergence_table, fixed_q_global_sum, full_support
from .errors import CharacterizationMismatch, ConfigError, DomainError
from .heights import NOT_TORSION, UNDECIDED, global_height, torsion_order
from .schinzel import residue_order, residue_order_bruteforce, schinzel_frontier
from .siegel import SiegelScan, check_scan_inputs, scan_siegel

EXIT_OK, EXIT_USAGE, EXIT_UNCERTIFIED, EXIT_MISMATCH = 0, 1, 2, 3

# flag name -> config key
KEY_FLAGS = {
    "p": "p", "e": "e", "modulus": "modulus", "coefficients": "module", "beta": "beta",
    "alpha": "alpha", "S": "S", "places": "places", "place": "place", "poly": "poly",
    "deg-max": "deg_max", "deg-min": "deg_min", "qdeg-max": "qdeg_max",
    "qdeg-min": "qdeg_min", "place-deg-max": "place_deg_max", "n-max": "n_max",
    "window": "window", "seed": "seed", "cap": "cap", "workers": "workers",
}


@dataclass
class Report:
    data: dict
    columns: list
    rows: list
    exit_code: int = EXIT_OK
    records: list = field(default_factory=list)   # JSON-lines output when non-empty


def _torsion_label(status):
    if status is NOT_TORSION:
        return "not torsion"
    if status is UNDECIDED:
        return "undecided"
    return str(status)


def _module_info(M):
    return {"q": M.q, "rank": M.rank, "phi_t": str(M.phi_t)}


# --- subcommands ----------------------------------------------------------------

def cmd_height(cfg):
    F = cfg.field()
    M = cfg.module(F)
    beta = cfg.ratfunc("beta", F)
    order = torsion_order(M, beta, cap=cfg.get_int("cap"), n_max=cfg.get_int("n_max"))
    h = global_height(M, beta, cfg.get_int("n_max"), cfg.get_int("window"))
    data = {"module": _module_info(M), "beta": str(beta), "torsion_order": _torsion_label(order)}
    data.update(h.to_dict())
    rows = [[lh.place.label(), str(lh.value), lh.certified, lh.escape_index, lh.n_used,
             lh.reason] for lh in h.locals]
    code = EXIT_OK if h.certified else EXIT_UNCERTIFIED
    return Report(data, ["place", "local_height", "certified", "escape_index", "steps",
                         "reason"], rows, code)


def cmd_torsion_order(cfg):
    F = cfg.field()
    M = cfg.module(F)
    beta = cfg.ratfunc("beta", F)
    order = torsion_order(M, beta, cap=cfg.get_int("cap"), n_max=cfg.get_int("n_max"))
    data = {"module": _module_info(M), "beta": str(beta), "torsion_order": _torsion_label(order)}
    code = EXIT_UNCERTIFIED if order is UNDECIDED else EXIT_OK
    return Report(data, ["beta", "torsion_order"], [[str(beta), _torsion_label(order)]], code)


def cmd_average(cfg):
    F = cfg.field()
    M = cfg.module(F)
    beta = cfg.ratfunc("beta", F)
    places = cfg.places("places", F) or full_support(M, beta)
    deg_max = cfg.get_int("deg_max")
    deg_min = cfg.get_int("deg_min") or 0
    status = torsion_order(M, beta, cap=cfg.get_int("cap"), n_max=cfg.get_int("n_max"))
    rows_ = convergence_table(M, beta, places, deg_max, deg_min, torsion=status)
    sums = {}
    for row in rows_:
        if row.Q not in sums:
            try:
                sums[row.Q] = str(fixed_q_global_sum(M, beta, row.Q))
            except DomainError:
                sums[row.Q] = None
    certified = all(r.certified for r in rows_)
    data = {
        "module": _module_info(M), "beta": str(beta), "torsion_order": _torsion_label(status),
        "places": [v.label() for v in places], "certified": certified,
        "rows": [dict(r.to_dict(), global_sum=sums[r.Q]) for r in rows_],
    }
    rows = [[str(r.Q), r.place.label(), str(r.average), str(r.target), str(r.gap),
             r.excluded, sums[r.Q]] for r in rows_]
    return Report(data, ["Q", "place", "average", "target", "gap", "excluded", "global_sum"],
                  rows, EXIT_OK if certified else EXIT_UNCERTIFIED)


def _siegel_chunk(args):
    M, beta, alpha, S, n = args
    return scan_siegel(M, beta, alpha, S, n, n, check_inputs=False)


def cmd_siegel(cfg, strict=False):
    F = cfg.field()
    M = cfg.module(F)
    beta = cfg.ratfunc("beta", F)
    alpha = cfg.ratfunc("alpha", F, default="0")
    S = cfg.places("S", F, default=[])
    deg_max = cfg.get_int("deg_max")
    deg_min = cfg.get_int("deg_min") or 1
    check_scan_inputs(M, beta, alpha)
    scan = SiegelScan(beta, alpha, tuple(sorted(set(S), key=Place.sort_key)), deg_max)
    parts = _pmap(_siegel_chunk, [(M, beta, alpha, S, n) for n in range(deg_min, deg_max + 1)],
                  cfg.get_int("workers"))
    for part in parts:
        scan.hits += part.hits
        scan.strict_hits += part.strict_hits
        scan.per_degree.update(part.per_degree)
        scan.reports += part.reports
    data = scan.to_dict()
    data["module"] = _module_info(M)
    data["hit_rule"] = "strict" if strict else "definition"
    hits = set(scan.strict_hits if strict else scan.hits)
    rows = []
    for r in scan.reports:
        rows.append([str(r.Q), str(r.point), r.Q in hits, r.is_S_integral, r.strict_is_S_integral,
                     "; ".join(f"{v.label()}: {c}" for v, c in r.violations)])
    return Report(data, ["Q", "phi_Q(beta)", "hit", "S_integral", "strict_S_integral",
                         "violations"], rows)


def _schinzel_chunk(args):
    M, beta, S, n, place_deg_max = args
    return schinzel_frontier(M, beta, S, n, place_deg_max, qdeg_min=n)


def _frontier(M, beta, S, qdeg_min, qdeg_max, place_deg_max, workers):
    parts = _pmap(_schinzel_chunk, [(M, beta, S, n, place_deg_max)
                                    for n in range(qdeg_min, qdeg_max + 1)], workers)
    rows, hits, pairs, worst = [], [], 0, -1
    for n, part in zip(range(qdeg_min, qdeg_max + 1), parts):
        rows += part.rows
        hits += part.hits
        pairs += part.pairs_checked
        if part.empirical_N:
            worst = n
    return rows, hits, pairs, worst + 1


def cmd_schinzel(cfg):
    F = cfg.field()
    M = cfg.module(F)
    beta = cfg.ratfunc("beta", F)
    S = cfg.places("S", F, default=[])
    qmin, qmax = cfg.get_int("qdeg_min"), cfg.get_int("qdeg_max")
    pmax = cfg.get_int("place_deg_max")
    workers = cfg.get_int("workers")
    status = torsion_order(M, beta, cap=cfg.get_int("cap"))
    if status is not NOT_TORSION:
        raise DomainError(f"beta = {beta} is not certified non-torsion ({_torsion_label(status)})")
    variants = [("raw", M, beta)]
    N, gamma = normalize_integral(M)
    if N is not M:
        variants.append(("normalized", N, beta / gamma))
    data = {"module": _module_info(M), "beta": str(beta), "S": [v.label() for v in S],
            "qdeg_max": qmax, "place_deg_max": pmax, "variants": {}}
    table, records = [], []
    for name, mod, point in variants:
        rows, hits, pairs, emp_n = _frontier(mod, point, S, qmin, qmax, pmax, workers)
        data["variants"][name] = {
            "phi_t": str(mod.phi_t), "beta": str(point), "empirical_N": emp_n,
            "pairs_checked": pairs, "mismatches": 0, "frontier": [r.to_dict() for r in rows],
        }
        for h in hits:
            records.append(dict(h.to_dict(), variant=name))
        for r in rows:
            table.append([name, str(r.Q), r.first_hit.place.label() if r.first_hit else None,
                          r.hit_count])
        records.append({"variant": name, "summary": True, "empirical_N": emp_n,
                        "pairs_checked": pairs, "mismatches": 0})
    if gamma != RatFunc.one(F):
        data["normalization_gamma"] = str(gamma)
    return Report(data, ["variant", "Q", "first_primitive_place", "hits"], table,
                  records=records)


def cmd_reduce(cfg):
    F = cfg.field()
    M = cfg.module(F)
    v = cfg.place("place", F)
    R = reduce(M, v)
    data = {"module": _module_info(M), "place": v.label(), "reduction": str(R),
            "residue_field_size": R.size}
    rows = [["reduction", str(R)], ["residue_field_size", R.size]]
    if cfg.has("beta"):
        beta = cfg.ratfunc("beta", F)
        if not is_integral(beta, v):
            raise DomainError(f"beta is not integral at {v}")
        x = R.residue(beta)
        order = residue_order(R, x)
        data["beta_residue"] = R.format_residue(x)
        data["beta_residue_order"] = str(order)
        rows += [["beta_residue", R.format_residue(x)], ["beta_residue_order", str(order)]]
        if R.l <= 3:
            check = residue_order_bruteforce(R, x)
            if check != order:
                raise CharacterizationMismatch(f"Krylov order {order} but brute force {check}")
    return Report(data, ["item", "value"], rows)


def cmd_factor(cfg):
    F = cfg.field()
    f = cfg.poly("poly", F)
    if f.is_zero():
        raise DomainError("cannot factor 0")
    fac = factor(f, seed=cfg.get_int("seed"))
    if fac.expand(F) != f:
        raise CharacterizationMismatch("factorization does not multiply back")
    data = {"poly": str(f), "lead": F.format_code(fac.lead), "factorization": str(fac),
            "factors": [{"prime": str(P), "multiplicity": m} for P, m in fac.factors]}
    rows = [[str(P), P.degree, m] for P, m in fac.factors]
    return Report(data, ["prime", "degree", "multiplicity"], rows)


COMMANDS = {
    "height": cmd_height,
    "torsion-order": cmd_torsion_order,
    "average": cmd_average,
    "siegel-scan": cmd_siegel,
    "schinzel-scan": cmd_schinzel,
    "reduce": cmd_reduce,
    "factor": cmd_factor,
}


# --- plumbing -------------------------------------------------------------------

def _pmap(fn, items, workers):
    """Ordered map, in a process pool when workers > 1."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _cell(x):
    return "" if x is None else str(x)


def render(report, fmt):
    if fmt == "json":
        if report.records:
            return "".join(json.dumps(r) + "\n" for r in report.records)
        return json.dumps(report.data, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for row in report.rows:
            w.writerow([_cell(x) for x in row])
        return buf.getvalue()
    cells = [report.columns] + [[_cell(x) for x in row] for row in report.rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(report.columns))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    head = []
    for key in ("value", "certified", "torsion_order", "empirical_N", "largest_hit_degree",
                "factorization"):
        if key in report.data:
            head.append(f"{key}: {report.data[key]}")
    for name, var in report.data.get("variants", {}).items():
        head.append(f"{name}: empirical_N = {var['empirical_N']}, "
                    f"pairs checked = {var['pairs_checked']}, mismatches = 0")
    return "\n".join(head + lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser():
    parser = _Parser(prog="drinfeld-heights",
                     description="Heights, S-integrality and primitive places for "
                                 "Drinfeld modules over F_q(t).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--module", "--config", dest="config", metavar="FILE",
                       help="key = value configuration file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a configuration key")
        for flag, key in KEY_FLAGS.items():
            p.add_argument(f"--{flag}", dest=f"key_{key}", metavar=key.upper())
        out = p.add_mutually_exclusive_group()
        out.add_argument("--json", action="store_const", const="json", dest="fmt")
        out.add_argument("--csv", action="store_const", const="csv", dest="fmt")
        if name == "siegel-scan":
            p.add_argument("--strict", action="store_true",
                           help="count hits with the strict finite-place variant")
    return parser


def run(argv=None):
    """Parse arguments and run; returns (exit code, stdout text)."""
    args = build_parser().parse_args(argv)
    overrides = []
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        overrides.append((k.strip(), v.strip()))
    for key in set(KEY_FLAGS.values()):
        value = getattr(args, f"key_{key}")
        if value is not None:
            overrides.append((key, value))
    cfg = load_config(args.config, overrides)
    if args.command == "siegel-scan":
        report = cmd_siegel(cfg, strict=args.strict)
    else:
        report = COMMANDS[args.command](cfg)
    return report.exit_code, render(report, args.fmt or "table")


def main(argv=None):
    try:
        code, text = run(argv)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CharacterizationMismatch as exc:
        print(f"internal mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
