"""Command line interface: exact counts, certified inequality checks,
and primitive-set constructions over F_q[x].

Exit codes: 0 success or inequality verified, 2 verification failure
(a counterexample is reported), 1 usage, budget, or precision errors.
Certified quantities are printed as exact strings or {lo, hi} decimal
brackets; bare floats appear only in fields labelled *_float.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .brackets import DEFAULT_PRECISION_BITS, fraction_to_decimal
from .constructions import (GrowthFunction, besicovitch_construct,
                            build_t_sequence, mp_construct, mp_diagnostics)
from .counting import (build_count_table, evaluate_G, mertens_product,
                       norton_check, verify_hr_bound, verify_recurrence_bound)
from .errors import (BudgetError, PrecisionError, UsageError,
                     VerificationError)
from .fieldpoly import DEFAULT_SIEVE_ENTRIES, format_poly
from .irreducibles import (check_degree_brackets, kth_irreducible,
                           pi_cumulative, pi_prime)
from .primitive import (density_profile, erdos_sum, erdos_sum_irreducibles,
                        is_primitive, random_primitive_set, read_set,
                        verify_erdos_density_inequality, write_set)

# ----------------------------------------------------------------------
# Run configuration and plumbing
# ----------------------------------------------------------------------

DEFAULT_TABLE_BYTES = 2**31


@dataclass
class RunConfig:
    """Resolved global options for one invocation."""

    q: int = 2
    precision_bits: int = DEFAULT_PRECISION_BITS
    fmt: str = "csv"
    out: str | None = None
    sieve_entries: int = DEFAULT_SIEVE_ENTRIES
    table_bytes: int = DEFAULT_TABLE_BYTES
    seconds: float | None = None
    seed: int | None = None
    manifest: str | None = None
    _t0: float = field(default_factory=time.monotonic, repr=False)

    def checkpoint(self, stage: str) -> None:
        """Soft wall-clock cap: abort between stages rather than emit
        silently truncated results."""
        if self.seconds is not None and time.monotonic() - self._t0 > self.seconds:
            raise BudgetError(
                f"soft time budget of {self.seconds}s exceeded after {stage}; "
                "partial results dropped as incomplete")


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        q=getattr(args, "q", 2),
        precision_bits=getattr(args, "precision_bits", DEFAULT_PRECISION_BITS),
        fmt=getattr(args, "fmt", "csv"),
        out=getattr(args, "out", None),
        sieve_entries=getattr(args, "budget_sieve_entries", DEFAULT_SIEVE_ENTRIES),
        table_bytes=getattr(args, "budget_table_bytes", DEFAULT_TABLE_BYTES),
        seconds=getattr(args, "budget_seconds", None),
        seed=getattr(args, "seed", None),
        manifest=getattr(args, "manifest", None),
    )
    if cfg.precision_bits < 16:
        raise UsageError("--precision-bits must be at least 16")
    if cfg.sieve_entries <= 0 or cfg.table_bytes <= 0:
        raise UsageError("budgets must be positive")
    if cfg.seconds is not None and cfg.seconds <= 0:
        raise UsageError("--budget-seconds must be positive")
    return cfg


def _dump_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _write_out(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit(cfg: RunConfig, header, rows, payload) -> None:
    """Tabular output honoring --format; the JSON payload mirrors the rows."""
    if cfg.fmt == "json":
        _write_out(cfg, _dump_json(payload))
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_out(cfg, buf.getvalue())


def _decimal_pair(fr: Fraction, digits: int = 36) -> dict:
    return {"exact": f"{fr.numerator}/{fr.denominator}",
            "lo": fraction_to_decimal(fr, digits, "floor"),
            "hi": fraction_to_decimal(fr, digits, "ceil")}


def _read_set_file(path: str):
    try:
        with open(path) as fh:
            return read_set(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc}") from None


_COMMON_DESTS = frozenset({
    "q", "out", "fmt", "precision_bits", "budget_sieve_entries",
    "budget_table_bytes", "budget_seconds", "seed", "manifest",
    "func", "command",
})


def _jsonable(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    return str(v)


def _write_manifest(cfg: RunConfig, args: argparse.Namespace,
                    argv: list[str]) -> None:
    """Record enough to replay the run byte for byte (no timestamps)."""
    if not cfg.manifest:
        return
    params = {k: _jsonable(v) for k, v in sorted(vars(args).items())
              if k not in _COMMON_DESTS}
    payload = {
        "tool": "primfield",
        "version": __version__,
        "command": list(getattr(args, "command", ())),
        "q": cfg.q,
        "precision_bits": cfg.precision_bits,
        "format": cfg.fmt,
        "seed": cfg.seed,
        "budgets": {"sieve_entries": cfg.sieve_entries,
                    "table_bytes": cfg.table_bytes,
                    "seconds": cfg.seconds},
        "params": params,
        "argv": list(argv),
    }
    with open(cfg.manifest, "w") as fh:
        fh.write(_dump_json(payload))


# ----------------------------------------------------------------------
# Subcommand handlers (return the process exit code)
# ----------------------------------------------------------------------

def cmd_irr_count(cfg: RunConfig, args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    rows = [(n, pi_prime(cfg.q, n), pi_cumulative(cfg.q, n))
            for n in range(1, args.max_n + 1)]
    payload = {"q": cfg.q,
               "rows": [{"n": n, "irreducible": a, "cumulative": c}
                        for n, a, c in rows]}
    _emit(cfg, ["n", "irreducible", "cumulative"], rows, payload)
    return 0


def cmd_irr_kth(cfg: RunConfig, args) -> int:
    f = kth_irreducible(cfg.q, args.k, max_entries=cfg.sieve_entries)
    text = format_poly(f)
    payload = {"q": cfg.q, "k": args.k, "degree": f.degree,
               "index": f.index, "poly": text}
    _emit(cfg, ["k", "degree", "index", "poly"],
          [(args.k, f.degree, f.index, text)], payload)
    return 0


def cmd_irr_brackets(cfg: RunConfig, args) -> int:
    report = check_degree_brackets(cfg.q, args.k_lo, args.k_hi, args.slack)
    _write_out(cfg, _dump_json(report.to_json()))
    if not report.ok:
        print("degree bracket violated; see report", file=sys.stderr)
        return 2
    return 0


def _parse_excludes(text: str | None) -> dict[int, int] | None:
    if not text:
        return None
    out: dict[int, int] = {}
    for part in text.split(","):
        try:
            d, c = part.split(":")
            out[int(d)] = out.get(int(d), 0) + int(c)
        except ValueError:
            raise UsageError(
                f"bad --exclude entry {part!r}, want degree:count") from None
    return out


def cmd_count_table(cfg: RunConfig, args) -> int:
    table = build_count_table(cfg.q, args.max_n,
                              excluded_degrees=_parse_excludes(args.exclude),
                              max_bytes=cfg.table_bytes)
    if cfg.fmt == "json":
        payload = {"q": table.q, "N": table.N,
                   "excluded_degrees": [list(p) for p in table.excluded_degrees],
                   "rows": [list(row) for row in table.rows]}
        _write_out(cfg, _dump_json(payload))
    else:
        buf = io.StringIO()
        table.write_csv(buf)
        _write_out(cfg, buf.getvalue())
    return 0


def cmd_verify_hr(cfg: RunConfig, args) -> int:
    report = verify_hr_bound(cfg.q, args.max_n,
                             precision_bits=cfg.precision_bits)
    _write_out(cfg, _dump_json(report.to_json()))
    if not report.ok:
        print("upper bound violated; see report", file=sys.stderr)
        return 2
    return 0


def cmd_verify_recurrence(cfg: RunConfig, args) -> int:
    report = verify_recurrence_bound(cfg.q, args.max_n)
    _write_out(cfg, _dump_json(report.to_json()))
    if not report.ok:
        print("recurrence bound violated; see report", file=sys.stderr)
        return 2
    return 0


def cmd_verify_norton(cfg: RunConfig, args) -> int:
    xs = args.x or [Fraction(5), Fraction(10), Fraction(20)]
    reports = [norton_check(x, args.alpha, args.beta,
                            precision_bits=cfg.precision_bits) for x in xs]
    ok = all(r.ok for r in reports)
    payload = {"alpha": str(args.alpha), "beta": str(args.beta),
               "checks": [r.to_json() for r in reports], "ok": ok}
    _write_out(cfg, _dump_json(payload))
    if not ok:
        bad = next(r for r in reports if not r.ok)
        print(f"tail bound fails at x={bad.x}; see report", file=sys.stderr)
        return 2
    return 0


def cmd_verify_erdos_density(cfg: RunConfig, args) -> int:
    ps = _read_set_file(args.infile)
    ok_prim, witness = is_primitive(ps, max_sieve_entries=cfg.sieve_entries)
    if not ok_prim:
        a, b = witness
        payload = {"primitive": False,
                   "counterexample": {"divisor": format_poly(a),
                                      "multiple": format_poly(b)}}
        _write_out(cfg, _dump_json(payload))
        print(f"input set is not primitive: {format_poly(a)} divides "
              f"{format_poly(b)}", file=sys.stderr)
        return 2
    report = verify_erdos_density_inequality(
        ps, max_sieve_entries=cfg.sieve_entries)
    payload = report.to_json()
    payload["primitive"] = True
    _write_out(cfg, _dump_json(payload))
    if not report.ok:
        print("weighted density bound violated; see report", file=sys.stderr)
        return 2
    return 0


def cmd_eval_g(cfg: RunConfig, args) -> int:
    zs = args.z or [Fraction(1)]
    rows, values = [], []
    for z in zs:
        b = evaluate_G(cfg.q, z, eps=args.eps,
                       precision_bits=cfg.precision_bits)
        d = b.to_json()
        rows.append((str(z), d["lo"], d["hi"]))
        values.append({"z": str(z), **d})
    payload = {"q": cfg.q, "eps": str(args.eps), "values": values}
    _emit(cfg, ["z", "lo", "hi"], rows, payload)
    return 0


def cmd_eval_mertens(cfg: RunConfig, args) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    rows, values = [], []
    for n in range(1, args.max_n + 1):
        mv = mertens_product(cfg.q, n, precision_bits=cfg.precision_bits)
        d = mv.normalized.to_json()
        rows.append((n, d["lo"], d["hi"]))
        values.append(mv.to_json())
    payload = {"q": cfg.q, "values": values}
    _emit(cfg, ["n", "normalized_lo", "normalized_hi"], rows, payload)
    return 0


def cmd_eval_erdos_irr(cfg: RunConfig, args) -> int:
    b = erdos_sum_irreducibles(cfg.q, eps=args.eps)
    d = b.to_json()
    payload = {"q": cfg.q, "eps": str(args.eps), **d,
               "width_float": float(b.width)}
    _emit(cfg, ["lo", "hi"], [(d["lo"], d["hi"])], payload)
    return 0


def cmd_set_check(cfg: RunConfig, args) -> int:
    ps = _read_set_file(args.infile)
    ok, witness = is_primitive(ps, method=args.method,
                               max_sieve_entries=cfg.sieve_entries)
    payload = {"q": ps.q, "horizon": ps.horizon, "size": len(ps),
               "primitive": ok, "counterexample": None}
    if not ok:
        a, b = witness
        payload["counterexample"] = {"divisor": format_poly(a),
                                     "multiple": format_poly(b)}
    _write_out(cfg, _dump_json(payload))
    if not ok:
        a, b = witness
        print(f"not primitive: {format_poly(a)} divides {format_poly(b)}",
              file=sys.stderr)
        return 2
    return 0


def cmd_set_erdos_sum(cfg: RunConfig, args) -> int:
    ps = _read_set_file(args.infile)
    value = erdos_sum(ps)
    d = _decimal_pair(value)
    payload = {"q": ps.q, "size": len(ps), "erdos_sum": d}
    _emit(cfg, ["exact", "lo", "hi"], [(d["exact"], d["lo"], d["hi"])], payload)
    return 0


def cmd_set_density(cfg: RunConfig, args) -> int:
    ps = _read_set_file(args.infile)
    profile = density_profile(ps)
    rows = [(r.n, r.count, r.monic_total,
             f"{r.ratio.numerator}/{r.ratio.denominator}",
             float(r.ratio)) for r in profile]
    payload = {"q": ps.q, "rows": [r.to_json() for r in profile]}
    _emit(cfg, ["n", "count", "monic_total", "ratio", "ratio_float"],
          rows, payload)
    return 0


def cmd_set_random(cfg: RunConfig, args) -> int:
    if cfg.seed is None:
        raise UsageError("set random generates data; pass --seed so the "
                         "run is reproducible")
    ps = random_primitive_set(cfg.q, args.horizon, cfg.seed,
                              per_degree=args.per_degree)
    buf = io.StringIO()
    write_set(ps, buf)
    _write_out(cfg, buf.getvalue())
    return 0


def cmd_construct_besicovitch(cfg: RunConfig, args) -> int:
    result = besicovitch_construct(cfg.q, args.eps, args.horizon,
                                   max_members=args.max_members,
                                   max_sieve_entries=cfg.sieve_entries)
    cfg.checkpoint("construction")
    report = result.to_json()
    if result.members is not None:
        ok_prim, witness = is_primitive(result.members,
                                        max_sieve_entries=cfg.sieve_entries)
        report["certified_primitive"] = ok_prim
        if witness is not None:
            report["counterexample"] = {
                "divisor": format_poly(witness[0]),
                "multiple": format_poly(witness[1])}
        if cfg.out:
            with open(cfg.out, "w") as fh:
                write_set(result.members, fh)
    else:
        ok_prim = False
    cfg.checkpoint("certification")
    sys.stdout.write(_dump_json(report))
    if not (result.ok and ok_prim):
        print("construction did not certify; see report", file=sys.stderr)
        return 2
    return 0


def cmd_construct_mp(cfg: RunConfig, args) -> int:
    growth = GrowthFunction.parse(args.L)
    tseq = build_t_sequence(cfg.q, growth, terms_budget=args.terms_budget,
                            materialize=args.materialize,
                            precision_bits=cfg.precision_bits,
                            max_sieve_entries=cfg.sieve_entries)
    cfg.checkpoint("t-sequence")
    result = mp_construct(cfg.q, tseq, args.horizon,
                          enum_horizon=args.enum_horizon,
                          max_sieve_entries=cfg.sieve_entries,
                          table_budget_bytes=cfg.table_bytes)
    cfg.checkpoint("construction")
    diag = mp_diagnostics(result)
    ok_prim, witness = is_primitive(result.members,
                                    max_sieve_entries=cfg.sieve_entries)
    cfg.checkpoint("certification")
    report = {
        "q": cfg.q,
        "horizon": result.horizon,
        "enum_horizon": result.enum_horizon,
        "t_sequence": {
            "growth": growth.format(),
            "K": tseq.K,
            "ranks_head": list(tseq.ranks[:args.materialize]),
            "degrees_head": list(tseq.degrees[:args.materialize]),
            "terms": [format_poly(t) for t in tseq.terms],
        },
        "k0": tseq.k0,
        "k_max": result.k_max,
        "partial_sum": _decimal_pair(tseq.suffix_sum),
        "tail_bound": _decimal_pair(tseq.tail_bound),
        "certificate_total": _decimal_pair(tseq.suffix_sum + tseq.tail_bound),
        "certified": tseq.certified,
        "S_prime_counts": [{"k": k + 1, "counts": list(row)}
                           for k, row in enumerate(result.counts)],
        "R_values": list(result.total_by_degree()),
        "erdos_partial": _decimal_pair(result.erdos_partial),
        "erdos_partial_from_k0": _decimal_pair(result.erdos_partial_from_k0),
        "sandwich_band": [r.to_json() for r in diag],
        "member_count": len(result.members),
        "cross_checked": result.cross_checked,
        "certified_primitive": ok_prim,
    }
    if witness is not None:
        report["counterexample"] = {"divisor": format_poly(witness[0]),
                                    "multiple": format_poly(witness[1])}
    if cfg.out:
        with open(cfg.out, "w") as fh:
            write_set(result.members, fh)
    text = _dump_json(report)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
        summary = (f"mp construction: {len(result.members)} members to degree "
                   f"{result.enum_horizon}, counts to degree {result.horizon}, "
                   f"certified={tseq.certified and ok_prim}\n")
        sys.stdout.write(summary)
    else:
        sys.stdout.write(text)
    if not (tseq.certified and result.cross_checked and ok_prim):
        print("construction did not certify; see report", file=sys.stderr)
        return 2
    return 0


def cmd_replay(cfg: RunConfig, args) -> int:
    try:
        with open(args.manifest_in) as fh:
            manifest = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read manifest: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"manifest is not valid JSON: {exc}") from None
    if manifest.get("tool") != "primfield":
        raise UsageError("not a primfield manifest")
    argv = manifest.get("argv")
    if not isinstance(argv, list) or not argv:
        raise UsageError("manifest does not record an argv to replay")
    argv = [str(a) for a in argv]
    if args.out:
        argv += ["--out", args.out]
    return _run(argv)


# ----------------------------------------------------------------------
# Parser assembly
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; keep 2 for verification failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _common_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--q", type=int, default=2, metavar="Q",
                   help="field size, a prime (default 2)")
    g.add_argument("--out", metavar="PATH",
                   help="write the primary output here instead of stdout")
    g.add_argument("--format", dest="fmt", choices=("csv", "json"),
                   default="csv",
                   help="tabular output format; reports are always JSON")
    g.add_argument("--precision-bits", type=int,
                   default=DEFAULT_PRECISION_BITS, metavar="B",
                   help="working precision for certified brackets")
    g.add_argument("--budget-sieve-entries", type=int,
                   default=DEFAULT_SIEVE_ENTRIES, metavar="N",
                   help="largest factor sieve the run may allocate")
    g.add_argument("--budget-table-bytes", type=int,
                   default=DEFAULT_TABLE_BYTES, metavar="N",
                   help="largest count table the run may allocate")
    g.add_argument("--budget-seconds", type=float, default=None, metavar="S",
                   help="soft wall-clock cap checked between stages")
    g.add_argument("--seed", type=int, default=None,
                   help="seed for randomized generators (required by them)")
    g.add_argument("--manifest", metavar="PATH",
                   help="record run parameters to this JSON file")
    return p


def build_parser() -> _Parser:
    common = _common_parent()
    root = _Parser(prog="primfield",
                   description="Exact counting and certified analysis of "
                               "primitive sets of monic polynomials over F_q[x].")
    root.add_argument("--version", action="version",
                      version=f"primfield {__version__}")
    subs = root.add_subparsers(dest="group", metavar="command", required=True)

    def leaf(group_subs, name, func, command, help_text):
        p = group_subs.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func, command=command)
        return p

    irr = subs.add_parser("irr", help="irreducible counts and ordering")
    irr_subs = irr.add_subparsers(dest="action", metavar="action",
                                  required=True)
    p = leaf(irr_subs, "count", cmd_irr_count, ("irr", "count"),
             "irreducible and cumulative counts by degree")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p = leaf(irr_subs, "kth", cmd_irr_kth, ("irr", "kth"),
             "k-th irreducible in the index ordering")
    p.add_argument("--k", type=int, required=True)
    p = leaf(irr_subs, "brackets", cmd_irr_brackets, ("irr", "brackets"),
             "two-sided degree brackets for the k-th irreducible")
    p.add_argument("--k-lo", type=int, required=True)
    p.add_argument("--k-hi", type=int, required=True)
    p.add_argument("--slack", type=float, default=0.5)

    cnt = subs.add_parser("count", help="exact squarefree count tables")
    cnt_subs = cnt.add_subparsers(dest="action", metavar="action",
                                  required=True)
    p = leaf(cnt_subs, "table", cmd_count_table, ("count", "table"),
             "table of counts by degree and factor count")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p.add_argument("--exclude", metavar="D:C[,D:C...]",
                   help="withhold C irreducibles of degree D from the supply")

    ver = subs.add_parser("verify", help="certified inequality checks")
    ver_subs = ver.add_subparsers(dest="action", metavar="action",
                                  required=True)
    p = leaf(ver_subs, "hr", cmd_verify_hr, ("verify", "hr"),
             "factor-count upper bound over a full table")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p = leaf(ver_subs, "recurrence", cmd_verify_recurrence,
             ("verify", "recurrence"),
             "supply-splitting recurrence bound over a full table")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p = leaf(ver_subs, "norton", cmd_verify_norton, ("verify", "norton"),
             "Poisson tail bounds at chosen parameters")
    p.add_argument("--x", type=_fraction, action="append", metavar="X",
                   help="Poisson mean; repeatable (default 5, 10, 20)")
    p.add_argument("--alpha", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--beta", type=_fraction, default=Fraction(3, 2))
    p = leaf(ver_subs, "erdos-density", cmd_verify_erdos_density,
             ("verify", "erdos-density"),
             "weighted density bound for a primitive set file")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")

    ev = subs.add_parser("eval", help="certified bracket evaluations")
    ev_subs = ev.add_subparsers(dest="action", metavar="action",
                                required=True)
    p = leaf(ev_subs, "g", cmd_eval_g, ("eval", "g"),
             "degree-weighted singular series G(z)")
    p.add_argument("--z", type=_fraction, action="append", metavar="Z",
                   help="evaluation point; repeatable (default 1)")
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 10**6))
    p = leaf(ev_subs, "mertens", cmd_eval_mertens, ("eval", "mertens"),
             "normalized truncated Mertens products")
    p.add_argument("--max-n", type=int, required=True, metavar="N")
    p = leaf(ev_subs, "erdos-irr", cmd_eval_erdos_irr, ("eval", "erdos-irr"),
             "Erdos sum over all irreducibles")
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 1000))

    st = subs.add_parser("set", help="operations on primitive set files")
    st_subs = st.add_subparsers(dest="action", metavar="action",
                                required=True)
    p = leaf(st_subs, "check", cmd_set_check, ("set", "check"),
             "decide primitivity, reporting a counterexample pair")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p.add_argument("--method", choices=("auto", "pairwise", "divisors"),
                   default="auto")
    p = leaf(st_subs, "erdos-sum", cmd_set_erdos_sum, ("set", "erdos-sum"),
             "exact Erdos sum of a set file")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p = leaf(st_subs, "density", cmd_set_density, ("set", "density"),
             "degree-by-degree density profile of a set file")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE")
    p = leaf(st_subs, "random", cmd_set_random, ("set", "random"),
             "seeded random primitive set (refuses without --seed)")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--per-degree", type=int, default=8)

    con = subs.add_parser("construct", help="primitive-set constructions")
    con_subs = con.add_subparsers(dest="action", metavar="action",
                                  required=True)
    p = leaf(con_subs, "besicovitch", cmd_construct_besicovitch,
             ("construct", "besicovitch"),
             "layered degree-slice set of positive density")
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--max-members", type=int, default=2**22)
    p = leaf(con_subs, "mp", cmd_construct_mp, ("construct", "mp"),
             "thinned-irreducible family with certificate and counts")
    p.add_argument("--L", required=True, metavar="SPEC",
                   help="growth law, e.g. 'log:eps=0.1' or 'iterlog:j=2,eps=2'")
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--enum-horizon", type=int, default=None,
                   help="materialize members up to this degree "
                        "(default min(horizon, 18))")
    p.add_argument("--terms-budget", type=int, default=2**17)
    p.add_argument("--materialize", type=int, default=64)
    p.add_argument("--report", metavar="FILE",
                   help="write the JSON report here (summary to stdout)")

    rp = subs.add_parser("replay", help="rerun a recorded manifest")
    rp.add_argument("--manifest", dest="manifest_in", required=True,
                    metavar="FILE")
    rp.add_argument("--out", default=None,
                    help="override the recorded output path")
    rp.set_defaults(func=cmd_replay, command=("replay",))

    return root


def _run(argv: list[str]) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config(args)
    if args.func is not cmd_replay:
        _write_manifest(cfg, args, argv)
    return args.func(cfg, args)


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        return _run(argv)
    except UsageError as exc:
        print(f"primfield: error: {exc}", file=sys.stderr)
        return 1
    except BudgetError as exc:
        print(f"primfield: budget exceeded: {exc}", file=sys.stderr)
        return 1
    except PrecisionError as exc:
        print(f"primfield: precision exhausted: {exc}", file=sys.stderr)
        return 1
    except VerificationError as exc:
        print(f"primfield: verification failed: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(_dump_json({"counterexample": _jsonable(exc.witness)}),
                  file=sys.stderr, end="")
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except BrokenPipeError:
        return 1


if __name__ == "__main__":
    sys.exit(main())
