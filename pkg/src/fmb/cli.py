"""Command-line front end: fmb <subcommand> ...

Exit codes: 0 success, 1 negative answer, 2 usage or input error,
3 budget exhausted.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .algebra import radical_filtration
from .catalog import build_group, catalog_names
from .certificate import cert_read, cert_text, make_certificate
from .errors import BudgetExhausted, FMBError, NoCubeRoot, RepairFailed
from .field import field_make, parse_field
from .identities import identity_suite
from .jennings import jennings_crosscheck, jennings_profile
from .obstruction import DEFAULT_BUDGET, budget_from_env, minimal_certifying_m, obstruct
from .pgroup import group_from_spec, spec_from_text
from .search import SearchConfig, dfs_search
from .verify import verify_fm_basis

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3

_SIZED = ("C", "D", "Q", "SD", "MD")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _label(name: str, n=None, m=None, p=None) -> str:
    """Catalog label from a family name and optional parameters."""
    if n is not None and m is not None:
        return f"{name}({n},{m})"
    if p is not None and name.replace("_", "").upper() in ("H1", "H2"):
        return f"{name}({p})"
    if n is not None:
        if name.upper() == "C":
            return f"C{n}"
        if name.upper() in _SIZED:
            return f"{name.upper()}{2 ** n}"
        return f"{name}({n})"
    return name


def _group(args):
    if getattr(args, "group_file", None):
        with open(args.group_file) as fh:
            lines = fh.read().splitlines()
        name = os.path.splitext(os.path.basename(args.group_file))[0]
        return group_from_spec(spec_from_text(lines, name))
    if not args.group:
        raise _UsageError("give a group label or --group-file")
    return build_group(_label(args.group, args.n, args.m, args.p))


def _field(args, g):
    if args.field:
        f = parse_field(args.field)
    else:
        f = field_make(g.p)
    if g.p is not None and f.p != g.p:
        raise _UsageError(f"{g.name} is a {g.p}-group but the field has characteristic {f.p}")
    return f


def _budget(args) -> int:
    return args.budget if args.budget is not None else budget_from_env(DEFAULT_BUDGET)


def _emit_cert(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
        print(f"certificate written to {path}")
    else:
        sys.stdout.write(text)


# -- subcommands ----------------------------------------------------------------


def cmd_catalog(args) -> int:
    for name in catalog_names():
        g = build_group(name)
        print(f"{name:<16} order {g.order:>4}  p={g.p}  gens {','.join(g.spec.pcgens)}")
    return OK


def cmd_dims(args) -> int:
    g = _group(args)
    f = _field(args, g)
    filt = radical_filtration(g, f)
    prof = jennings_profile(g, f.p, filt)
    print(f"group {g.name} (order {g.order}) over {f}")
    print("Lazard-Jennings layer ranks d_i: " + ", ".join(f"d_{i}={d}" for i, d in sorted(prof.dims.items())))
    for t in range(1, filt.s + 1):
        print(f"  dim A^{t}/A^{t + 1} = {filt.dims[t]}")
    rep = jennings_crosscheck(g, f, filt)
    print(f"crosscheck: {'PASS' if rep.passed else 'FAIL'}")
    return OK if rep.passed else NEGATIVE


def cmd_profile(args) -> int:
    g = _group(args)
    f = _field(args, g)
    filt = radical_filtration(g, f)
    prof = jennings_profile(g, f.p, filt)
    print(f"group {g.name} (order {g.order}), p={prof.p}")
    for i, reps in prof.layers:
        print(f"  M_{i}/M_{i + 1}: {len(reps)} representatives, weight {i}: {', '.join(g.label(u) for u in reps)}")
    print(f"Poincare series of the graded algebra: {prof.poincare()}")
    print(f"Loewy length {filt.s + 1}")
    for line in jennings_crosscheck(g, f, filt).lines()[1:]:
        print(line)
    return OK


def cmd_construct(args) -> int:
    from .constructions import construct

    label = _label(args.family, args.n, args.m, args.p)
    g = build_group(label)
    f = _field(args, g)
    try:
        cand = construct(label, f, _budget(args))
    except (RepairFailed, NoCubeRoot) as e:
        print(f"no verified construction: {e}", file=sys.stderr)
        return NEGATIVE
    rep = verify_fm_basis(g, f, radical_filtration(g, f), cand)
    for line in rep.lines():
        print(line, file=sys.stderr)
    if not rep.is_basis:
        print(f"construction for {g.name} over {f} did not verify", file=sys.stderr)
        return NEGATIVE
    _emit_cert(cert_text(make_certificate(g, f, cand)), args.out)
    return OK


def cmd_verify(args) -> int:
    cert = cert_read(args.certificate)
    g = cert.group()
    if g.order != cert.order:
        print(f"certificate order {cert.order} but group {g.name} has order {g.order}", file=sys.stderr)
        return USAGE
    f = cert.field
    rep = verify_fm_basis(g, f, radical_filtration(g, f), cert.candidate())
    print(f"group {g.name} over {f}, {cert.order} elements")
    for line in rep.lines():
        print(line)
    return OK if rep.is_basis else NEGATIVE


def cmd_search(args) -> int:
    g = _group(args)
    f = _field(args, g)
    cfg = SearchConfig(max_nodes=_budget(args), correction_depth=None if args.exhaustive else 2, jobs=args.jobs)
    res = dfs_search(g, f, config=cfg)
    scope = "restricted corrections" if res.restricted else "all corrections"
    print(f"{g.name} over {f}: {res.status} after {res.nodes} nodes ({scope})", file=sys.stderr)
    if not res.found:
        return NEGATIVE
    _emit_cert(cert_text(make_certificate(g, f, res.basis)), args.out)
    return OK


def cmd_obstruct(args) -> int:
    g = _group(args)
    f = _field(args, g)
    budget = _budget(args)
    if args.trunc is None:
        m, reports = minimal_certifying_m(g, f, budget=budget, jobs=args.jobs, full_report=not args.stop_at_survivor)
        rep = reports[-1]
    else:
        rep = obstruct(g, f, args.trunc, budget, jobs=args.jobs, full_report=not args.stop_at_survivor)
    print(rep.summary())
    for v in rep.survivors:
        print(f"  surviving T[{v.index}] {v.row_text()}")
        for e in v.equalities:
            print(f"    forced: {e}")
    if args.report:
        rep.write(args.report)
        print(f"report written to {args.report}")
    if rep.status == "BudgetExhausted":
        return BUDGET
    return OK if rep.certified else NEGATIVE


def _selftest_targets():
    for name in catalog_names():
        g = build_group(name)
        yield g, field_make(g.p)
        if name.upper().startswith("Q8") or name in ("G_26", "G_47"):
            yield g, field_make(2, 2)


def cmd_selftest(args) -> int:
    t0 = time.time()
    bad = 0
    for g, f in _selftest_targets():
        filt = radical_filtration(g, f)
        cc = jennings_crosscheck(g, f, filt)
        ids = identity_suite(g, f, filt, samples=args.samples)
        ok = cc.passed and ids.passed
        bad += not ok
        print(f"{'ok  ' if ok else 'FAIL'} {g.name:<16} {str(f):<8} dims {filt.dims[1:]}  "
              f"jennings {'ok' if cc.passed else 'FAIL'}; {ids.line()}")
    print(f"selftest: {'PASS' if not bad else f'{bad} FAILURES'} in {time.time() - t0:.1f}s")
    return OK if not bad else NEGATIVE


# -- parser ---------------------------------------------------------------------


def _group_args(sp, positional: str = "group") -> None:
    sp.add_argument(positional, nargs="?", help="catalog label, e.g. D8, 'Q8 x C2', G_23, H_2")
    sp.add_argument("--group-file", help="group presentation file (gen/comm lines)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--p", type=int)
    sp.add_argument("--field", help="e.g. p=2, 'p=2 k=2', GF(4)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fmb", description="Filtered multiplicative bases of modular group algebras.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("catalog", help="list catalog groups")

    sp = sub.add_parser("dims", help="layer dimensions and the Jennings crosscheck")
    _group_args(sp)

    sp = sub.add_parser("profile", help="Lazard-Jennings series and representatives")
    _group_args(sp)

    sp = sub.add_parser("construct", help="build, verify and certify a basis")
    sp.add_argument("family")
    for opt in ("--n", "--m", "--p"):
        sp.add_argument(opt, type=int)
    sp.add_argument("--field")
    sp.add_argument("--budget", type=int)
    sp.add_argument("-o", "--out", help="certificate path (default: stdout)")

    sp = sub.add_parser("verify", help="check a certificate")
    sp.add_argument("certificate")

    sp = sub.add_parser("search", help="depth-first search for a basis")
    _group_args(sp)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--exhaustive", action="store_true", help="enumerate corrections at every grade")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("-o", "--out", help="certificate path (default: stdout)")

    sp = sub.add_parser("obstruct", help="certify that no basis exists")
    _group_args(sp)
    sp.add_argument("--trunc", type=int, help="truncation m (default: smallest of 3, 4, 5 that certifies)")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--report", help="write the per-matrix report here")
    sp.add_argument("--stop-at-survivor", action="store_true",
                    help="stop at the first surviving leading matrix (the answer is then Inconclusive)")
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("selftest", help="Jennings crosscheck and commutator identities over the catalog")
    sp.add_argument("--samples", type=int, default=3)
    return ap


_COMMANDS = {
    "catalog": cmd_catalog, "dims": cmd_dims, "profile": cmd_profile, "construct": cmd_construct,
    "verify": cmd_verify, "search": cmd_search, "obstruct": cmd_obstruct, "selftest": cmd_selftest,
}


def run_cli(argv) -> int:
    try:
        args = build_parser().parse_args(list(argv))
        return _COMMANDS[args.command](args)
    except _UsageError as e:
        print(f"fmb: usage error: {e}", file=sys.stderr)
        return USAGE
    except BudgetExhausted as e:
        print(f"fmb: budget exhausted: {e}", file=sys.stderr)
        return BUDGET
    except (FMBError, ValueError, OSError, KeyError) as e:
        print(f"fmb: error: {e}", file=sys.stderr)
        return USAGE


def main(argv=None) -> int:
    return run_cli(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
