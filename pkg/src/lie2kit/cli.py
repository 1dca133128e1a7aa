"""Command-line entry point.  Exit codes: 0 every check passed, 1 some check failed, 2 usage or input error."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .errors import DocumentError, Lie2Error
from .report import Report, timed

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _algebra(name: str):
    from .catalog import get

    try:
        return get(name)
    except KeyError:
        raise UsageError(f"unknown algebra {name!r}") from None


def _emit(reports: list[Report], fmt: str, out) -> int:
    if fmt == "json":
        payload = [r.to_dict() for r in reports]
        out.write(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, default=str) + "\n")
    else:
        out.write("\n".join(r.format() for r in reports) + "\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


# ---------------------------------------------------------------------------
# verify


SUITES = ("jacobi", "quadratic", "rep", "linfty", "group-rep", "two-group", "group-3-cocycle", "fbar-cocycle")


def _doc_suites(doc: dict) -> list[str]:
    suites = []
    if "dim" in doc:
        suites.append("jacobi")
    if "pairing" in doc:
        suites.append("quadratic")
    if "complex" in doc:
        suites.append("rep")
    if "l2_00" in doc or "l3" in doc:
        suites.append("linfty")
    if "group" in doc:
        suites += ["group-rep", "two-group", "group-3-cocycle", "fbar-cocycle"]
    return suites


def _run_suite(suite: str, doc: dict, args) -> Report:
    from . import serialize as S

    if suite == "jacobi":
        from .algebra import check_antisymmetry, check_jacobi

        g = S.parse_algebra(doc)
        rep = check_antisymmetry(g)
        rep.suite = "jacobi"
        return rep.merge(check_jacobi(g))
    if suite == "quadratic":
        from .rep import check_pairing

        g = S.parse_algebra(doc)
        p = S.parse_matrix(doc["pairing"], g.dim, g.dim, "pairing")
        rep = Report("quadratic", g.name)
        chk = rep.check("pairing")
        chk.n_tested = 1
        try:
            check_pairing(g, p)
        except Lie2Error as exc:
            chk.record(str(exc))
        return rep
    if suite == "rep":
        from .rep import check_rep

        return check_rep(S.parse_rep(doc))
    if suite == "linfty":
        from .linfty import check_linfty

        return check_linfty(S.parse_linfty(doc))
    group = S.parse_group(doc, "float" if args.float else "exact")
    from .group_rep import TwoGroup, check_fbar_cocycle, check_group_3cocycle, check_group_rep, check_two_group

    if suite == "group-rep":
        return check_group_rep(group, args.samples, args.seed, args.tol)
    if suite == "two-group":
        return check_two_group(TwoGroup(group, args.tol), args.samples, args.seed)
    if suite == "group-3-cocycle":
        return check_group_3cocycle(group, args.samples, args.seed, args.tol)
    return check_fbar_cocycle(group, group.meta["fbar"], args.samples, args.seed, args.tol)


def cmd_verify(args, out) -> int:
    from . import serialize as S

    if bool(args.alg) == bool(args.file):
        raise UsageError("give exactly one of --alg or --file")
    doc = S.algebra_to_json(_algebra(args.alg)) if args.alg else S.load(args.file)
    available = _doc_suites(doc)
    if args.suite in (None, "all"):
        wanted = available
    else:
        if args.suite not in available:
            raise UsageError(f"suite {args.suite!r} needs blocks missing from the document; available: {available}")
        wanted = [args.suite]
    if not wanted:
        raise DocumentError("document has no recognised blocks", "$")
    reports = [_run_suite(s, doc, args) for s in wanted]
    return _emit(reports, args.format, out)


# ---------------------------------------------------------------------------
# construct


def cmd_construct(args, out) -> int:
    from . import serialize as S
    from .constructions import double, omni_lie, string_lie2
    from .linfty import semidirect
    from .rep import rep_from_quadratic

    name = args.name
    if name == "double":
        q = double(_algebra(args.alg))
        doc = S.algebra_to_json(q.g)
        doc["pairing"] = S.matrix_to_json(q.pairing)
    elif name == "string":
        q = double(_algebra(args.alg))
        doc = S.algebra_to_json(q.g)
        doc["pairing"] = S.matrix_to_json(q.pairing)
        doc = S.linfty_to_json(string_lie2(q, args.sign), doc)
    elif name == "omni":
        if args.n < 1:
            raise UsageError("--n must be positive")
        r, L = omni_lie(args.n)
        doc = S.linfty_to_json(L, S.rep_to_json(r))
    elif name == "semidirect":
        if args.file:
            r = S.parse_rep(S.load(args.file))
        else:
            r = rep_from_quadratic(_algebra(args.alg), half_pairing=not args.full)
        doc = S.linfty_to_json(semidirect(r), S.rep_to_json(r))
    elif name == "integrate":
        from .integrate import integrate_nilpotent

        doc = S.group_to_json(integrate_nilpotent(_algebra(args.alg), degree_bound=args.degree))
    else:  # argparse restricts the choices
        raise UsageError(f"unknown construction {name!r}")
    out.write(S.dumps(doc) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# nonexact


def cmd_nonexact(args, out) -> int:
    from .constructions import nonexactness_certificate

    g = _algebra(args.alg)
    cert = nonexactness_certificate(g)
    rep = Report("nonexact", g.name)
    chk = rep.check("coboundary-solve")
    chk.n_tested = 1
    rep.extra["class"] = "exact" if cert.exact else "non-exact"
    rep.extra["certificate"] = cert.describe()
    if args.format == "json":
        d = rep.to_dict()
        d["status"] = rep.extra["class"]
        out.write(json.dumps(d, indent=2, default=str) + "\n")
    else:
        out.write(f"[nonexact] {g.name}: nu~ is {rep.extra['class']}\n{cert.describe()}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# courant


def _courant_job(job):
    from .courant import check_courant_linfty, check_courant_rep, check_id_complex_rep

    fn = {"rep": check_courant_rep, "linfty": check_courant_linfty, "id": check_id_complex_rep}[job[0]]
    return fn(*job[1:])


def cmd_courant(args, out) -> int:
    if args.degree < 1 or args.vars < 1 or args.trials < 1:
        raise UsageError("--degree, --vars and --trials must be positive")
    suites = ["rep", "linfty", "id"] if args.suite == "all" else [args.suite]
    jobs = [(s, args.vars, args.degree, args.trials, args.seed, args.mutate) for s in suites]
    if args.parallel and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=len(jobs)) as pool:
            reports = list(pool.map(_courant_job, jobs))
    else:
        reports = [_courant_job(j) for j in jobs]
    return _emit(reports, args.format, out)


# ---------------------------------------------------------------------------
# twogroup


def _model(name: str, float_mode: bool):
    from .group_rep import coadjoint_rep
    from .groups import NilpotentGroup, SO3Group
    from .integrate import integrate_nilpotent

    mode = "float" if float_mode else "exact"
    if name == "so3":
        if not float_mode:
            raise UsageError("so3 is only modelled in floating mode; add --float")
        return coadjoint_rep(SO3Group())
    if name.startswith("strict:"):
        return coadjoint_rep(NilpotentGroup(_algebra(name[7:]), mode))
    return integrate_nilpotent(_algebra(name), mode=mode)


def cmd_twogroup(args, out) -> int:
    from .group_rep import TwoGroup, check_fbar_cocycle, check_group_3cocycle, check_group_rep, check_two_group

    if args.action == "integrate":
        from .integrate import integrate_nilpotent

        r = integrate_nilpotent(_algebra(args.alg), degree_bound=args.degree)
        fbar = r.meta["fbar"]
        rep = check_fbar_cocycle(r, fbar, args.samples, args.seed)
        rep.extra["fbar"] = fbar.format().replace("\n", "; ")
        rep.merge(check_group_rep(r, args.samples, args.seed), prefix="rep:")
        return _emit([rep], args.format, out)

    if args.action == "differentiate":
        return _differentiate(args, out)

    r = _model(args.model, args.float)
    reports = [check_group_rep(r, args.samples, args.seed, args.tol),
               check_two_group(TwoGroup(r, args.tol), args.samples, args.seed)]
    if r.complex.is_zero:
        reports.append(check_group_3cocycle(r, args.samples, args.seed, args.tol))
    return _emit(reports, args.format, out)


def _differentiate(args, out) -> int:
    from .integrate import derivative_error, differentiate_3cocycle, integrate_nilpotent
    from .linfty import nu_tilde_of_rep

    r = integrate_nilpotent(_algebra(args.alg))
    expected = nu_tilde_of_rep(r.meta["datum"])
    rep = Report("differentiate", r.name, mode="exact" if args.mode == "jet" else "float")
    chk = rep.check("recovers nu~")
    with timed(rep):
        if args.mode == "jet":
            got = differentiate_3cocycle(r, "jet")
            err = derivative_error(got, expected)
            chk.observe(err, not got == expected, ("jet",))
        else:
            tol = 1e-5 if args.tol is None else args.tol
            got = differentiate_3cocycle(r, "fd", args.step)
            err = derivative_error(got, expected)
            chk.observe(err, err > tol, ("fd", args.step))
            rep.extra.update({"step": args.step, "tol": tol})
    rep.extra["error"] = err
    return _emit([rep], args.format, out)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="lie2kit", description="Exact checks for Lie 2-algebras and their integrations.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run verification suites on a catalog algebra or a document")
    v.add_argument("--alg")
    v.add_argument("--file")
    v.add_argument("--suite", choices=SUITES + ("all",))
    v.add_argument("--samples", type=int, default=64)
    v.add_argument("--float", action="store_true")
    v.add_argument("--tol", type=float)

    c = sub.add_parser("construct", parents=[common], help="emit a document for a named construction")
    c.add_argument("name", choices=("double", "string", "omni", "semidirect", "integrate"))
    c.add_argument("--alg", default="so3")
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--sign", type=int, choices=(1, -1), default=1)
    c.add_argument("--full", action="store_true", help="semidirect: use nu = [,] instead of [,]/2")
    c.add_argument("--file", help="semidirect: take the representation from a document")
    c.add_argument("--degree", type=int, help="integrate: ansatz degree bound")

    n = sub.add_parser("nonexact", parents=[common], help="decide whether nu~ on g + g* is a coboundary")
    n.add_argument("--alg", required=True)

    k = sub.add_parser("courant", parents=[common], help="randomized polynomial checks on the standard Courant algebroid")
    k.add_argument("--suite", choices=("rep", "linfty", "id", "all"), default="all")
    k.add_argument("--trials", type=int, default=50)
    k.add_argument("--degree", type=int, default=3)
    k.add_argument("--vars", type=int, default=3)
    k.add_argument("--mutate", choices=("mu0", "mu1"))
    k.add_argument("--parallel", action="store_true")

    t = sub.add_parser("twogroup", parents=[common], help="group representations and the semidirect 2-group")
    t.add_argument("action", choices=("check", "integrate", "differentiate"))
    t.add_argument("--model", default="heis3", help="nilpotent catalog name, strict:NAME or so3")
    t.add_argument("--alg", default="heis3")
    t.add_argument("--samples", type=int, default=64)
    t.add_argument("--float", action="store_true")
    t.add_argument("--tol", type=float)
    t.add_argument("--mode", choices=("jet", "fd"), default="jet")
    t.add_argument("--step", type=float, default=1e-3)
    t.add_argument("--degree", type=int)
    return p


COMMANDS = {"verify": cmd_verify, "construct": cmd_construct, "nonexact": cmd_nonexact,
            "courant": cmd_courant, "twogroup": cmd_twogroup}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, Lie2Error) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
