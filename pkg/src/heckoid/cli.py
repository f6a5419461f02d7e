"""Command-line front end.

Exit codes: 0 success/pass, 1 negative result or failed certification,
2 usage or domain error.  With ``--json`` exactly one JSON document is
written to stdout.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import acceptance
from .farey import OrbitBudget, admits_epimorphism, is_in_orbit, orbit_bfs, orbit_enumerate_pattern, riley_family, riley_pattern, word_to_str
from .orbifold import describe, quotient_orbifold_desc
from .reps import certify_epimorphism, divisibility_check
from .slopes import DomainError, HeckoidIndex, Slope
from .words import heckoid_presentation, link_group_presentation, slope_word


def _common(p: argparse.ArgumentParser, *flags: str) -> None:
    if "r" in flags:
        p.add_argument("--r", required=True, help="slope q/p of the Heckoid group")
    if "s" in flags:
        p.add_argument("--s", required=True, help="slope q/p, or inf")
    if "n" in flags:
        p.add_argument("--n", help="Heckoid index n (integer or half-integer: 2, 5/2, 2.5)")
        p.add_argument("--m", help="Riley's index m = 2n")
    if "tol" in flags:
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--k", type=int, default=1, help="root family: trace of rho(u_r) is +-2cos(2 pi k/m), sign fixed by the lift")
    if "budget" in flags:
        p.add_argument("--budget", type=int, default=8, help="parabolic syllables for the descent")
        p.add_argument("--max-word-len", type=int, default=6)
        p.add_argument("--max-den", type=int, default=10**6)
    p.add_argument("--json", action="store_true", help="emit one JSON document")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heckoid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("orbit", help="orbit of inf by BFS or by the continued-fraction pattern")
    _common(p, "r", "n")
    p.add_argument("--max-word-len", type=int, default=4)
    p.add_argument("--max-den", type=int, default=1000)
    p.add_argument("--pattern", action="store_true", help="enumerate the pattern instead of BFS")
    p.add_argument("--t-max", type=int, default=1)
    p.add_argument("--c-bound", type=int, default=2)

    p = sub.add_parser("member", help="is s in the orbit of inf?")
    _common(p, "s", "r", "n", "budget")
    p = sub.add_parser("epi", help="orbit hypothesis for an epimorphism G(K(s)) -> H(r; n)")
    _common(p, "s", "r", "n", "budget")

    p = sub.add_parser("riley", help="Riley's family of slopes")
    for name in ("alpha", "beta", "d", "m", "e"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("word", help="the word u_s in the upper meridian pair")
    _common(p, "s")

    p = sub.add_parser("present", help="presentation of H(r; n), or of G(K(s)) with --s")
    p.add_argument("--r")
    p.add_argument("--s")
    p.add_argument("--n")
    p.add_argument("--m")
    p.add_argument("--json", action="store_true")

    for name, text in (("certify", "certify the epimorphism numerically"), ("divides", "divisibility shadow at Heckoid roots")):
        p = sub.add_parser(name, help=text)
        _common(p, "s", "r", "n", "tol", "budget")
    sub.choices["divides"].add_argument("--allow-nonmember", action="store_true", help="run even without an orbit witness")

    p = sub.add_parser("describe", help="weighted-graph orbifold descriptor")
    _common(p, "r", "n")
    p.add_argument("--quotient", action="store_true", help="describe the quotient orbifold O(r; m) instead")

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--max-word-len", type=int, default=8)
    p.add_argument("--max-den", type=int, default=10**12)
    p.add_argument("--t-max", type=int, default=2)
    p.add_argument("--c-bound", type=int, default=3)
    p.add_argument("--budget", type=int, default=8)
    p.add_argument("--json", action="store_true")
    return parser


def _index(args) -> HeckoidIndex:
    n, m = getattr(args, "n", None), getattr(args, "m", None)
    if n is None and m is None:
        raise DomainError("one of --n or --m is required")
    idx = HeckoidIndex.from_n(n) if n is not None else None
    if m is not None:
        try:
            from_m = HeckoidIndex.from_m(int(m))
        except ValueError:
            raise DomainError(f"malformed m {m!r}") from None
        if idx is not None and idx != from_m:
            raise DomainError(f"--n {n} and --m {m} disagree")
        idx = from_m
    return idx


def _budget(args) -> OrbitBudget:
    return OrbitBudget(args.budget, args.max_word_len, args.max_den)


def _emit(args, doc: dict, text: str) -> None:
    print(json.dumps(doc) if args.json else text)


def _cert_text(cert) -> str:
    lines = [f"{cert.kind}: {cert.verdict}"]
    for rep in cert.reports:
        for c in rep.checks:
            lines.append(f"  y = {rep.root:.12g}: {c.name}: {c.value:.3e} {c.bound} {c.tol:g} [{'ok' if c.passed else 'FAIL'}]")
    return "\n".join(lines)


def run(args) -> int:
    cmd = args.cmd
    if cmd == "orbit":
        idx = _index(args)
        if args.pattern:
            pts = orbit_enumerate_pattern(args.r, idx, args.t_max, args.c_bound)
        else:
            pts = orbit_bfs(args.r, idx, args.max_word_len, args.max_den)
        doc = {"r": args.r, "n": str(idx), "slopes": [{"slope": str(s), "witness": w.as_dict()} for s, w in pts.items()]}
        _emit(args, doc, "\n".join(f"{s}\t{word_to_str(w.word)}" for s, w in pts.items()))
        return 0
    if cmd == "member":
        mem = is_in_orbit(Slope.parse(args.s), args.r, _index(args), _budget(args))
        text = mem.verdict
        if mem.member:
            text += f" via {mem.route}: {word_to_str(mem.witness.word)}; pattern {mem.witness.pattern.as_dict()}"
        _emit(args, mem.as_dict(), text)
        return 0 if mem.member else 1
    if cmd == "epi":
        epi = admits_epimorphism(Slope.parse(args.s), args.r, _index(args), _budget(args))
        _emit(args, epi.as_dict(), f"yes via {epi.via}" if epi.yes else "not_found_within_budget")
        return 0 if epi.yes else 1
    if cmd == "riley":
        s = riley_family(args.alpha, args.beta, args.d, args.m, args.e)
        doc = {"slope": str(s)}
        if args.e == 1:
            r, params = riley_pattern(args.alpha, args.beta, args.d, args.m)
            doc.update(r=str(r), pattern=params.as_dict())
        _emit(args, doc, str(s))
        return 0
    if cmd == "word":
        w = slope_word(Slope.parse(args.s))
        _emit(args, {"slope": args.s, "word": str(w)}, str(w))
        return 0
    if cmd == "present":
        if args.s is not None:
            pres = link_group_presentation(Slope.parse(args.s))
        elif args.r is not None:
            pres = heckoid_presentation(Slope.parse(args.r), _index(args))
        else:
            raise DomainError("present needs --r (with --n/--m) or --s")
        _emit(args, pres.as_dict(), str(pres))
        return 0
    if cmd in ("certify", "divides"):
        idx = _index(args)
        s = Slope.parse(args.s)
        if cmd == "certify":
            cert = certify_epimorphism(s, args.r, idx, _budget(args), args.tol, args.k)
        else:
            cert = divisibility_check(s, args.r, idx, args.tol, args.k, _budget(args), strict=not args.allow_nonmember)
        _emit(args, cert.as_dict(), _cert_text(cert))
        return 0 if cert.passed else 1
    if cmd == "describe":
        idx = _index(args)
        d = quotient_orbifold_desc(args.r, idx) if args.quotient else describe(args.r, idx)
        text = f"{d.case}: K({d.base_link_slope}) " + ", ".join(
            f"{e.label}={'inf' if e.weight == float('inf') else int(e.weight)}" for e in d.edges
        )
        _emit(args, d.as_dict(), text)
        return 0
    if cmd == "selftest":
        cfg = acceptance.RunConfig(
            args.tol, args.max_word_len, args.max_den, args.t_max, args.c_bound, args.budget,
            "json" if args.json else "text",
        )
        results = acceptance.run_all(cfg)
        ok = all(r.passed for r in results)
        doc = {"pass": ok, "criteria": [r.as_dict() for r in results]}
        _emit(args, doc, "\n".join(r.line() for r in results))
        return 0 if ok else 1
    raise DomainError(f"unknown command {cmd}")  # pragma: no cover


_NEG_FRACTION = re.compile(r"^-\d+(/\d+)?$")


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--s -11/36`` as ``--s=-11/36``; argparse would read the value as a flag."""
    out = []
    i = 0
    while i < len(argv):
        if argv[i] in ("--s", "--r") and i + 1 < len(argv) and _NEG_FRACTION.match(argv[i + 1]):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative_values(argv))
    try:
        return run(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
