"""Exit criteria for the toolkit, runnable from pytest and from ``heckoid selftest``.

Each criterion returns a :class:`CriterionResult`; tolerances and budgets
are fixed here except where a :class:`RunConfig` overrides them.
"""

from __future__ import annotations

import contextlib
import io
import time
from dataclasses import dataclass, field
from math import gcd

from .farey import OrbitBudget, is_in_orbit, orbit_bfs, orbit_enumerate_pattern, riley_family
from .orbifold import ParityError, even_orbifold_desc, odd_orbifold_desc, quotient_orbifold_desc
from .reps import certify_epimorphism, divisibility_check, elliptic_order_check, trace_invariance_check
from .slopes import ContFrac, DomainError, HeckoidIndex, Slope, cf_eval, cf_expand
from .words import NotOneRelator, heckoid_presentation, slope_word

ORACLE_CASES = [("1/3", 4), ("2/3", 4), ("1/3", 3), ("2/5", 4)]


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-9
    max_word_len: int = 8
    max_den: int = 10**12
    t_max: int = 2
    c_bound: int = 3
    budget: int = 8
    output: str = "text"

    def __post_init__(self):
        # 0 is allowed so that selftest can demonstrate deterministic failure
        if not (0 <= self.tolerance < 1):
            raise DomainError("tolerance must lie in [0, 1)")
        if min(self.max_word_len, self.max_den, self.t_max, self.c_bound, self.budget) < 1:
            raise DomainError("budgets must be positive")
        if self.output not in ("text", "json"):
            raise DomainError("output must be text or json")


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.seconds:.2f}s) {self.detail}"

    def as_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "pass": self.passed,
            "detail": self.detail,
            "seconds": round(self.seconds, 4),
        }


def _timed(number, title, limit=None):
    def deco(fn):
        def run(config: RunConfig = RunConfig()) -> CriterionResult:
            t0 = time.perf_counter()
            passed, detail, data = fn(config)
            dt = time.perf_counter() - t0
            if limit is not None and dt >= limit:
                passed = False
                detail += f"; runtime {dt:.2f}s exceeds {limit}s"
            return CriterionResult(number, title, passed, detail, dt, data)

        run.number = number
        run.title = title
        run.__name__ = fn.__name__
        return run

    return deco


@_timed(1, "continued-fraction golden values and round trip", limit=1.0)
def criterion_1(config):
    golden = cf_expand("2/9").terms == (4, 2) and cf_expand("9/56").terms == (6, 4, 2)
    bad = [
        (q, p)
        for p in range(2, 201)
        for q in range(1, p)
        if gcd(q, p) == 1 and cf_eval(cf_expand(Slope(q, p))) != Slope(q, p)
    ]
    return golden and not bad, f"golden={golden}, round-trip failures={len(bad)}", {}


@_timed(2, "Riley family membership", limit=10.0)
def criterion_2(config):
    I4 = HeckoidIndex(4)
    s1 = riley_family(3, 1, 2, 4, 1)
    s2 = riley_family(3, 1, 4, 4, 1)
    m1 = is_in_orbit(s1, "2/3", I4, OrbitBudget(max_syllables=2, max_word_len=2))
    m2 = is_in_orbit(s2, "2/3", I4, OrbitBudget(max_syllables=4, max_word_len=4))
    ok = (
        s1 == Slope(25, 36)
        and s2 == Slope(217, 324)
        and m1.member
        and m2.member
        and m1.witness.check(s1, "2/3", I4)
        and m2.witness.check(s2, "2/3", I4)
    )
    detail = (
        f"{s1}: {m1.verdict} ({m1.syllables} syllable, {len(m1.witness.word) if m1.witness else '-'} letters); "
        f"{s2}: {m2.verdict} ({m2.syllables} syllable, {len(m2.witness.word) if m2.witness else '-'} letters)"
    )
    return ok, detail, {}


@_timed(3, "pattern enumeration contained in BFS orbit at word length 8", limit=120.0)
def criterion_3(config):
    missing = {}
    total = 0
    for r, m in ORACLE_CASES:
        idx = HeckoidIndex(m)
        pattern = orbit_enumerate_pattern(r, idx, 2, 3)
        bfs = orbit_bfs(r, idx, 8, config.max_den)
        small = [s for s in pattern if s.den <= 500]
        total += len(small)
        miss = [s for s in small if s not in bfs]
        if miss:
            missing[f"{r},m={m}"] = len(miss)
    detail = f"{total} pattern slopes checked; missing from BFS: {missing or 'none'}"
    return not missing, detail, {"missing": missing}


@_timed(4, "slope word golden vectors")
def criterion_4(config):
    want = {"0": "ab", "1": "aB", "1/2": "abAB", "1/3": "abaBAB"}
    got = {s: str(slope_word(s)) for s in want}
    return got == want, str(got), {}


@_timed(5, "epimorphism certification at Heckoid roots", limit=5.0)
def criterion_5(config):
    tol = config.tolerance
    out = []
    ok = True
    for s, r in (("13/36", "1/3"), ("25/36", "2/3")):
        cert = certify_epimorphism(s, r, HeckoidIndex(4), OrbitBudget(config.budget), tol)
        ok &= cert.passed and len(cert.reports) == 3
        out.append(f"{s} vs r={r}: {cert.verdict}, max residual {cert.max_residual():.1e}")
    ok &= len(slope_word("13/36")) == 72
    return ok, "; ".join(out), {}


@_timed(6, "trace equality within an orbit")
def criterion_6(config):
    idx = HeckoidIndex(4)
    res = []
    ok = True
    # -13/36 + 2 coincides with 59/36, so the bare negation is checked as well
    for s, s2 in (("13/36", "59/36"), ("13/36", str(-Slope(13, 36) + 2)), ("13/36", "-13/36")):
        cert = trace_invariance_check(s, s2, "1/3", idx, config.tolerance)
        ok &= cert.passed
        res.append(f"({s}, {s2}) {cert.verdict} {cert.max_residual():.1e}")
    return ok, "; ".join(res), {}


def orbit_sample(r, idx: HeckoidIndex, count: int = 5) -> list[Slope]:
    """The ``count`` finite orbit slopes of smallest denominator (ties broken by value)."""
    pts = orbit_bfs(r, idx, 3, 10**6)
    finite = sorted((s for s in pts if not s.is_inf), key=lambda s: (s.den, abs(s.num), s.num))
    return finite[:count]


@_timed(7, "divisibility shadow on orbit slopes, negative control fails")
def criterion_7(config):
    detail = []
    ok = True
    for r, m in ORACLE_CASES:
        idx = HeckoidIndex(m)
        sample = orbit_sample(r, idx)
        passed = [s for s in sample if divisibility_check(s, r, idx, config.tolerance, budget=config.budget).passed]
        ok &= len(passed) >= 5
        detail.append(f"{r},m={m}: {len(passed)}/{len(sample)}")
    neg = divisibility_check("1/3", "2/3", HeckoidIndex(4), config.tolerance, strict=False)
    ok &= not neg.passed
    detail.append(f"control 1/3 vs 2/3: {neg.verdict}")
    return ok, "; ".join(detail), {}


@_timed(8, "elliptic order of rho(u_r) at Heckoid roots")
def criterion_8(config):
    ok = True
    detail = []
    for r, m in ORACLE_CASES + [("2/9", 4), ("2/9", 5), ("9/56", 3)]:
        cert = elliptic_order_check(r, HeckoidIndex(m), tol=config.tolerance, separation=1e-3)
        ok &= cert.passed
        detail.append(f"{r},m={m}:{cert.verdict}")
    return ok, " ".join(detail), {}


@_timed(9, "odd-orbifold slope change and vertex inequality")
def criterion_9(config):
    want = {"2/9": Slope(1, 9), "9/56": Slope(9, 28), "1/3": Slope(2, 3)}
    ok = True
    got = {}
    for r, rhat in want.items():
        for m in (3, 5, 7):
            d = odd_orbifold_desc(r, HeckoidIndex(m))
            got[r] = str(d.base_link_slope)
            ok &= d.base_link_slope == rhat and d.vertex_condition()
            ok &= quotient_orbifold_desc(r, m).vertex_condition()
    return ok, str(got), {}


CLI_CONTRACT = [
    (["member", "--s", "25/36", "--r", "2/3", "--n", "2"], 0),
    (["member", "--s", "1/3", "--r", "2/3", "--n", "2", "--budget", "2"], 1),
    (["epi", "--s", "-11/36", "--r", "2/3", "--n", "2"], 0),
    (["riley", "--alpha", "3", "--beta", "1", "--d", "2", "--m", "4", "--e", "1"], 0),
    (["riley", "--alpha", "3", "--beta", "3", "--d", "2", "--m", "4", "--e", "1"], 2),
    (["word", "--s", "1/3"], 0),
    (["word", "--s", "inf"], 2),
    (["word", "--s", "1/x"], 2),
    (["present", "--r", "1/3", "--n", "2"], 0),
    (["present", "--r", "1/3", "--n", "5/2"], 2),
    (["certify", "--s", "13/36", "--r", "1/3", "--n", "2"], 0),
    (["certify", "--s", "13/36", "--r", "1/3", "--n", "2", "--tol", "0"], 1),
    (["certify", "--s", "1/3", "--r", "2/3", "--n", "2", "--budget", "2"], 2),
    (["divides", "--s", "25/36", "--r", "2/3", "--m", "4"], 0),
    (["divides", "--s", "1/3", "--r", "2/3", "--n", "2", "--allow-nonmember"], 1),
    (["describe", "--r", "2/9", "--n", "3/2"], 0),
    (["describe", "--r", "2/9", "--n", "2.5"], 0),
    (["describe", "--r", "2/9", "--n", "2.3"], 2),
    (["orbit", "--r", "2/3", "--n", "2", "--max-word-len", "2", "--max-den", "100"], 0),
    (["orbit", "--r", "2/3", "--n", "2", "--max-word-len", "0", "--max-den", "100"], 2),
]


def run_cli(argv) -> tuple[int, str, str]:
    from .cli import main

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as exc:  # argparse usage errors
            code = exc.code
    return code, out.getvalue(), err.getvalue()


@_timed(10, "parity and error contracts, CLI exit codes")
def criterion_10(config):
    problems = []
    for two_n in range(3, 12):
        idx = HeckoidIndex(two_n)
        try:
            heckoid_presentation("1/3", idx)
            raised = False
        except NotOneRelator:
            raised = True
        if raised != (two_n % 2 == 1):
            problems.append(f"presentation 2n={two_n}")
        for fn, bad_parity in ((even_orbifold_desc, 1), (odd_orbifold_desc, 0)):
            try:
                fn("2/9", idx)
                raised = False
            except ParityError:
                raised = True
            if raised != (two_n % 2 == bad_parity):
                problems.append(f"{fn.__name__} 2n={two_n}")
    for argv, want in CLI_CONTRACT:
        code, _, _ = run_cli(argv)
        if code != want:
            problems.append(f"{' '.join(argv)} -> {code} (want {want})")
    return not problems, f"{len(CLI_CONTRACT)} CLI cases; problems: {problems or 'none'}", {}


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


def run_all(config: RunConfig = RunConfig()) -> list[CriterionResult]:
    results = []
    for crit in CRITERIA:
        try:
            results.append(crit(config))
        except DomainError as exc:
            results.append(CriterionResult(crit.number, crit.title, False, f"error: {exc}"))
    return results
