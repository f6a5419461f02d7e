import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from heckoid.acceptance import CLI_CONTRACT, run_cli
from heckoid.farey import Membership
from heckoid.orbifold import OrbifoldDescriptor
from heckoid.reps import Certificate
from heckoid.words import Presentation


@pytest.mark.parametrize("argv, code", CLI_CONTRACT, ids=[" ".join(a) for a, _ in CLI_CONTRACT])
def test_contract_table(argv, code):
    got, _, _ = run_cli(argv)
    assert got == code


def _json(argv):
    code, out, _ = run_cli(argv + ["--json"])
    return code, json.loads(out)


def test_member_json():
    code, doc = _json(["member", "--s", "25/36", "--r", "2/3", "--n", "2"])
    assert code == 0 and doc["verdict"] == "member"
    assert Membership.from_dict(doc).as_dict() == doc


def test_certify_json_round_trip():
    code, doc = _json(["certify", "--s", "13/36", "--r", "1/3", "--m", "4"])
    assert code == 0 and doc["verdict"] == "pass" and len(doc["reports"]) == 3
    assert Certificate.from_dict(doc).as_dict() == doc


def test_present_and_describe_json():
    _, doc = _json(["present", "--r", "1/3", "--n", "2"])
    assert doc == {"generators": ["a", "b"], "relators": ["abaBABabaBAB"]}
    assert Presentation.from_dict(doc).as_dict() == doc
    _, doc = _json(["describe", "--r", "9/56", "--n", "3/2"])
    assert doc["base_slope"] == "9/28" and doc["strata_count"] == 4
    assert OrbifoldDescriptor.from_dict(doc).as_dict() == doc


def test_orbit_json_single_document():
    code, out, _ = run_cli(["orbit", "--r", "2/3", "--n", "2", "--max-word-len", "2", "--max-den", "100", "--json"])
    doc = json.loads(out)
    assert code == 0 and doc["slopes"][0]["slope"] == "inf"
    assert out.count("\n") == 1


def test_pattern_orbit():
    code, out, _ = run_cli(["orbit", "--r", "2/3", "--n", "2", "--pattern", "--t-max", "1", "--c-bound", "1"])
    assert code == 0 and "25/36" in out


def test_word_text():
    assert run_cli(["word", "--s", "1/3"])[1].strip() == "abaBAB"


def test_present_odd_message():
    code, _, err = run_cli(["present", "--r", "1/3", "--n", "5/2"])
    assert code == 2 and "one-relator" in err


def test_epi_negative_slope_forms():
    assert run_cli(["epi", "--s", "-11/36", "--r", "2/3", "--n", "2"])[0] == 0
    assert run_cli(["epi", "--s=-11/36", "--r", "2/3", "--n", "2"])[0] == 0


def test_n_m_disagree():
    assert run_cli(["member", "--s", "25/36", "--r", "2/3", "--n", "2", "--m", "6"])[0] == 2
    assert run_cli(["member", "--s", "25/36", "--r", "2/3"])[0] == 2


@given(st.text(alphabet="0123456789/.-xy ", min_size=1, max_size=6))
def test_malformed_slopes_exit_2(text):
    from heckoid.slopes import DomainError, Slope
    try:
        Slope.parse(text)
        valid = True
    except DomainError:
        valid = False
    code, _, _ = run_cli(["word", f"--s={text}"])
    if not valid:
        assert code == 2
    else:
        assert code in (0, 2)  # inf has no word


@given(st.integers(1, 40), st.integers(-40, 40))
def test_word_exit_codes(p, q):
    from math import gcd
    code, out, _ = run_cli(["word", f"--s={q}/{p}"])
    assert code == 0 and len(out.strip()) == 2 * (p // gcd(abs(q), p) if q else 1)


def test_selftest_zero_tolerance_fails():
    code, out, _ = run_cli(["selftest", "--tol", "0", "--json"])
    doc = json.loads(out)
    assert code == 1
    failed = {c["criterion"] for c in doc["criteria"] if not c["pass"]}
    assert {5, 6, 7, 8} <= failed


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "heckoid", "word", "--s", "1/2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "abAB"
