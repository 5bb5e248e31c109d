import json
import os
import subprocess

import pytest

import lpfact


def test_constants():
    c = lpfact.paper_constants()
    assert c["1+9log2"] > 7.238
    assert abs(c["(sqrt(145)-1)/8"] - 1.380) < 5e-4
    assert abs(lpfact.target_lambda(0.005) - (c["1+9log2"] - 0.5)) < 1e-12


def test_primes_and_wilson():
    assert lpfact.primes_in(2, 10) == [2, 3, 5, 7]
    assert lpfact.is_prime(97)
    assert lpfact.factorial_mod(6, 7) == 6


def test_scan_and_ord():
    assert lpfact.scan_prime(7) == [3, 6]
    assert lpfact.scan_prime(5, "-1") == [1, 3]
    value, exact = lpfact.ord_nfact_plus_f(4, 5)
    assert (value, exact) == (2, True)


def test_factor_and_largest_prime():
    fz = lpfact.factor(8)
    assert fz["factors_string"] == "61*661"
    assert fz["complete"]
    assert lpfact.p_exact(6) == (103, True)


def test_errors_are_typed():
    with pytest.raises(lpfact.ValueNotAboveOne):
        lpfact.factor(1, "-1")
    with pytest.raises(lpfact.ValueNotAboveOne):
        lpfact.factor(2, "-1")
    assert issubclass(lpfact.MismatchFound, lpfact.InvariantFailure)
    assert issubclass(lpfact.InvariantFailure, lpfact.Error)
    with pytest.raises(lpfact.PreconditionViolated):
        lpfact.primes_in(0, 5)


def test_sieve_text_is_deterministic():
    a = lpfact.run_sieve("1", 2, 3000, threads=1)
    b = lpfact.run_sieve("1", 2, 3000, threads=3)
    assert a == b
    assert a.startswith("p,n,ord,f_id\n")
    assert "\n7,3,1,f0\n" in a


def test_gap_sum():
    assert lpfact.heath_brown_sum(10)["sum"] == 25


def test_cli_roundtrip():
    code, out, err = lpfact.run_cli(["constants"])
    assert code == 0, err
    assert json.loads(out)["1+9log2"] > 7.238
    code, _, err = lpfact.run_cli(["sieve", "--pmax", "10", "--ord", "maybe"])
    assert code == 2


@pytest.mark.skipif(not os.environ.get("LPFACT_TOOL"), reason="tool binary not provided")
def test_tool_binary():
    res = subprocess.run([os.environ["LPFACT_TOOL"], "gaps", "--y", "10"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].startswith("10,25,")
