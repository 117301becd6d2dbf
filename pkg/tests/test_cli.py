import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from nullwerte import cli
from nullwerte.algebra import INF
from nullwerte.igusa import InverseResult
from nullwerte.symcurve import BranchSet, match_multisets, mu_multiset

from conftest import random_siegel


def run(tmp_path, command, doc=None, *flags):
    """Run the CLI in-process; returns (exit code, parsed output or None)."""
    out = tmp_path / "out.json"
    argv = [command]
    if doc is not None:
        src = tmp_path / "in.json"
        src.write_text(json.dumps(doc))
        argv.append(str(src))
    argv += ["-o", str(out), *flags]
    code = cli.main(argv)
    return code, (json.loads(out.read_text()) if out.exists() else None)


def cnum(x):
    if isinstance(x, str):
        return complex(float(Fraction(x)))
    return complex(float(x[0]), float(x[1]))


def cmat(doc):
    return np.array([[complex(float(a), float(b)) for a, b in zip(ra, rb)] for ra, rb in zip(doc["re"], doc["im"])])


QUINTIC = {"genus": 2, "roots": ["0", "1", "2", "3", "4"], "has_infinity": True}


def test_periods_elliptic(tmp_path):
    code, doc = run(tmp_path, "periods", {"genus": 1, "roots": ["-1", "0", "1"], "has_infinity": True})
    assert code == 0
    assert abs(cmat(doc["Z"])[0, 0] - 1j) < 1e-10


def test_periods_precision_stable(tmp_path):
    _, a = run(tmp_path, "periods", QUINTIC, "--digits", "50")
    _, b = run(tmp_path, "periods", QUINTIC, "--digits", "100")
    assert np.abs(cmat(a["Z"]) - cmat(b["Z"])).max() < 1e-12
    # numbers carry the working precision
    assert len(b["Z"]["im"][0][0]) > 60


def test_periods_complex_root(tmp_path, capsys):
    code, _ = run(tmp_path, "periods", {"genus": 2, "roots": ["0", "1", "2", "3", ["4", "1"]], "has_infinity": True})
    assert code == 2
    err = json.loads(capsys.readouterr().err)
    assert err["exit_code"] == 2 and "real branch points required" in err["message"]


def test_bad_input(tmp_path):
    assert run(tmp_path, "periods", {"genus": 3, **{k: v for k, v in QUINTIC.items() if k != "genus"}})[0] == 2
    assert run(tmp_path, "periods", {"nothing": 1})[0] == 2


def test_reconstruct_round_trip(tmp_path):
    _, per = run(tmp_path, "periods", QUINTIC, "--digits", "30")
    code, model = run(tmp_path, "reconstruct", per, "--genus", "2", "--digits", "30")
    assert code == 0
    roots = [cnum(r) for r in model["roots"]]
    src = BranchSet([0, 1, 2, 3, 4, INF])
    assert match_multisets(mu_multiset(BranchSet([0] + roots + [INF])), mu_multiset(src), 1e-6) < 1e-6
    assert abs(cnum(model["discriminant"]) / cnum(model["discriminant_theta"]) - 1) < 1e-6


def test_reconstruct_idempotent(tmp_path):
    _, per = run(tmp_path, "periods", QUINTIC, "--digits", "30")
    src = tmp_path / "z.json"
    src.write_text(json.dumps(per))
    outs = []
    for k in range(2):
        dst = tmp_path / f"m{k}.json"
        assert cli.main(["reconstruct", str(src), "-o", str(dst), "--digits", "30"]) == 0
        outs.append(dst.read_bytes())
    assert outs[0] == outs[1]


def test_reconstruct_genus3_generic_Z(tmp_path):
    Z = np.array(random_siegel(3, np.random.default_rng(1)).matrix, dtype=complex)
    doc = {"re": [[repr(float(x)) for x in row] for row in Z.real],
           "im": [[repr(float(x)) for x in row] for row in Z.imag]}
    assert run(tmp_path, "reconstruct", doc, "--genus", "3", "--digits", "20")[0] == 4


def test_reconstruct_genus_mismatch(tmp_path):
    _, per = run(tmp_path, "periods", QUINTIC, "--digits", "20")
    assert run(tmp_path, "reconstruct", per, "--genus", "3")[0] == 2


def test_stdin_stdout():
    proc = subprocess.run([sys.executable, "-m", "nullwerte.cli", "invariants", "-"],
                          input=json.dumps({"G": ["0", "0", "0"]}), capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["igusa_clebsch"] == ["40", "-80", "-320", "256"]


def test_invariants_rational_curve(tmp_path):
    code, doc = run(tmp_path, "invariants", QUINTIC)
    assert code == 0
    assert len(doc["igusa_clebsch"]) == 4
    assert len(doc["symmetric_discriminants"]) == 15
    for entry in doc["symmetric_discriminants"]:
        value = Fraction(entry["value"])
        prod = Fraction(1)
        for p, e in entry["factorization"].items():
            prod *= Fraction(int(p)) ** e
        assert abs(value) == prod
    assert all(p % 2 for p in doc["odd_bad_reduction_primes"])


def test_invariants_weng(tmp_path):
    doc = {"coefficients": ["0", "1832265664", "0", "-3694084", "0", "961", "0", "1"]}
    code, out = run(tmp_path, "invariants", doc, "--digits", "30")
    assert code == 0
    assert Fraction(out["curve_discriminant"]) == -2 ** 44 * 31 ** 35
    assert len(out["symmetric_discriminants"]) == 28


def test_invariants_genus_mismatch(tmp_path):
    assert run(tmp_path, "invariants", QUINTIC, "--genus", "3")[0] == 2


def test_igusa_invert(tmp_path):
    code, doc = run(tmp_path, "igusa-invert", {"igusa_clebsch": ["40", "-80", "-320", "256"]})
    assert code == 0 and doc["eq_r_agrees"]
    assert {"G": ["0", "0", "0"], "sign": 1} in doc["candidates"]
    assert any(abs(cnum(r) - 1) < 1e-12 for r in doc["r_values"])
    lam = Fraction(3, 7)
    scaled = [str(Fraction(x) * lam ** w) for x, w in zip([40, -80, -320, 256], (1, 2, 3, 5))]
    code, doc2 = run(tmp_path, "igusa-invert", {"igusa_clebsch": scaled})
    assert code == 0
    assert sorted(json.dumps(c) for c in doc["candidates"]) == sorted(json.dumps(c) for c in doc2["candidates"])


def test_igusa_invert_singular(tmp_path):
    assert run(tmp_path, "igusa-invert", {"igusa_clebsch": ["1", "2", "3", "0"]})[0] == 2


def test_igusa_invert_no_candidate(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "symmetric_from_igusa", lambda t, digits=None: InverseResult([], [], True))
    assert run(tmp_path, "igusa-invert", {"igusa_clebsch": ["1", "2", "3", "4"]})[0] == 5


def test_verify_jacobi(tmp_path):
    code, doc = run(tmp_path, "verify", None, "--suite", "jacobi")
    assert code == 0
    assert len(doc) >= 2 and all(r["passed"] for r in doc)


def test_verify_failure_exit(tmp_path, monkeypatch):
    from nullwerte import identities
    real = identities.SUITES["jacobi"]

    def broken(digits=None, rng=None):
        reps = real(digits, rng)
        reps[0].passed = False
        return reps
    monkeypatch.setitem(identities.SUITES, "jacobi", broken)
    code, doc = run(tmp_path, "verify", None, "--suite", "jacobi")
    assert code == 1 and not doc[0]["passed"]


@pytest.mark.slow
def test_verify_all_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert cli.main(["verify", "--suite", "all", "--seed", "42", "-o", str(a)]) == 0
    assert cli.main(["verify", "--suite", "all", "--seed", "42", "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_residuals_non_increasing(tmp_path):
    _, lo = run(tmp_path, "verify", None, "--suite", "jacobi", "--digits", "30")
    _, hi = run(tmp_path, "verify", None, "--suite", "jacobi", "--digits", "60")
    for a, b in zip(lo, hi):
        assert float(b["residual"]) <= max(float(a["residual"]), 1e-55)
