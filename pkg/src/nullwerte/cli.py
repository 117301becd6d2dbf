"""nullwerte command line: JSON in, JSON out.

Numbers are written as decimal strings at the working precision: reals as
"x", complex values as ["re", "im"], exact rationals as "p/q".  Exit codes:
0 ok, 1 verification failure, 2 bad input, 3 numeric non-convergence,
4 hyperellipticity failure, 5 inversion failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath
import numpy as np

from . import identities
from .algebra import INF, RootFindingError, is_exact
from .igusa import (IgusaClebschTuple, IgusaError, SymmetricCoefficients2, igusa_from_roots_oracle,
                    igusa_from_symmetric, symmetric_from_igusa)
from .periods import ConvergenceError, PeriodError, characteristic_dictionary, period_matrix
from .reconstruct import (HyperellipticityError, ReconstructionError, genus2_discriminant_from_Z,
                          genus2_symmetric_from_Z, genus3_symmetric_from_Z)
from .symcurve import (BranchSet, BranchSetError, bad_reduction_locus_odd, curve_discriminant,
                       discriminant_factorizations, discriminant_of_roots, symmetric_discriminant_formula)
from .theta import RiemannMatrix, ThetaError
from ._numeric import to_scalar, use_mp, working_precision

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_CONVERGENCE, EXIT_HYPERELLIPTIC, EXIT_INVERSION = range(6)


class CLIError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# --- number I/O -------------------------------------------------------------------

def _real_str(x, digits):
    if use_mp(digits):
        return mpmath.nstr(mpmath.mpf(x), digits)
    return repr(float(x))


def dump_number(x, digits):
    """Fraction -> "p/q"; real -> "x"; complex -> ["re", "im"]."""
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    with working_precision(digits):
        z = mpmath.mpc(x) if use_mp(digits) else complex(x)
        return [_real_str(z.real, digits), _real_str(z.imag, digits)]


def parse_real(s, digits):
    if isinstance(s, (int, float)) and not isinstance(s, bool):
        s = repr(s)
    if not isinstance(s, str):
        raise CLIError(EXIT_INPUT, f"expected a number, got {s!r}")
    s = s.strip()
    try:
        if "/" in s or s.lstrip("+-").isdigit():
            return Fraction(s)
        if use_mp(digits):
            with working_precision(digits):
                return mpmath.mpf(s)
        return float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CLIError(EXIT_INPUT, f"bad number {s!r}") from exc


def parse_number(v, digits):
    """"x" or ["re", "im"]; an imaginary part equal to zero keeps the real (possibly exact) value."""
    if isinstance(v, list):
        if len(v) != 2:
            raise CLIError(EXIT_INPUT, "complex numbers are [re, im] pairs")
        re, im = parse_real(v[0], digits), parse_real(v[1], digits)
        if im == 0:
            return re
        with working_precision(digits):
            return mpmath.mpc(to_scalar(re, digits).real, to_scalar(im, digits).real) if use_mp(digits) \
                else complex(float(re), float(im))
    return parse_real(v, digits)


def dump_matrix(m, digits):
    m = np.asarray(m)
    with working_precision(digits):
        re = [[_real_str(mpmath.mpc(x).real if use_mp(digits) else complex(x).real, digits) for x in row] for row in m]
        im = [[_real_str(mpmath.mpc(x).imag if use_mp(digits) else complex(x).imag, digits) for x in row] for row in m]
    return {"g": int(m.shape[0]), "re": re, "im": im}


def parse_matrix(doc, digits):
    if "Z" in doc and isinstance(doc["Z"], dict):
        doc = doc["Z"]
    try:
        re, im = doc["re"], doc["im"]
        g = int(doc.get("g", len(re)))
    except (KeyError, TypeError) as exc:
        raise CLIError(EXIT_INPUT, "matrix document needs 're' and 'im'") from exc
    if len(re) != g or len(im) != g or any(len(r) != g for r in re + im):
        raise CLIError(EXIT_INPUT, f"matrix is not {g}x{g}")
    with working_precision(digits):
        out = np.empty((g, g), dtype=object if use_mp(digits) else complex)
        for i in range(g):
            for j in range(g):
                out[i, j] = parse_number([re[i][j], im[i][j]], digits)
    try:
        return RiemannMatrix(out, digits)
    except ThetaError as exc:
        raise CLIError(EXIT_INPUT, f"invalid Riemann matrix: {exc}") from exc


def parse_curve(doc, digits):
    """CurveDocument: roots ([re, im] or exact strings) and has_infinity, or polynomial coefficients."""
    try:
        if "coefficients" in doc:
            coeffs = [parse_number(c, digits) for c in doc["coefficients"]]
            with working_precision(digits):
                B = BranchSet.from_polynomial(coeffs, digits)
        else:
            src = doc.get("exact_roots") or doc["roots"]
            pts = [parse_number(r, digits) for r in src]
            if doc.get("has_infinity"):
                pts.append(INF)
            B = BranchSet(pts)
    except (KeyError, TypeError) as exc:
        raise CLIError(EXIT_INPUT, "curve document needs 'roots' or 'coefficients'") from exc
    except (BranchSetError, RootFindingError) as exc:
        raise CLIError(EXIT_INPUT, str(exc)) from exc
    if "genus" in doc and int(doc["genus"]) != B.genus:
        raise CLIError(EXIT_INPUT, f"declared genus {doc['genus']} but the roots give genus {B.genus}")
    return B


def _read(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CLIError(EXIT_INPUT, f"cannot read JSON from {path}: {exc}") from exc


def _write(path, doc):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# --- commands -----------------------------------------------------------------------

def cmd_periods(args):
    B = parse_curve(_read(args.input), args.digits)
    P = period_matrix(B, args.digits)
    D = characteristic_dictionary(B, P)
    return {
        "genus": B.genus,
        "digits": args.digits,
        "Omega1": dump_matrix(P.Omega1, args.digits),
        "Omega2": dump_matrix(P.Omega2, args.digits),
        "Z": dump_matrix(P.Z.matrix, args.digits),
        "order": P.order,
        "dictionary": {
            "c": {str(k): str(v) for k, v in sorted(D.c.items())},
            "shift": str(D.shift),
            "odd": {",".join(map(str, S)): str(w) for S, w in D.odd_map().items()},
        },
    }


def _model_doc(M, digits):
    with working_precision(digits):
        return {
            "genus": M.g,
            "roots": [dump_number(r, digits) for r in M.roots],
            "coefficients": [dump_number(c, digits) for c in M.coeffs],
            "G": [dump_number(c, digits) for c in M.G],
            "discriminant": dump_number(discriminant_of_roots(M.roots), digits),
        }


def cmd_reconstruct(args):
    Z = parse_matrix(_read(args.input), args.digits)
    if args.genus is not None and Z.g != args.genus:
        raise CLIError(EXIT_INPUT, f"matrix is {Z.g}x{Z.g}, --genus {args.genus}")
    if Z.g == 2:
        M = genus2_symmetric_from_Z(Z, args.digits)
        doc = _model_doc(M, args.digits)
        doc["discriminant_theta"] = dump_number(genus2_discriminant_from_Z(Z, args.digits), args.digits)
    elif Z.g == 3:
        doc = _model_doc(genus3_symmetric_from_Z(Z, args.digits), args.digits)
    else:
        raise CLIError(EXIT_INPUT, "reconstruction is implemented for genus 2 and 3")
    return doc


def _parse_model(doc, digits):
    G = [parse_number(x, digits) for x in doc["G"]]
    if len(G) != 3 or int(doc.get("genus", 2)) != 2:
        raise CLIError(EXIT_INPUT, "Igusa-Clebsch invariants need a genus-2 model (three G's)")
    return SymmetricCoefficients2(*G, sign=int(doc.get("sign", 1)))


def _factor_doc(fac):
    return {str(p): e for p, e in sorted(fac.items())}


def cmd_invariants(args):
    doc = _read(args.input)
    dg = args.digits
    out = {}
    if "G" in doc:
        c = _parse_model(doc, dg)
        out["genus"] = 2
        out["igusa_clebsch"] = [dump_number(x, dg) for x in igusa_from_symmetric(c).as_list()]
        return out
    B = parse_curve(doc, dg)
    g = B.genus
    if args.genus is not None and args.genus != g:
        raise CLIError(EXIT_INPUT, f"curve has genus {g}, --genus {args.genus}")
    out["genus"] = g
    if "coefficients" in doc:
        coeffs = [parse_number(x, dg) for x in doc["coefficients"]]
        if all(is_exact(x) for x in coeffs):
            out["curve_discriminant"] = dump_number(curve_discriminant([Fraction(x) for x in coeffs]), dg)
    if g == 2:
        out["igusa_clebsch"] = [dump_number(x, dg) for x in igusa_from_roots_oracle(B).as_list()]
    n = len(B.points)
    if B.exact:
        facs = discriminant_factorizations(B)
        out["symmetric_discriminants"] = [
            {"pair": [i, j], "value": dump_number(d, dg), "factorization": _factor_doc(f)}
            for (i, j), (d, f) in sorted(facs.items())]
        out["odd_bad_reduction_primes"] = sorted(p for p in bad_reduction_locus_odd(B) if p != 2)
    else:
        with working_precision(dg):
            out["symmetric_discriminants"] = [
                {"pair": [i, j], "value": dump_number(symmetric_discriminant_formula(B, i, j, dg), dg)}
                for i in range(n) for j in range(i + 1, n)]
    return out


def cmd_igusa_invert(args):
    doc = _read(args.input)
    dg = args.digits
    try:
        vals = doc["igusa_clebsch"] if "igusa_clebsch" in doc else [doc[k] for k in ("I2", "I4", "I6", "I10")]
    except (KeyError, TypeError) as exc:
        raise CLIError(EXIT_INPUT, "expected I2, I4, I6, I10") from exc
    t = IgusaClebschTuple(*[parse_number(v, dg) for v in vals])
    try:
        res = symmetric_from_igusa(t, digits=dg if not t.exact else None)
    except IgusaError as exc:
        raise CLIError(EXIT_INPUT, str(exc)) from exc
    if not res.candidates:
        raise CLIError(EXIT_INVERSION, "no candidate passed forward verification")
    return {
        "candidates": [{"G": [dump_number(x, dg) for x in c.as_list()], "sign": c.sign} for c in res.candidates],
        "r_values": [dump_number(r, dg) for r in res.r_values],
        "eq_r_agrees": bool(res.eq_r_agrees),
    }


def _report_doc(r, digits):
    def clean(v):
        if isinstance(v, (list, tuple)):
            return [clean(x) for x in v]
        if isinstance(v, dict):
            return {str(k): clean(x) for k, x in v.items()}
        if isinstance(v, (bool, int, str)) or v is None:
            return v
        if isinstance(v, float):
            return repr(v)
        return dump_number(v, digits)

    def side(x):
        x = np.asarray(x, dtype=object)
        if x.ndim == 0:
            return dump_number(x.item(), digits)
        return [dump_number(y, digits) for y in x.ravel()]

    return {"name": r.name, "params": clean(r.params), "lhs": side(r.lhs), "rhs": side(r.rhs),
            "residual": "%.6e" % r.residual, "tol": "%.1e" % r.tol, "passed": r.passed}


def cmd_verify(args):
    reports = identities.run_suite(args.suite, seed=args.seed, digits=args.digits)
    out = [_report_doc(r, args.digits) for r in reports]
    return out, all(r.passed for r in reports)


# --- entry point ------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="nullwerte", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True, digits=50):
        if with_input:
            sp.add_argument("input", help="JSON input file, '-' for stdin")
        sp.add_argument("-o", "--output", default="-", help="JSON output file, '-' for stdout")
        sp.add_argument("--digits", type=int, default=digits)
        sp.add_argument("--tol", type=float, default=1e-8)
        return sp

    common(sub.add_parser("periods", help="period matrix and characteristic dictionary of a curve"))
    sp = common(sub.add_parser("reconstruct", help="symmetric model from a Riemann matrix"))
    sp.add_argument("--genus", type=int, choices=(2, 3))
    sp = common(sub.add_parser("invariants", help="Igusa-Clebsch invariants and symmetric discriminants"))
    sp.add_argument("--genus", type=int)
    common(sub.add_parser("igusa-invert", help="symmetric models with given Igusa-Clebsch invariants"))
    sp = common(sub.add_parser("verify", help="run an identity suite"), with_input=False, digits=None)
    sp.add_argument("--suite", default="all", choices=sorted(identities.SUITES) + ["all"])
    sp.add_argument("--seed", type=int, default=0)
    return p


COMMANDS = {
    "periods": cmd_periods,
    "reconstruct": cmd_reconstruct,
    "invariants": cmd_invariants,
    "igusa-invert": cmd_igusa_invert,
}


def _fail(code, exc):
    sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code},
                                sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.digits is not None and args.digits <= 15:
        args.digits = None
    try:
        if args.command == "verify":
            doc, ok = cmd_verify(args)
            _write(args.output, doc)
            return EXIT_OK if ok else EXIT_VERIFY
        _write(args.output, COMMANDS[args.command](args))
        return EXIT_OK
    except CLIError as exc:
        return _fail(exc.code, exc)
    except HyperellipticityError as exc:
        return _fail(EXIT_HYPERELLIPTIC, exc)
    except (ConvergenceError, RootFindingError) as exc:
        return _fail(EXIT_CONVERGENCE, exc)
    except (PeriodError, BranchSetError, ThetaError, IgusaError, ReconstructionError) as exc:
        return _fail(EXIT_INPUT, exc)


if __name__ == "__main__":
    sys.exit(main())
