"""Command-line front-end.

Every command prints either human-readable text or one JSON document (the
"envelope") holding the command, its arguments, the parameters and the
result.  Exit codes: 0 ok, 2 usage or parameter error, 3 verification
failure, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from itertools import product as cartesian

from . import __version__
from .algebra import DEFAULT_MAX_WORD_LEN, Params
from .bounds import Regime, cup_length_search, difference_pool, fn_tc_bounds
from .errors import CertificateError, ResourceLimitError, TCAlgError
from .expr import evaluate, format_polynomial, polynomial_to_json
from .genfun import TCSequence, expand_series, genfun_of, principal_residues, recurrence_check
from .spaces import basis_counts, poincare_polynomial, top_degree

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_RESOURCE = 0, 2, 3, 4
DEFAULT_MAX_CELLS = 500
DEFAULT_ORACLE_BUDGET = 12


class VerificationFailed(TCAlgError):
    def __init__(self, msg, envelope=None):
        super().__init__(msg)
        self.envelope = envelope


def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def envelope(command: str, args: dict, params, result) -> dict:
    return {
        "command": command,
        "arguments": args,
        "params": params,
        "result": _jsonable(result),
        "engine_version": __version__,
        "exact_arithmetic": True,
    }


def _params(ns) -> Params:
    return Params(ns.d, ns.m, ns.n, ns.r)


def _args_of(ns, *names) -> dict:
    return {k: getattr(ns, k) for k in names}


# -- commands ----------------------------------------------------------------


def cmd_bounds(ns):
    params = _params(ns)
    report = fn_tc_bounds(params)
    if not report.certificate.verify():
        raise CertificateError(f"certificate for {params} failed re-verification")
    env = envelope("bounds", _args_of(ns, "d", "m", "n", "r"), params.as_dict(), report.to_dict())
    cert = report.certificate
    lines = [
        f"params: d={params.d} m={params.m} n={params.n} r={params.r}",
        f"regime: {report.regime.value}",
        f"lower={report.lower} upper={report.upper} exact={str(report.exact).lower()}",
        f"certificate: k={cert.k} witness={cert.to_dict()['witness']} coefficient={cert.coefficient}",
        "factors:",
    ]
    lines += [f"  {f}" for f in cert.factors]
    return env, "\n".join(lines)


def expected_bounds(params: Params):
    """(lower, upper) that the theorems predict for ``params``."""
    rn = params.r * params.n
    if params.d % 2:
        return rn + params.m - 1, rn + params.m - 1
    if params.d == 2:
        return rn + params.m - 2, rn + params.m - 2
    return rn + params.m - 2, rn + params.m - 1


def max_cells() -> int:
    raw = os.environ.get("TCALG_MAX_CELLS")
    return int(raw) if raw else DEFAULT_MAX_CELLS


def cmd_verify(ns):
    d_set = sorted({int(x) for x in ns.d_set.split(",") if x.strip()})
    if ns.m_max < 2 or ns.n_max < 1 or ns.r_max < 2 or not d_set:
        raise ValueError("empty sweep: need m_max >= 2, n_max >= 1, r_max >= 2 and some d")
    cells = list(cartesian(d_set, range(2, ns.m_max + 1), range(1, ns.n_max + 1), range(2, ns.r_max + 1)))
    cap = max_cells()
    if len(cells) > cap:
        raise ResourceLimitError(f"sweep has {len(cells)} cells, cap is {cap} (TCALG_MAX_CELLS)")
    rows = []
    failures = []
    for d, m, n, r in cells:
        params = Params(d, m, n, r)
        report = fn_tc_bounds(params)
        want = expected_bounds(params)
        ok = report.certificate.verify() and (report.lower, report.upper) == want
        if report.regime is Regime.EVEN_D_GE4:
            ok = ok and not report.exact
        else:
            ok = ok and report.exact
        rows.append(
            {
                "params": params.as_dict(),
                "lower": report.lower,
                "upper": report.upper,
                "exact": report.exact,
                "regime": report.regime.value,
                "coefficient": report.certificate.coefficient,
                "ok": ok,
            }
        )
        if not ok:
            failures.append(params.as_dict())
    # r-monotonicity per (d, m, n)
    monotone = True
    by_key: dict = {}
    for row in rows:
        p = row["params"]
        by_key.setdefault((p["d"], p["m"], p["n"]), []).append(row)
    for series in by_key.values():
        series.sort(key=lambda row: row["params"]["r"])
        for a, b in zip(series, series[1:]):
            if b["lower"] < a["lower"] or b["upper"] < a["upper"]:
                monotone = False
    result = {"cells": rows, "failures": failures, "r_monotone": monotone, "ok": not failures and monotone}
    env = envelope("verify", _args_of(ns, "d_set", "m_max", "n_max", "r_max"), None, result)
    lines = [f"{'d':>3} {'m':>3} {'n':>3} {'r':>3} {'lower':>6} {'upper':>6} exact  regime      ok"]
    for row in rows:
        p = row["params"]
        lines.append(
            f"{p['d']:>3} {p['m']:>3} {p['n']:>3} {p['r']:>3} {row['lower']:>6} {row['upper']:>6} "
            f"{str(row['exact']).lower():<6} {row['regime']:<11} {'ok' if row['ok'] else 'FAIL'}"
        )
    lines.append(f"cells: {len(rows)}  failures: {len(failures)}  r-monotone: {str(monotone).lower()}")
    if not result["ok"]:
        raise VerificationFailed("sweep verification failed", (env, "\n".join(lines)))
    return env, "\n".join(lines)


def cmd_normal_form(ns):
    params = _params(ns)
    p = evaluate(ns.expression, params, max_word_len=ns.max_word_len)
    text = format_polynomial(p)
    result = {"expression": ns.expression, "normal_form": text, "terms": polynomial_to_json(p)}
    env = envelope("normal-form", _args_of(ns, "expression", "d", "m", "n", "r", "max_word_len"),
                   params.as_dict(), result)
    return env, text


def cmd_poincare(ns):
    params = _params(ns)
    poly = poincare_polynomial(params)
    result = {"coefficients": poly.to_list(), "text": str(poly), "top_degree": poly.degree}
    lines = [str(poly)]
    failed = False
    if ns.check:
        counts = basis_counts(params)
        passed = counts == poly and poly.degree == top_degree(params)
        result["check"] = {"basis_counts": counts.to_list(), "pass": passed}
        lines.append(f"check: {'pass' if passed else 'FAIL'}")
        failed = not passed
    env = envelope("poincare", _args_of(ns, "d", "m", "n", "r", "check"), params.as_dict(), result)
    if failed:
        raise VerificationFailed("basis enumeration disagrees with the Poincare polynomial",
                                 (env, "\n".join(lines)))
    return env, "\n".join(lines)


BUNDLES = {
    "fn-odd": lambda ns: TCSequence.fn_odd(ns.m, ns.n),
    "fn-planar": lambda ns: TCSequence.fn_planar(ns.m, ns.n),
    "hopf": lambda ns: TCSequence.hopf(),
    "fn-fiber": lambda ns: TCSequence.fn_fiber(ns.n),
}


def cmd_genfun(ns):
    if ns.bundle in ("fn-odd", "fn-planar") and ns.m < 2:
        raise ValueError("Fadell-Neuwirth generating functions need m >= 2")
    if ns.n < 1 or ns.terms < 0:
        raise ValueError("need n >= 1 and terms >= 0")
    seq = BUNDLES[ns.bundle](ns)
    f = genfun_of(seq)
    pole = f.pole_form()
    A, B = principal_residues(f)
    terms = expand_series(f, ns.terms)
    rec = recurrence_check(seq, max(ns.terms, 10))
    result = {
        "bundle": ns.bundle,
        "rational": str(f),
        "numerator": f.numerator.to_list(),
        "denominator": f.denominator.to_list(),
        "pole_form": str(pole),
        "A": A,
        "B": B,
        "polynomial_part": list(pole.p),
        "terms": terms,
        "recurrence_A": rec,
    }
    env = envelope("genfun", _args_of(ns, "bundle", "m", "n", "terms"), {"m": ns.m, "n": ns.n}, result)
    lines = [
        f"bundle: {ns.bundle}",
        f"F(t) = {f}",
        f"pole form: {pole}",
        f"residues: A={A} B={B}",
        f"terms: {terms}",
        f"recurrence: A={rec}",
    ]
    return env, "\n".join(lines)


def cmd_oracle(ns):
    params = _params(ns)
    pool = difference_pool(params, include_base=ns.include_base)
    res = cup_length_search(params, pool, ns.budget)
    result = {"k": res.k, "truncated": res.truncated, "pool_size": len(pool),
              "factor_indices": list(res.factors)}
    env = envelope("oracle", _args_of(ns, "d", "m", "n", "r", "budget", "include_base"),
                   params.as_dict(), result)
    text = f"cup length found: {res.k}" + (" (truncated at budget)" if res.truncated else "")
    return env, text


# -- argument parsing --------------------------------------------------------


def _add_params(p, with_r=True):
    p.add_argument("--d", type=int, required=True, help="ambient dimension")
    p.add_argument("--m", type=int, required=True, help="number of obstacles")
    p.add_argument("--n", type=int, required=True, help="number of robots")
    if with_r:
        p.add_argument("--r", type=int, required=True, help="sequence length")


def _add_emit(p):
    p.add_argument("--emit", choices=("text", "json"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcalg",
        description="Certified TC_r bounds for the Fadell-Neuwirth bundle, exact cohomology "
        "normal forms, Poincare polynomials and TC-generating functions.",
    )
    parser.add_argument("--version", action="version", version=f"tcalg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="lower/upper bounds with a certificate")
    _add_params(p)
    _add_emit(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="sweep a parameter grid against the theorems")
    p.add_argument("--d-set", default="2,3,4,5", help="comma separated dimensions")
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--r-max", type=int, default=4)
    _add_emit(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("normal-form", help="evaluate an expression to canonical form")
    p.add_argument("expression")
    _add_params(p)
    p.add_argument("--max-word-len", type=int, default=DEFAULT_MAX_WORD_LEN)
    _add_emit(p)
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("poincare", help="Poincare polynomial of the fibre product")
    _add_params(p)
    p.add_argument("--check", action="store_true", help="cross-check against basis enumeration")
    _add_emit(p)
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("genfun", help="TC-generating function of a registered bundle")
    p.add_argument("bundle", choices=sorted(BUNDLES))
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--terms", type=int, default=6)
    _add_emit(p)
    p.set_defaults(func=cmd_genfun)

    p = sub.add_parser("oracle", help="brute-force cup length over difference classes")
    _add_params(p)
    p.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    p.add_argument("--include-base", action="store_true")
    _add_emit(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def _emit(ns, env, text, out):
    if ns.emit == "json":
        out.write(json.dumps(env, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text + "\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        env, text = ns.func(ns)
    except VerificationFailed as exc:
        if exc.envelope:
            _emit(ns, *exc.envelope, out)
        err.write(f"error: {exc}\n")
        return EXIT_VERIFY
    except CertificateError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_VERIFY
    except ResourceLimitError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_RESOURCE
    except (TCAlgError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    _emit(ns, env, text, out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
