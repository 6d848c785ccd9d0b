"""Command-line front door.

Subcommands mirror the library layers: ``diagrams`` (combinatorics),
``weights`` (character tables), ``jones`` (spin expansions), ``lorentz``
(two-parameter invariants and the cross-pipeline check), ``qlg`` (truncated
braid sums), and ``verify`` (the acceptance suite).

Configuration precedence is flags > config file (JSON with keys mirroring
the run configuration) > defaults.  Exit codes: 2 for usage errors, 3 when
a resource guard refuses the computation, 4 when an internal consistency
assertion fails (the message names the identity that broke); 1 for a failed
verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .acceptance import CRITERIA, run_acceptance
from .braids import catalog_knot, parse_braid
from .diagrams import (
    enumerate_diagrams,
    four_t_generators,
    parse_diagram,
    quotient_dimension,
)
from .errors import InternalConsistencyError, ResourceGuardError
from .invariants import equivalence_check, x_invariant
from .jones import jones_framed, jones_z_interpolated, jones_zero_framed
from .qlorentz import SYMBOLIC, braid_sum, load_lambda_cache, save_lambda_cache
from .scalars import GaussianRational, big_to_str, precision
from .weights import lambda_mp_direct, lambda_mp_factorized, lambda_z_sl2

DEFAULTS = {
    "order": 6,
    "precision": 60,
    "cutoff": None,
    "format": "pretty",
    "workers": 1,
}

CONFIG_KEYS = set(DEFAULTS) | {"braid", "strands", "knot", "m", "p"}


def _load_config(path):
    with open(path) as fh:
        data = json.load(fh)
    unknown = set(data) - CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    return data


def _setting(args, config, key):
    value = getattr(args, key, None)
    if value is None and key in config:
        value = config[key]
    if value is None:
        value = DEFAULTS.get(key)
    if key == "order" and value is not None and int(value) < 0:
        raise ValueError("order must be nonnegative")
    if key == "precision" and value is not None and int(value) < 30:
        raise ValueError("precision must be at least 30 digits")
    return value


def _resolve_cutoff(args, config, order):
    cutoff = _setting(args, config, "cutoff")
    if cutoff is not None and Fraction(cutoff) < order:
        raise ValueError("crossing-spin cutoff must be at least the order")
    return cutoff


def _resolve_braid(args, config):
    braid_text = _setting(args, config, "braid")
    knot = _setting(args, config, "knot")
    if knot:
        return catalog_knot(knot).braid
    if braid_text is not None:
        strands = _setting(args, config, "strands")
        if strands is None:
            strands = max((int(t.strip("-s")) for t in braid_text.split()), default=0) + 1
        return parse_braid(braid_text, int(strands))
    raise ValueError("need --braid or --knot")


def _parse_spin(text):
    """Spin written as an integer or half-integer ('3/2') -> doubled int."""
    frac = Fraction(text)
    doubled = 2 * frac
    if doubled.denominator != 1 or doubled < 0:
        raise ValueError(f"spin must be a nonnegative half-integer, got {text}")
    return int(doubled)


def _poly_rows(series):
    rows = []
    for n, poly in enumerate(series.coeffs):
        for k, c in enumerate(poly.coeffs):
            if c:
                rows.append(
                    {
                        "h_order": n,
                        "param_degree": k,
                        "re_num": c.re.numerator,
                        "re_den": c.re.denominator,
                        "im_num": c.im.numerator,
                        "im_den": c.im.denominator,
                    }
                )
    return rows


def _emit_poly_series(series, fmt, out):
    if fmt == "json":
        doc = {"order": series.order, "coeffs": [p.to_json() for p in series.coeffs]}
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        rows = _poly_rows(series)
        writer = csv.DictWriter(
            out,
            fieldnames=["h_order", "param_degree", "re_num", "re_den", "im_num", "im_den"],
        )
        writer.writeheader()
        writer.writerows(rows)
    else:
        for n, poly in enumerate(series.coeffs):
            out.write(f"h^{n}: {poly}\n")


def _emit_series(series, fmt, out):
    if fmt == "json":
        out.write(json.dumps(series.to_json(), indent=2) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["h_order", "value"])
        for n, c in enumerate(series.coeffs):
            writer.writerow([n, str(c)])
    else:
        out.write(str(series) + "\n")


def _emit_big_series(series, fmt, digits, out):
    if fmt == "json":
        doc = {
            "order": series.order,
            "coeffs": [big_to_str(c, digits) for c in series.coeffs],
        }
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out)
        writer.writerow(["h_order", "re", "im"])
        for n, c in enumerate(series.coeffs):
            re, im = big_to_str(c, digits)
            writer.writerow([n, re, im])
    else:
        import mpmath

        for n, c in enumerate(series.coeffs):
            out.write(f"h^{n}: {mpmath.nstr(c, min(digits, 25))}\n")


def _cache_dir():
    return Path(os.environ.get("LORENTZKNOTS_CACHE_DIR", ".lorentzknots-cache"))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_diagrams(args, config, out):
    fmt = _setting(args, config, "format")
    if args.enumerate is not None:
        diagrams = enumerate_diagrams(args.enumerate)
        if fmt == "json":
            out.write(json.dumps([d.gauss_text() for d in diagrams]) + "\n")
        else:
            for d in diagrams:
                out.write((d.gauss_text() or "(unit)") + "\n")
    elif args.parse is not None:
        d = parse_diagram(args.parse)
        out.write(json.dumps({"canonical": d.gauss_text(), "chords": d.n}) + "\n")
    elif args.four_t is not None:
        gens = four_t_generators(args.four_t)
        out.write(json.dumps([g.to_json() for g in gens], indent=2) + "\n")
    elif args.quotient_dim is not None:
        out.write(
            json.dumps({"n": args.quotient_dim, "dimension": quotient_dimension(args.quotient_dim)})
            + "\n"
        )
    else:
        raise ValueError("diagrams: choose --enumerate, --parse, --four-t or --quotient-dim")
    return 0


def _cmd_weights(args, config, out):
    fmt = _setting(args, config, "format")
    d = parse_diagram(args.diagram)
    if args.sl2:
        poly = lambda_z_sl2(d)
        doc = {"diagram": d.gauss_text(), "variable": "z", "coeffs": poly.to_json()}
    else:
        m = int(_setting(args, config, "m") or 0)
        route = lambda_mp_direct if args.direct else lambda_mp_factorized
        poly = route(d, m)
        doc = {
            "diagram": d.gauss_text(),
            "m": m,
            "variable": "p",
            "coeffs": poly.to_json(),
        }
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    else:
        out.write(f"{doc.get('diagram') or '(unit)'}: {poly}\n")
    return 0


def _cmd_jones(args, config, out):
    fmt = _setting(args, config, "format")
    order = int(_setting(args, config, "order"))
    braid = _resolve_braid(args, config)
    if args.interpolate:
        series = jones_z_interpolated(braid, order, workers=int(_setting(args, config, "workers")))
        _emit_poly_series(series, fmt, out)
    elif args.spin is not None:
        two_alpha = _parse_spin(args.spin)
        series = (
            jones_framed(braid, two_alpha, order)
            if args.framed
            else jones_zero_framed(braid, two_alpha, order)
        )
        _emit_series(series, fmt, out)
    else:
        raise ValueError("jones: choose --spin or --interpolate")
    return 0


def _cmd_lorentz(args, config, out):
    fmt = _setting(args, config, "format")
    order = int(_setting(args, config, "order"))
    digits = int(_setting(args, config, "precision"))
    braid = _resolve_braid(args, config)
    m = int(_setting(args, config, "m") or 0)
    p = _setting(args, config, "p")
    if args.check_equivalence:
        if p is None:
            raise ValueError("--check-equivalence needs --p")
        report = equivalence_check(braid, int(p), order, digits)
        out.write(json.dumps(report, indent=2) + "\n")
        return 0 if report["pass"] else 1
    inv = x_invariant(braid, m, order)
    if p is not None:
        from .polynomials import specialize

        series = specialize(inv.series, Fraction(str(p)))
        _emit_series(series, fmt, out)
    else:
        _emit_poly_series(inv.series, fmt, out)
    return 0


def _cmd_qlg(args, config, out):
    fmt = _setting(args, config, "format")
    order = int(_setting(args, config, "order"))
    digits = int(_setting(args, config, "precision"))
    cutoff = _resolve_cutoff(args, config, order)
    braid = _resolve_braid(args, config)
    p_text = str(_setting(args, config, "p") or "symbolic")
    with precision(digits):
        if args.load_cache:
            load_lambda_cache(_cache_dir() / args.load_cache)
        if p_text == "symbolic":
            series = braid_sum(braid, SYMBOLIC, order, label_cutoff=cutoff)
            if fmt == "json":
                doc = {
                    "order": series.order,
                    "coeffs": [
                        [big_to_str(c, digits) for c in poly.coeffs]
                        for poly in series.coeffs
                    ],
                }
                out.write(json.dumps(doc, indent=2) + "\n")
            else:
                for n, poly in enumerate(series.coeffs):
                    text = " + ".join(
                        f"({big_to_str(c, 12)[0]})*p^{k}" for k, c in enumerate(poly.coeffs)
                    )
                    out.write(f"h^{n}: {text or '0'}\n")
        else:
            p = GaussianRational(Fraction(p_text))
            series = braid_sum(braid, p, order, label_cutoff=cutoff)
            _emit_big_series(series, fmt, digits, out)
        if args.save_cache:
            _cache_dir().mkdir(parents=True, exist_ok=True)
            save_lambda_cache(_cache_dir() / args.save_cache)
    return 0


def _cmd_verify(args, config, out):
    if args.order is not None:
        out.write(
            "note: acceptance parameters (orders, tolerances) are pinned; "
            f"--order {args.order} is accepted for interface compatibility\n"
        )
    numbers = None
    if args.criteria:
        numbers = [tok.strip() for tok in args.criteria.split(",") if tok.strip()]
        known = {num for num, _, _ in CRITERIA}
        bad = set(numbers) - known
        if bad:
            raise ValueError(f"unknown criteria: {sorted(bad)}")
    ok = run_acceptance(numbers, stream=lambda line: out.write(line + "\n"))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lorentzknots",
        description="Perturbative knot invariants from Lorentz-group representation theory.",
    )
    parser.add_argument("--config", help="JSON config file (flags win over it)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "csv", "pretty"])
        p.add_argument("--order", type=int)
        p.add_argument("--precision", type=int)
        p.add_argument("--workers", type=int)

    p = sub.add_parser("diagrams", help="chord diagram combinatorics")
    common(p)
    p.add_argument("--enumerate", type=int, metavar="N")
    p.add_argument("--parse", metavar="WORD")
    p.add_argument("--four-t", dest="four_t", type=int, metavar="N")
    p.add_argument("--quotient-dim", dest="quotient_dim", type=int, metavar="N")

    p = sub.add_parser("weights", help="central character tables")
    common(p)
    p.add_argument("--diagram", required=True, metavar="WORD")
    p.add_argument("--m", type=int)
    p.add_argument("--sl2", action="store_true", help="spin-z character instead")
    p.add_argument("--direct", action="store_true", help="use the module-action route")

    p = sub.add_parser("jones", help="spin expansions of the braid closure")
    common(p)
    p.add_argument("--braid")
    p.add_argument("--strands", type=int)
    p.add_argument("--knot")
    p.add_argument("--spin", help="half-integer spin, e.g. 3/2")
    p.add_argument("--interpolate", action="store_true")
    p.add_argument("--framed", action="store_true", help="blackboard framing")

    p = sub.add_parser("lorentz", help="two-parameter invariants")
    common(p)
    p.add_argument("--braid")
    p.add_argument("--strands", type=int)
    p.add_argument("--knot")
    p.add_argument("--m", type=int)
    p.add_argument("--p")
    p.add_argument("--check-equivalence", action="store_true")

    p = sub.add_parser("qlg", help="quantum Lorentz braid sums")
    common(p)
    p.add_argument("--braid")
    p.add_argument("--strands", type=int)
    p.add_argument("--knot")
    p.add_argument("--p", help="integer, rational, or 'symbolic'")
    p.add_argument("--cutoff", type=Fraction, help="crossing-spin cutoff")
    p.add_argument("--save-cache", metavar="NAME")
    p.add_argument("--load-cache", metavar="NAME")

    p = sub.add_parser("verify", help="run the acceptance suite")
    common(p)
    p.add_argument("--criteria", help="comma-separated criterion numbers")

    return parser


_COMMANDS = {
    "diagrams": _cmd_diagrams,
    "weights": _cmd_weights,
    "jones": _cmd_jones,
    "lorentz": _cmd_lorentz,
    "qlg": _cmd_qlg,
    "verify": _cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args.config) if args.config else {}
        return _COMMANDS[args.command](args, config, out)
    except ResourceGuardError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 4
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
