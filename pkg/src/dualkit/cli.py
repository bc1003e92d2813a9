"""Command-line front end.

Every command prints one JSON document (or a headered CSV table) with a
``schema`` tag, the command name and an echo of its configuration. Floats are
written with 12 significant digits so identical flags give identical bytes.
Exit status: 0 on success, 1 on a domain error or a failed check, 2 on a
usage error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

from . import duality, orbits, quantum, semiclassical, specfun, susy, verification
from .duality import PowerPotential
from .errors import DualkitError
from .oracle import LineGrid, numerov_eigen, numerov_eigen_1d

SCHEMA = "dualkit/1"


def _clean(obj):
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return None
        return float(format(obj, ".12g"))
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _json(command, config, result):
    doc = {"schema": SCHEMA, "command": command, "config": config, "result": result}
    return json.dumps(_clean(doc), indent=2) + "\n"


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format(v, ".12g") if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _units(args):
    if getattr(args, "atomic", False):
        return 1.0, 1.0, 1.0
    m, hbar, e2 = args.m, args.hbar, args.e2
    if not (m > 0.0 and hbar > 0.0 and e2 > 0.0):
        raise DualkitError("custom units must be strictly positive")
    return m, hbar, e2


def _config(args):
    return {k: v for k, v in vars(args).items() if k not in ("func", "command")}


# ---------------------------------------------------------------------------
# commands


def cmd_pair(args):
    if args.grid:
        lo, hi, n = args.grid
        n = int(n)
        if n < 2:
            raise DualkitError("--grid needs at least two points")
        step = (hi - lo) / (n - 1)
        rows = duality.pair_points(lo + i * step for i in range(n))
        return _json("pair", _config(args), {
            "points": [{"a": a, "b": b, "eta": eta, "class": cls} for a, b, eta, cls in rows]
        })
    b, eta = duality.partner_exponent(args.a)
    result = {"a": args.a, "b": b, "eta": eta, "class": duality.classify_pair(args.a, b).label}
    if args.C is not None:
        result["C"] = args.C
        result["inverse_C"] = duality.DualityMap(eta, args.C).inverse().C
    return _json("pair", _config(args), result)


def cmd_map_orbit(args):
    src = orbits.ConicOrbit(args.abar, args.e, not args.repulsive)
    img = orbits.kepler_to_hooke(src, args.C2)
    psi = orbits.parameter_grid(src, args.n) if src.kind is not orbits.ConicKind.PARABOLA else None
    if args.format == "csv":
        rows = []
        if psi is not None:
            for p, (x, y) in zip(psi, src.points(psi)):
                rows.append(("kepler", float(p), float(x), float(y)))
            if img.kind is not orbits.ConicKind.RECTILINEAR:
                for p, (u, v) in zip(psi, img.points(psi)):
                    rows.append(("hooke", float(p), float(u), float(v)))
        return _csv(["orbit", "psi", "u", "v"], rows)
    return _json("map-orbit", _config(args), {
        "source": {"kind": src.kind.value, "semi_major": src.semi_major, "eccentricity": src.eccentricity,
                   "semi_latus": src.semi_latus, "r_min": src.r_min},
        "image": {"kind": img.kind.value, "alpha": img.alpha, "beta": img.beta,
                  "eccentricity": img.eccentricity if math.isfinite(img.eccentricity) else None},
    })


def _parse_terms(text):
    terms = []
    for chunk in text.split(","):
        lam, sep, a = chunk.partition(":")
        if not sep:
            raise DualkitError(f"term {chunk!r} is not of the form lambda:a")
        terms.append((float(lam), float(a)))
    return PowerPotential(tuple(terms))


def cmd_wkb(args):
    m, hbar, _ = _units(args)
    pot = _parse_terms(args.terms)
    system = semiclassical.RadialSystem.quantized(m, args.ell, args.D, pot, hbar)
    entries = semiclassical.wkb_spectrum(system, args.nmax)
    return _json("wkb", _config(args), {
        "L": system.L,
        "entries": [{"n_r": e.n_r, "ell": e.ell, "D": e.D, "E": e.energy, "provenance": e.provenance.value}
                    for e in entries],
    })


def cmd_susy(args):
    m, hbar, _ = _units(args)
    sp = susy.Superpotential(args.lam, args.a, args.mu, args.epsilon, m, hbar)
    energies = susy.cbc_quantize(sp, args.numax, args.delta)
    images = []
    for nu, E in enumerate(energies):
        img = susy.susy_option_transform(sp, args.option, E, args.C)
        images.append({
            "nu": nu, "E_a": E, "eta": img.eta, "E_b": img.E_b, "b": img.b, "lambda_b": img.lambda_b,
            "b_prime": img.b_prime, "lambda_b_prime": img.lambda_b_prime, "mu_b": img.mu_b,
            "merged": img.merged,
        })
    return _json("susy", _config(args), {
        "a_prime": sp.a_prime, "lambda_a_prime": sp.lambda_a_prime, "energies": energies, "images": images,
    })


def cmd_spectrum(args):
    m, hbar, e2 = _units(args)
    entries = []
    for ell in range(args.ellmax + 1):
        for nu in range(args.numax + 1):
            if args.system == "coulomb":
                st = quantum.coulomb_eigenfunction(nu, ell, args.D, e2, m, hbar)
                V = lambda r: -e2 / r
            else:
                st = quantum.hooke_eigenfunction(nu, ell, args.D, args.omega, m, hbar)
                V = lambda r, w=args.omega: 0.5 * m * w * w * r * r
            entry = {"n_r": nu, "ell": ell, "D": args.D, "L": st.L, "E": st.energy, "provenance": "closed_form"}
            if args.oracle:
                entry["E_oracle"] = numerov_eigen(V, st.L, m, hbar, node_target=nu)
            entries.append(entry)
    return _json("spectrum", _config(args), {"system": args.system, "entries": entries})


def _parse_points(text):
    pts = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        r, sep, rp = chunk.partition(",")
        if not sep:
            raise DualkitError(f"point {chunk!r} is not of the form r,r'")
        pts.append((float(r), float(rp)))
    if not pts:
        raise DualkitError("no points given")
    return pts


def cmd_green(args):
    m, hbar, e2 = _units(args)
    pts = _parse_points(args.points)
    if args.system == "coulomb":
        G = lambda r, rp: quantum.coulomb_green(r, rp, args.E, args.L, e2, m, hbar)
        energy = args.E
    elif args.system == "hooke":
        G = lambda r, rp: quantum.hooke_green(r, rp, args.E, args.L, args.omega, m, hbar)
        energy = args.E
    else:
        if args.lam is None:
            raise DualkitError("green --system confine needs --lambda")
        G = lambda r, rp: quantum.confinement_green(r, rp, args.L, args.lam, args.lambdap, m, hbar)
        energy = 0.0
    ev = quantum.evaluate_green(args.system, G, energy, args.L, pts)
    if args.format == "csv":
        return _csv(["r", "r_prime", "G"], [(r, rp, g) for (r, rp), g in zip(ev.points, ev.values)])
    return _json("green", _config(args), {
        "system": ev.system, "E": ev.E, "L": ev.L,
        "values": [{"r": r, "r_prime": rp, "G": g} for (r, rp), g in zip(ev.points, ev.values)],
    })


def cmd_confine(args):
    m, hbar, _ = _units(args)
    lam = quantum.confinement_couplings(args.nu0, args.ell, args.D, args.lambdap, m, hbar)
    st = quantum.confinement_state(args.nu0, args.ell, args.D, args.lambdap, m, hbar)
    result = {
        "lambda_a": lam, "L_a": st.L, "k_a": quantum.confinement_k(lam, args.lambdap, m, hbar),
        "alpha": st.param("alpha"), "normalization": st.param("normalization"), "nodes": st.nodes(),
    }
    if args.oracle:
        V = lambda r: lam / r**0.5 + args.lambdap * r
        result["E_oracle"] = numerov_eigen(V, st.L, m, hbar, node_target=args.nu0)
    return _json("confine", _config(args), result)


def cmd_morse(args):
    m, hbar, _ = _units(args)
    entries = []
    V = quantum.morse_potential(args.D1, args.D2, args.alpha)
    for nu in range(args.numax + 1):
        try:
            E = quantum.morse_spectrum(nu, args.D1, args.D2, args.alpha, m, hbar)
        except DualkitError:
            if nu == 0:
                raise
            break
        entry = {"nu": nu, "E": E}
        if args.oracle:
            entry["E_oracle"] = numerov_eigen_1d(V, m, hbar, node_target=nu, grid=LineGrid())
        entries.append(entry)
    return _json("morse", _config(args), {"entries": entries})


def cmd_verify(args):
    overrides = verification.parse_tol_override(os.environ.get("DUALKIT_TOL", ""))
    names = args.only or None
    results = verification.run_checks(names, overrides, fast=args.fast)
    report = {
        "passed": all(r.passed for r in results),
        "checks": [
            {
                "name": r.name, "passed": r.passed, "score": r.score, "error": r.error or None,
                "parts": [{"label": p.label, "residual": p.residual, "tolerance": p.tolerance, "passed": p.passed}
                          for p in r.parts],
            }
            for r in results
        ],
    }
    # timings are left out so the report is reproducible byte for byte
    return _json("verify", _config(args), report), 0 if report["passed"] else 1


_SPECFUN = {
    "kummer_m": (specfun.kummer_m, 3),
    "whittaker_m": (specfun.whittaker_m, 3),
    "whittaker_w": (specfun.whittaker_w, 3),
    "laguerre": (lambda n, a, x: specfun.laguerre(int(n), a, x), 3),
    "beta": (specfun.beta_fn, 2),
    "lgamma": (specfun.lgamma, 1),
}


def cmd_specfun(args):
    fn, arity = _SPECFUN[args.fn]
    if len(args.args) != arity:
        raise DualkitError(f"{args.fn} takes {arity} arguments")
    return _json("specfun-eval", _config(args), {"value": fn(*args.args)})


# ---------------------------------------------------------------------------
# parser


def _units_parent():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("units")
    g.add_argument("--m", type=float, default=1.0, help="mass (default 1)")
    g.add_argument("--hbar", type=float, default=1.0, help="reduced Planck constant (default 1)")
    g.add_argument("--e2", type=float, default=1.0, help="Coulomb coupling e^2 (default 1)")
    g.add_argument("--atomic", action="store_true", help="m = hbar = e = 1")
    return p


def build_parser():
    units = _units_parent()
    parser = argparse.ArgumentParser(prog="dualkit", description="Power-law duality toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("pair", help="partner exponent and class of a power law")
    p.add_argument("-a", type=float, help="source exponent")
    p.add_argument("--C", type=float, default=None, help="map scale, echoed with its inverse")
    p.add_argument("--grid", type=float, nargs=3, metavar=("A_MIN", "A_MAX", "N"),
                   help="emit the pair curve on N points instead")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("map-orbit", help="Kepler orbit and its Hooke image")
    p.add_argument("--abar", type=float, required=True)
    p.add_argument("--e", type=float, required=True)
    p.add_argument("--C2", type=float, default=1.0)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--repulsive", action="store_true")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_map_orbit)

    p = sub.add_parser("wkb", parents=[units], help="WKB spectrum of a sum of power laws")
    p.add_argument("--terms", required=True, help='"lambda:a[,lambda:a...]"')
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--nmax", type=int, default=3)
    p.set_defaults(func=cmd_wkb)

    p = sub.add_parser("susy", parents=[units], help="CBC spectrum and option transform")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--epsilon", type=int, choices=(1, -1), default=1)
    p.add_argument("--delta", type=int, choices=(-1, 0, 1), default=-1)
    p.add_argument("--option", choices=("i", "ii"), default="i")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--numax", type=int, default=3)
    p.set_defaults(func=cmd_susy)

    p = sub.add_parser("spectrum", parents=[units], help="closed-form Coulomb or Hooke spectrum")
    p.add_argument("--system", choices=("coulomb", "hooke"), required=True)
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--ellmax", type=int, default=1)
    p.add_argument("--numax", type=int, default=2)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--oracle", action="store_true", help="add Numerov eigenvalues")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("green", parents=[units], help="radial Green function at sample points")
    p.add_argument("--system", choices=("coulomb", "hooke", "confine"), required=True)
    p.add_argument("--E", type=float, default=0.0)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--points", required=True, help='"r,r\';r,r\';..."')
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="confine: coupling lambda_a")
    p.add_argument("--lambdap", type=float, default=1.0, help="confine: linear coupling")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("confine", parents=[units], help="zero-energy confinement state")
    p.add_argument("--nu0", type=int, default=0)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--D", type=int, default=3)
    p.add_argument("--lambdap", type=float, default=1.0)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_confine)

    p = sub.add_parser("morse", parents=[units], help="Morse bound-state energies")
    p.add_argument("--D1", type=float, required=True)
    p.add_argument("--D2", type=float, required=True)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--numax", type=int, default=2)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_morse)

    p = sub.add_parser("verify", help="run the cross-check suite")
    p.add_argument("--fast", action="store_true", help="skip the grid-halving checks")
    p.add_argument("--only", nargs="+", choices=tuple(verification.CHECKS), default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("specfun-eval", help=argparse.SUPPRESS)
    p.add_argument("fn", choices=tuple(_SPECFUN))
    p.add_argument("args", type=float, nargs="+")
    p.set_defaults(func=cmd_specfun)
    # keep the debugging command out of the listing
    sub._choices_actions = [a for a in sub._choices_actions if a.dest != "specfun-eval"]
    return parser


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "pair" and args.a is None and not args.grid:
        parser.error("pair needs -a or --grid")
    try:
        out = args.func(args)
    except ValueError as exc:  # DualkitError and argument-domain errors
        print(f"error: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(out, tuple):
        out, code = out
    stdout.write(out)
    return code
