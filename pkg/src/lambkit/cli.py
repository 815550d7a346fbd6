"""Command-line front end.

Every command prints one document (``json``, ``csv`` or ``table``) to stdout.
Exit status is 0 on success, 1 when the library rejects the request (the
message goes to stderr unchanged) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys

import numpy as np

from . import coulomb, hydrogenic, lambshift, ratio, selfenergy
from .errors import LambkitError
from .units import EV, MHZ, Measurement, EnergyQuantity, load_constants

ENV_CONSTANTS = "LAMBKIT_CONSTANTS"
FORMATS = ("json", "csv", "table")
MODE_FLAGS = {"paper": lambshift.PAPER_LITERAL, "reconciled": lambshift.RECONCILED}

_CUTOFF_RE = re.compile(r"^\s*([-+0-9.eE]+?)\s*(me|eV)\s*$")


def cutoff_arg(text: str) -> tuple[float, str]:
    """``'1me'`` -> (1.0, 'me'), ``'5e5eV'`` -> (500000.0, 'eV')."""
    match = _CUTOFF_RE.match(text)
    if not match:
        raise argparse.ArgumentTypeError(
            f"invalid energy {text!r}; use a number followed by 'me' or 'eV'")
    try:
        value = float(match.group(1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid number in {text!r}") from None
    return value, match.group(2)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _energy(arg: tuple[float, str], constants) -> EnergyQuantity:
    value, unit = arg
    return EnergyQuantity(value * constants.m_e, EV) if unit == "me" else EnergyQuantity(value, EV)


# ---------------------------------------------------------------- commands

def cmd_constants(args, constants):
    return constants.as_dict()


def cmd_predict(args, constants):
    ref = ratio.load_reference_values(args.reference)
    predicted = ratio.predict_muonium(ref.hydrogen, constants)
    report = ratio.compare(predicted, ref)
    out = {"hydrogen_MHz": ref.hydrogen.value, "hydrogen_sigma_MHz": ref.hydrogen.sigma,
           "ratio_factor": ratio.ratio_factor(constants)}
    out.update(report.to_dict())
    out["within_1sigma"] = abs(report.pull_predicted) <= 1.0
    return out


def _spectrum(args):
    return hydrogenic.build_pseudostates(hydrogenic.BasisSpec(args.basis, args.scale))


def cmd_bethe_log(args, constants):
    spec = _spectrum(args)
    closure, weighted = hydrogenic.sum_rules(spec)
    avg = lambshift.average_excitation_energy(spec)
    target = hydrogenic.psi0_squared(2) * 2.0 * math.pi
    return {
        "N": args.basis, "beta": args.scale,
        "mean_excitation_Ry": avg.value,
        "ln_mean_excitation_Ry": math.log(avg.value),
        "closure_sum_au": closure, "closure_residual": closure - 0.25,
        "energy_weighted_sum_au": weighted, "energy_weighted_residual": weighted - target,
    }


def cmd_shift(args, constants):
    atom = hydrogenic.make_atom(args.atom, constants)
    mode = MODE_FLAGS[args.mode]
    cutoff = _energy(args.cutoff, constants)
    spec = _spectrum(args)
    avg = lambshift.average_excitation_energy(spec)
    numeric = lambshift.shift_numeric(lambshift.ShiftParams(atom, cutoff, spec, mode), constants).value
    closed = lambshift.shift_closed_form(atom, cutoff, avg, mode, constants).value
    out = {
        "atom": atom.label, "mode": mode,
        "cutoff_eV": cutoff.value, "cutoff_me": cutoff.value / constants.m_e,
        "mean_excitation_Ry": avg.value,
        "shift_numeric_MHz": numeric, "shift_closed_form_MHz": closed,
        "relative_difference": (numeric - closed) / closed,
        "paper_to_reconciled_ratio": lambshift.MODE_RATIO,
        "note": "printed closed-form coefficient is 4*pi times the sum-rule reduction; "
                "'reconciled' uses the reduction, 'paper' the printed one",
    }
    if atom.label == "muonium":
        out["log_correction_vs_hydrogen"] = lambshift.log_correction(
            atom, hydrogenic.hydrogen(constants), cutoff, avg, constants)
    return out


def cmd_sweep(args, constants):
    atom = hydrogenic.make_atom(args.atom, constants)
    return lambshift.sweep_cutoff(atom, _spectrum(args), _energy(args.lo, constants),
                                  _energy(args.hi, constants), args.points, constants,
                                  log_spacing=args.log, mode=MODE_FLAGS[args.mode])


def cmd_invert(args, constants):
    atom = hydrogenic.make_atom(args.atom, constants)
    mode = MODE_FLAGS[args.mode]
    avg = lambshift.average_excitation_energy(_spectrum(args))
    lam = lambshift.invert_cutoff(Measurement(args.observed, args.sigma, MHZ), atom, avg, mode, constants)
    return {"atom": atom.label, "mode": mode, "observed_MHz": args.observed, "sigma_MHz": args.sigma,
            "mean_excitation_Ry": avg.value,
            "cutoff_eV": lam.value, "cutoff_sigma_eV": lam.sigma,
            "cutoff_me": lam.value / constants.m_e, "cutoff_sigma_me": lam.sigma / constants.m_e}


def cmd_self_energy(args, constants):
    cutoff = _energy(args.cutoff, constants).value
    m0 = constants.m_e
    spec = selfenergy.ModeIntegralSpec(args.kpoints, args.angpoints, cutoff)
    numeric = selfenergy.free_self_energy_numeric(args.p2, m0, spec, constants)
    analytic = selfenergy.free_self_energy_analytic(args.p2, m0, cutoff, constants)
    ledger = selfenergy.make_ledger(m0, cutoff, constants)
    counter = ledger.counter_term(args.p2, mass=m0)
    return {"p2_eV2": args.p2, "cutoff_eV": cutoff, "mass_eV": m0,
            "numeric_eV": numeric, "analytic_eV": analytic,
            "relative_difference": (numeric - analytic) / analytic if analytic else 0.0,
            "delta_m_eV": ledger.delta_m, "delta_m_over_m": ledger.delta_m / m0,
            "counter_term_eV": counter, "residual_eV": analytic + counter}


def _default_density() -> coulomb.RadialDensity:
    width = 0.01
    grid = np.linspace(0.0, 12.0 * width, 4001)
    return coulomb.RadialDensity(grid, np.exp(-grid**2 / (2 * width**2)) / (2 * math.pi * width**2) ** 1.5)


def cmd_coulomb_demo(args, constants):
    if args.density is None:
        rho = _default_density()
        source = "builtin gaussian, width 0.01"
    else:
        try:
            with open(args.density, encoding="utf-8") as fh:
                rho = coulomb.RadialDensity.from_csv(fh.read())
        except OSError as exc:
            raise LambkitError(f"cannot read density file: {exc}") from None
        source = args.density
    if rho.total_charge <= 0:
        raise LambkitError("density carries no charge")
    h = hydrogenic.hydrogen(constants)
    # 1s electron cloud on its own grid; the point-nucleus energy is exactly -1 Hartree
    egrid = np.linspace(0.0, 40.0, 40001)
    electron = coulomb.RadialDensity(egrid, np.exp(-2.0 * egrid) / math.pi)
    induced = coulomb.uehling_induced_density(rho, constants, h.reduced_mass / constants.m_e)
    energy = coulomb.interaction_energy(rho, electron)
    energy_vp = coulomb.interaction_energy(induced, electron)
    r_last = float(rho.grid[-1])
    return {
        "density": source,
        "total_charge": rho.total_charge,
        "potential_origin": coulomb.potential_from_density(rho, 0.0),
        "potential_edge": coulomb.potential_from_density(rho, r_last),
        "point_charge_edge": rho.total_charge / (4 * math.pi * r_last),
        "energy_1s_hartree": energy,
        "energy_1s_point_hartree": -rho.total_charge,
        "finite_size_hartree": energy + rho.total_charge,
        "uehling_net_charge": induced.total_charge,
        "uehling_density_origin": float(induced.values[0]),
        "uehling_energy_1s_hartree": energy_vp,
    }


# ---------------------------------------------------------------- output

def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render(result, fmt: str) -> str:
    if isinstance(result, lambshift.CutoffSweep):
        if fmt == "csv":
            return result.to_csv()
        if fmt == "json":
            doc = {"mode": result.mode, **result.metadata,
                   "rows": [{"lambda_eV": a, "shift_MHz": b} for a, b in result.rows]}
            return json.dumps(doc, indent=2) + "\n"
        lines = [f"{'lambda_eV':>24}  {'shift_MHz':>24}"]
        lines += [f"{_fmt(a):>24}  {_fmt(b):>24}" for a, b in result.rows]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(result, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        for key, value in result.items():
            writer.writerow([key, _fmt(value)])
        return buf.getvalue()
    width = max(len(k) for k in result)
    return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in result.items()) + "\n"


# ---------------------------------------------------------------- parser

def _add_basis(p):
    p.add_argument("--basis", type=_positive_int, default=100, help="pseudostate basis size N (default 100)")
    p.add_argument("--scale", type=float, default=0.5, help="basis scale beta (default 0.5)")


def _add_mode(p):
    p.add_argument("--mode", choices=sorted(MODE_FLAGS), default="reconciled")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                        help="output format (default json; csv for sweep)")
    common.add_argument("--constants", default=argparse.SUPPRESS, metavar="FILE",
                        help=f"constants file (overrides ${ENV_CONSTANTS})")
    common.add_argument("--reference", default=argparse.SUPPRESS, metavar="FILE",
                        help="reference-values file")

    parser = argparse.ArgumentParser(prog="lambkit", parents=[common],
                                     description="Non-relativistic Lamb shift toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    sub.add_parser("constants", parents=[common], help="print the active constant set")
    sub.add_parser("predict", parents=[common], help="muonium prediction from hydrogen (default)")

    p = sub.add_parser("bethe-log", parents=[common], help="mean excitation energy and sum rules")
    _add_basis(p)

    p = sub.add_parser("shift", parents=[common], help="numeric vs closed-form 2s shift")
    p.add_argument("--atom", choices=sorted(hydrogenic.ATOMS), default="hydrogen")
    p.add_argument("--cutoff", type=cutoff_arg, default=(1.0, "me"), help="e.g. 1me or 5e5eV")
    _add_mode(p)
    _add_basis(p)

    p = sub.add_parser("sweep", parents=[common], help="shift against cutoff, as CSV")
    p.add_argument("--atom", choices=sorted(hydrogenic.ATOMS), default="hydrogen")
    p.add_argument("--from", dest="lo", type=cutoff_arg, required=True)
    p.add_argument("--to", dest="hi", type=cutoff_arg, required=True)
    p.add_argument("--points", type=_positive_int, default=21)
    p.add_argument("--log", action="store_true", help="logarithmic spacing (default linear)")
    _add_mode(p)
    _add_basis(p)

    p = sub.add_parser("invert", parents=[common], help="cutoff reproducing an observed shift")
    p.add_argument("--atom", choices=sorted(hydrogenic.ATOMS), default="hydrogen")
    p.add_argument("--observed", type=float, required=True, help="observed shift, MHz")
    p.add_argument("--sigma", type=float, default=0.0, help="its uncertainty, MHz")
    _add_mode(p)
    _add_basis(p)

    p = sub.add_parser("self-energy", parents=[common], help="free-electron mode sum vs analytic")
    p.add_argument("--p2", type=float, required=True, help="p^2 in eV^2")
    p.add_argument("--cutoff", type=cutoff_arg, default=(1.0, "me"))
    p.add_argument("--kpoints", type=_positive_int, default=64)
    p.add_argument("--angpoints", type=_positive_int, default=16)

    p = sub.add_parser("coulomb-demo", parents=[common], help="potential, energy and Uehling contrast")
    p.add_argument("--density", metavar="FILE", default=None,
                   help="CSV with header 'r,rho' (reduced Bohr radii); default a narrow Gaussian")
    return parser


COMMANDS = {
    None: cmd_predict,
    "constants": cmd_constants,
    "predict": cmd_predict,
    "bethe-log": cmd_bethe_log,
    "shift": cmd_shift,
    "sweep": cmd_sweep,
    "invert": cmd_invert,
    "self-energy": cmd_self_energy,
    "coulomb-demo": cmd_coulomb_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(args, "format", "csv" if args.command == "sweep" else "json")
    args.reference = getattr(args, "reference", None)
    constants_path = getattr(args, "constants", None) or os.environ.get(ENV_CONSTANTS) or None
    try:
        if constants_path is not None and not os.path.exists(constants_path):
            raise LambkitError(f"constants file not found: {constants_path}")
        if args.reference is not None and not os.path.exists(args.reference):
            raise LambkitError(f"reference file not found: {args.reference}")
        constants = load_constants(constants_path)
        result = COMMANDS[args.command](args, constants)
    except LambkitError as exc:
        print(f"lambkit: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(render(result, fmt))
    return 0


if __name__ == "__main__":
    sys.exit(main())
