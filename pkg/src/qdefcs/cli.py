"""Command-line interface: ``qdefcs {scan-t,scan-z,gup,verify,report}``."""
import argparse
import json
import sys

from . import gup
from .errors import ConfigError, InvalidDeformation, InvalidGupParams, NonConvergent, OutOfDisc
from .harness.rowio import rows_to_csv, rows_to_json
from .harness.scan import DEFAULT_SCAN_TOLERANCE, Observable, ScanConfig, scan_t, scan_z
from .harness.verify import Profile, verify
from .observables import Phase, observable_report
from .qcore import DEFAULT_GUARD

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

FIGURES = {
    "fig1": dict(observable=Observable.MANDEL, phase=Phase.REAL_Z),
    "fig2": dict(observable=Observable.VARIANCE_RATIO, phase=Phase.IMAG_Z),
}


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _serialize(rows, fmt):
    return rows_to_csv(rows) if fmt == "csv" else rows_to_json(rows)


def _add_output(p):
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qdefcs",
        description="Observables of maths-type q-deformed coherent states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan-t", help="scan an observable over t = |z|^2")
    p.add_argument("--q", type=float, action="append", help="deformation parameter (repeatable)")
    p.add_argument("--t-start", type=float, default=0.0)
    p.add_argument("--t-stop", type=float, default=10.0)
    p.add_argument("--t-count", type=int, default=200)
    p.add_argument("--phase", choices=[ph.value for ph in Phase], default=None)
    p.add_argument("--observable", choices=[o.value for o in Observable], default=None)
    p.add_argument("--figure", choices=sorted(FIGURES),
                   help="preset: fig1 = Mandel parameter, fig2 = variance ratio at imaginary z")
    p.add_argument("--tol", type=float, default=DEFAULT_SCAN_TOLERANCE)
    p.add_argument("--guard", type=float, default=DEFAULT_GUARD)
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("scan-z", help="polar scan of the signal-to-noise ratio")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--nr", type=int, default=50)
    p.add_argument("--nphi", type=int, default=50)
    p.add_argument("--r-max", type=float, default=None, help="outer radius in |z| (required for q >= 1)")
    p.add_argument("--tol", type=float, default=DEFAULT_SCAN_TOLERANCE)
    p.add_argument("--guard", type=float, default=0.9)
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p)

    p = sub.add_parser("gup", help="deformed commutator -> q mapping")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=1.0)

    p = sub.add_parser("verify", help="run the verification suite")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--fast", dest="profile", action="store_const", const=Profile.FAST)
    group.add_argument("--strict", dest="profile", action="store_const", const=Profile.STRICT)
    p.set_defaults(profile=Profile.FAST)

    p = sub.add_parser("report", help="all observables at one point, as JSON")
    p.add_argument("--q", type=float, required=True)
    p.add_argument("--z", type=complex, required=True, help="complex z, e.g. 0.4+0.3j")
    p.add_argument("--tol", type=float, default=1e-16)
    p.add_argument("--guard", type=float, default=DEFAULT_GUARD)
    return parser


def _cmd_scan_t(args):
    preset = FIGURES.get(args.figure, {})
    config = ScanConfig(
        q_list=tuple(args.q) if args.q else ScanConfig.q_list,
        t_start=args.t_start,
        t_stop=args.t_stop,
        t_count=args.t_count,
        phase=args.phase or preset.get("phase", Phase.IMAG_Z),
        observable=args.observable or preset.get("observable", Observable.MANDEL),
        tolerance=args.tol,
        guard=args.guard,
        jobs=args.jobs,
    )
    _emit(_serialize(scan_t(config), args.format), args.out)
    return EXIT_OK


def _cmd_scan_z(args):
    rows = scan_z(args.q, (args.nr, args.nphi), args.tol, guard=args.guard, r_max=args.r_max,
                  jobs=args.jobs)
    _emit(_serialize(rows, args.format), args.out)
    return EXIT_OK


def _cmd_gup(args):
    params = gup.GupParameters(args.alpha, args.beta, args.hbar, args.m, args.omega)
    q = gup.q_from_alpha_beta(params)
    payload = {
        "q": q.q,
        "effective_frequency": gup.effective_frequency(q, params.omega),
        "isotropy_mismatch": gup.check_isotropy(params),
        "minimal_uncertainty": gup.minimal_uncertainty_exists(params.alpha, params.beta),
    }
    sys.stdout.write(json.dumps(payload, indent=1) + "\n")
    return EXIT_OK


def _cmd_verify(args):
    report = verify(args.profile)
    for line in report.lines():
        print(line)
    failed = sum(not c.passed for c in report.checks)
    print(f"{len(report.checks) - failed}/{len(report.checks)} checks passed ({args.profile.value})")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def _cmd_report(args):
    rep = observable_report(args.q, args.z, args.tol, guard=args.guard)
    sys.stdout.write(json.dumps(rep.to_dict(), indent=1) + "\n")
    return EXIT_OK


COMMANDS = {
    "scan-t": _cmd_scan_t,
    "scan-z": _cmd_scan_z,
    "gup": _cmd_gup,
    "verify": _cmd_verify,
    "report": _cmd_report,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (OutOfDisc, NonConvergent) as exc:
        print(f"qdefcs: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, InvalidDeformation, InvalidGupParams, ValueError) as exc:
        print(f"qdefcs: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
