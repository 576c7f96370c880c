"""``tps`` command line: synth, propagate, dispersion, respond, verify,
verify-energy.

Exit codes: 0 success, 1 verification checks failed, 2 invalid input,
3 unexpected runtime failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import excitation, io, network, sequence, verify, waveguide
from .errors import TPSError

log = logging.getLogger("tps")

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_RUNTIME = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _out_paths(out, fmt):
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    data = out.with_suffix(".csv" if fmt == "csv" else ".data.json")
    return data, io.sidecar_path(out)


def _write_sequence(path, seq, fmt):
    if fmt == "csv":
        io.write_sequence_csv(path, seq)
    else:
        io.write_json(path, {"dt_seconds": seq.dt,
                             "values": [float(v) for v in seq.samples]})


def _print_table(rows):
    width = max(len(str(k)) for k, _ in rows)
    for k, v in rows:
        print(f"{str(k):<{width}}  {v}")


# ---------------------------------------------------------------------------
# subcommands


def cmd_synth(args):
    cfg = io.load_json(args.config) if args.config else {}
    if args.kind:
        cfg["kind"] = args.kind
    for name in ("alpha", "r", "tp", "fp", "bt", "carrier_cycles_per_ui"):
        v = getattr(args, name)
        if v is not None:
            cfg[name] = v
    shape, Ns, K = io.shape_from_config(cfg)
    Ns = args.Ns if args.Ns is not None else Ns
    K = args.K if args.K is not None else K
    if Ns is None or K is None:
        raise UsageError("Ns and K are required (flags or config)")
    if args.dt is not None:
        dt = args.dt
    elif args.fs is not None:
        if args.fs <= 0:
            raise UsageError("--fs must be positive")
        dt = 1.0 / args.fs
    else:
        raise UsageError("give --dt or --fs")
    exc = excitation.synth(shape, int(Ns), int(K), dt)
    data, meta = _out_paths(args.out, args.format)
    _write_sequence(data, exc.sequence, args.format)
    io.write_json(meta, {**exc.metadata(), "q": args.q})
    for w in exc.warnings:
        log.warning(w)
    _print_table([("N", exc.N), ("kmax", exc.kmax), ("nbw", io.fmt(exc.nbw)),
                  ("cutoff_hz", io.fmt(exc.cutoff_hz)), ("output", data)])
    return EXIT_OK


def cmd_propagate(args):
    seq = io.read_sequence_csv(args.inp, args.dt)
    spec, mode, q = io.waveguide_from_config(io.load_json(args.config))
    if args.q is not None:
        q = args.q
    out = waveguide.propagate_sequence(seq, mode, spec, q=q, workers=args.workers)
    data, meta = _out_paths(args.out, args.format)
    _write_sequence(data, out, args.format)
    e_in = float(np.sum(seq.samples ** 2))
    ratio = float(np.sum(out.samples ** 2) / e_in) if e_in else 1.0
    notes = []
    if ratio < 1e-6:
        notes.append("excitation lies below cut-off; output is evanescent residue")
        log.warning(notes[-1])
    io.write_metadata(meta, out, q=q, energy_ratio=ratio,
                      cutoff_hz=waveguide.cutoff_frequency(mode, spec),
                      warnings=notes)
    _print_table([("N", out.N), ("q", q), ("energy_ratio", io.fmt(ratio)),
                  ("output", data)])
    return EXIT_OK


def dispersion_table(qs, nbw_min, nbw_max, points, N=20000):
    """Rows ``(nbw, q, p_exact, p_approx)`` on a grid of length ``N``."""
    if not (0 < nbw_min <= nbw_max <= 1) or points < 1:
        raise UsageError("empty NBW range")
    m = np.unique(np.round(np.geomspace(nbw_min, nbw_max, points) * N / 2).astype(int))
    m = m[m >= 1]
    if m.size == 0:
        raise UsageError("empty NBW range")
    rows = []
    for q in qs:
        grid = sequence.build_grid(N, 1.0, q)
        for j in m:
            nbw = 2 * j / N
            p = waveguide.dispersion_error_exact(int(j) + 1, grid)
            approx = waveguide.dispersion_error_approx(nbw, q) if q <= 2 else float("nan")
            rows.append((nbw, q, p, approx))
    return rows


def cmd_dispersion(args):
    qs = [int(v) for v in args.qlist.split(",") if v.strip()]
    if not qs:
        raise UsageError("no recurrence orders given")
    rows = dispersion_table(qs, args.nbw_min, args.nbw_max, args.points)
    data, meta = _out_paths(args.out, args.format)
    if args.format == "csv":
        with open(data, "w") as f:
            f.write("nbw,q,p_exact,p_approx\n")
            for nbw, q, p, a in rows:
                f.write(f"{io.fmt(nbw)},{q},{io.fmt(p)},{io.fmt(a)}\n")
    else:
        io.write_json(data, [dict(zip(("nbw", "q", "p_exact", "p_approx"), r))
                             for r in rows])
    slopes = {}
    for q in qs:
        sel = [(n, p) for n, qq, p, _ in rows if qq == q and p > 0]
        if len(sel) >= 2:
            x, y = np.log(np.array(sel)).T
            slopes[str(q)] = float(np.polyfit(x, y, 1)[0])
    io.write_json(meta, {"slopes": slopes, "rows": len(rows)})
    _print_table([(f"slope q={q}", io.fmt(s)) for q, s in slopes.items()]
                 + [("output", data)])
    return EXIT_OK


def _parse_ports(text, n_ports):
    try:
        out_p, in_p = (int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--ports expects OUT,IN, got {text!r}") from None
    for p in (out_p, in_p):
        if not 1 <= p <= n_ports:
            raise UsageError(f"port {p} does not exist in a {n_ports}-port network")
    return out_p, in_p


def cmd_respond(args):
    seq = io.read_sequence_csv(args.inp, args.dt)
    meta_in = io.read_metadata(io.sidecar_path(args.inp)) or {}
    net = network.read_touchstone(args.touchstone)
    out_p, in_p = _parse_ports(args.ports, net.n_ports)
    q = args.q
    if q is None:
        q = meta_in.get("q")
    if q is None:
        q = waveguide.DEFAULT_Q
    grid = sequence.build_grid(seq.N, seq.dt, q)
    kmax = meta_in.get("kmax")
    k_used = args.k_used
    if k_used is None:
        f_top = grid.w[grid.half - 1] / (2 * np.pi)
        if net.freqs[-1] >= f_top:
            k_used = grid.half
        elif kmax is not None:
            k_used = min(int(kmax) + 1, grid.half)
    transfer = network.resample(net, grid, out_p, in_p, k_used=k_used,
                                remove_delay=args.remove_delay, workers=args.workers)
    out = network.respond(seq, transfer, workers=args.workers)
    data, meta = _out_paths(args.out, args.format)
    _write_sequence(data, out, args.format)
    report = {"kmax": kmax, "nbw": meta_in.get("nbw"), "kl": None,
              "N": out.N, "dt_seconds": out.dt, "q": q,
              "ports": [out_p, in_p], "notes": list(transfer.notes)}
    if args.reference:
        ref = io.read_sequence_values(args.reference)
        report["kl"] = network.kl_divergence(out, ref)
    io.write_json(meta, report)
    _print_table([(k, report[k]) for k in ("kmax", "nbw", "kl")] + [("output", data)])
    return EXIT_OK


def cmd_verify(args):
    if args.command == "verify-energy":
        rng = np.random.default_rng(0)
        checks = [verify.check_energy(rng, trials=100, fault=args.fault)]
    else:
        checks = verify.run_checks(fault=args.fault, workers=args.workers)
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:<{width}}  residual={c.residual:.3e}  "
              f"tol={c.tolerance:.1e}")
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        io.write_json(args.out, {"passed": all(c.passed for c in checks),
                                 "checks": [c.as_dict() for c in checks]})
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="tps", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_out=True):
        if needs_out:
            sp.add_argument("--out", required=True,
                            help="output path; a .json sidecar is written next to it")
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--workers", type=int, default=1,
                        help="parallel workers over w-domain indices (0 = all cores)")

    s = sub.add_parser("synth", help="periodic excitation from a pulse shape")
    s.add_argument("--config", help="shape JSON")
    s.add_argument("--kind", choices=("raised-cosine", "trapezoid", "gaussian",
                                      "modulated-gaussian"))
    for name in ("alpha", "r", "tp", "fp", "bt", "carrier-cycles-per-ui"):
        s.add_argument(f"--{name}", type=float, dest=name.replace("-", "_"))
    s.add_argument("--Ns", type=int)
    s.add_argument("--K", type=int)
    s.add_argument("--dt", type=float, help="time step in seconds")
    s.add_argument("--fs", type=float, help="sampling rate in Hz (sets dt = 1/fs)")
    s.add_argument("--q", type=int, default=waveguide.DEFAULT_Q)
    common(s)
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("propagate", help="send a sequence through a waveguide")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--config", required=True, help="waveguide JSON")
    s.add_argument("--dt", type=float)
    s.add_argument("--q", type=int)
    common(s)
    s.set_defaults(func=cmd_propagate)

    s = sub.add_parser("dispersion", help="dispersion error versus NBW")
    s.add_argument("--q", dest="qlist", default="0,1,2",
                   help="comma-separated recurrence orders")
    s.add_argument("--nbw-min", type=float, default=0.02)
    s.add_argument("--nbw-max", type=float, default=0.2)
    s.add_argument("--points", type=int, default=10)
    common(s)
    s.set_defaults(func=cmd_dispersion)

    s = sub.add_parser("respond", help="periodic response of a measured network")
    s.add_argument("--in", dest="inp", required=True)
    s.add_argument("--touchstone", required=True)
    s.add_argument("--ports", default="2,1", help="OUT,IN (1-based)")
    s.add_argument("--reference", help="reference waveform CSV for the KL report")
    s.add_argument("--dt", type=float)
    s.add_argument("--q", type=int)
    s.add_argument("--k-used", type=int, dest="k_used")
    s.add_argument("--remove-delay", type=float, default=0.0,
                   help="fixture delay in seconds to de-embed")
    common(s)
    s.set_defaults(func=cmd_respond)

    s = sub.add_parser("verify", help="run the invariant checks")
    s.add_argument("--fault", choices=("symmetry",), help=argparse.SUPPRESS)
    s.add_argument("--out", help="JSON report path")
    common(s, needs_out=False)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("verify-energy", help="run only the energy identity check")
    s.add_argument("--fault", choices=("symmetry",), help=argparse.SUPPRESS)
    s.add_argument("--out", help="JSON report path")
    common(s, needs_out=False)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if getattr(args, "workers", 1) < 0:
            raise UsageError("--workers must be >= 0")
        return args.func(args)
    except (UsageError, TPSError, FileNotFoundError, KeyError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        log.debug("unexpected failure", exc_info=True)
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
