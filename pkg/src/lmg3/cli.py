"""Command-line front end: basis reports, spectra, sweeps, phase-diagram exports.

Couplings are given as ``start:stop:step`` ranges (inclusive endpoints) or a
single value; energies and couplings are in units of the level splitting.
Every command that writes files also writes a ``*.config.json`` sidecar with
the fully resolved configuration.  Exit codes: 0 success, 2 usage error,
1 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .basis import (
    IrrepShape,
    dimension,
    enumerate_shapes,
    hw_pattern,
    lw_pattern,
    multiplicity,
)
from .model import ModelParams, build_h3, parity_sector_sizes
from .operators import check_algebra
from .spectral import (
    diagonalize,
    full_tensor_spectrum,
    population_sweep,
    sector_union_spectrum,
    susceptibility_sweep,
)
from .coherent import CoherentPoint, expectation_table, symbols_closed_form, symbols_via_kernel
from .thermo import (
    classify_phase,
    closed_form_energy,
    critical_curves,
    derivative_scan,
    minimize_surface,
    thermo_populations,
)

DIM_CAP_DEFAULT = 10000


def parse_shape(text: str) -> IrrepShape:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"shape must be comma-separated integers, got {text!r}")
    if len(parts) == 2:
        return IrrepShape(parts[0], parts[1], 0, L=2)
    if len(parts) == 3:
        return IrrepShape(*parts)
    raise argparse.ArgumentTypeError("shape needs 2 or 3 row lengths")


def parse_grid(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("ranges are start:stop:step")
    start, stop, step = (float(x) for x in parts)
    if step <= 0:
        raise argparse.ArgumentTypeError("step must be positive")
    if stop < start:
        raise argparse.ArgumentTypeError("stop must be >= start")
    n = int(round((stop - start) / step))
    vals = [start + i * step for i in range(n + 1)]
    return [v for v in vals if v <= stop + 1e-12 * max(1.0, abs(stop))]


def pattern_str(p) -> str:
    return f"{{{p.m13},{p.m23},{p.m33}; {p.m12},{p.m22}; {p.m11}}}"


def write_sidecar(path: str, command: str, config: dict) -> None:
    payload = {"command": command, "version": __version__, "config": config}
    with open(f"{path}.config.json", "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")


def cmd_basis(args) -> int:
    shape = args.shape
    info = {
        "shape": list(shape.rows),
        "N": shape.N,
        "L": shape.L,
        "dim": dimension(shape),
        "mult": multiplicity(shape),
        "hw": pattern_str(hw_pattern(shape)),
        "lw": pattern_str(lw_pattern(shape)),
        "parity_sectors": {
            "".join("+" if s > 0 else "-" for s in lab): n
            for lab, n in sorted(parity_sector_sizes(shape).items(), reverse=True)
        },
    }
    print(f"shape={shape} N={info['N']} L={info['L']} dim={info['dim']} mult={info['mult']}")
    print(f"hw={info['hw']}")
    print(f"lw={info['lw']}")
    for lab, n in info["parity_sectors"].items():
        print(f"parity {lab}: {n}")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(info, fh, indent=1)
            fh.write("\n")
        write_sidecar(args.output, "basis", {"shape": list(shape.rows)})
    return 0


def cmd_spectrum(args) -> int:
    lams = args.lam
    if args.shape:
        shapes = list(args.shape)
    elif args.N:
        shapes = enumerate_shapes(args.N, L=3)
    else:
        print("spectrum: provide --shape or --N", file=sys.stderr)
        return 2
    for shape in shapes:
        if dimension(shape) > args.max_dim:
            print(
                f"spectrum: sector {shape} has dimension {dimension(shape)} > cap "
                f"{args.max_dim}; rerun with --max-dim to override",
                file=sys.stderr,
            )
            return 2
    lines = ["shape,lambda,level,energy"]
    for shape in shapes:
        for lam in lams:
            h = build_h3(shape, ModelParams(lam=lam))
            res = diagonalize(h, k=args.k)
            for level, e in enumerate(res.eigenvalues):
                lines.append(f"\"{shape}\",{lam:.12g},{level},{e:.12g}")
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
        write_sidecar(
            args.output,
            "spectrum",
            {
                "shapes": [list(s.rows) for s in shapes],
                "lambda_grid": lams,
                "k": args.k,
                "max_dim": args.max_dim,
            },
        )
    else:
        sys.stdout.write(text)
    return 0


def _sweep_out_path(base: str, shape, many: bool) -> str:
    if not many:
        return base
    tag = "-".join(str(h) for h in shape.rows)
    if "." in base.rsplit("/", 1)[-1]:
        stem, ext = base.rsplit(".", 1)
        return f"{stem}_{tag}.{ext}"
    return f"{base}_{tag}"


def cmd_sweep(args) -> int:
    if not args.populations_only and args.dlambda <= 0:
        print("sweep: --dlambda must be positive", file=sys.stderr)
        return 2
    many = len(args.shape) > 1
    for shape in args.shape:
        if args.populations_only:
            res = population_sweep(shape, args.lam, threads=args.threads)
        else:
            res = susceptibility_sweep(shape, args.lam, dlambda=args.dlambda, threads=args.threads)
        text = res.to_json() if args.format == "json" else res.to_csv()
        if args.output:
            path = _sweep_out_path(args.output, shape, many)
            with open(path, "w") as fh:
                fh.write(text)
            write_sidecar(
                path,
                "sweep",
                {
                    "shape": list(shape.rows),
                    "lambda_grid": args.lam,
                    "dlambda": args.dlambda,
                    "populations_only": args.populations_only,
                    "format": args.format,
                    "threads": args.threads,
                },
            )
        else:
            sys.stdout.write(text)
    return 0


def cmd_phase(args) -> int:
    mus = args.mu
    lams = args.lam
    for mu in mus:
        if not 0.5 - 1e-9 <= mu <= 1.0 + 1e-9:
            print(f"phase: mu={mu} outside [1/2, 1]", file=sys.stderr)
            return 2
    prefix = args.output
    rows = derivative_scan(mus, lams)
    glines = ["lambda,mu,E,dE_dlambda,dE_dmu,d2E,phase_label"]
    for r in rows:
        glines.append(
            f"{r['lambda']:.12g},{r['mu']:.12g},{r['E']:.12g},{r['dE_dlambda']:.12g},"
            f"{r['dE_dmu']:.12g},{r['d2E_dlambda2']:.12g},{r['phase_label']}"
        )
    with open(f"{prefix}_grid.csv", "w") as fh:
        fh.write("\n".join(glines) + "\n")

    clines = ["mu,boundary,lambda"]
    for mu in mus:
        for name, lc in critical_curves(mu):
            clines.append(f"{mu:.12g},{name},{lc:.12g}")
    with open(f"{prefix}_curves.csv", "w") as fh:
        fh.write("\n".join(clines) + "\n")

    plines = ["lambda,p11,p22,p33"]
    for lam in lams:
        p = thermo_populations(lam)
        plines.append(f"{lam:.12g},{p[0]:.12g},{p[1]:.12g},{p[2]:.12g}")
    with open(f"{prefix}_populations.csv", "w") as fh:
        fh.write("\n".join(plines) + "\n")

    worst = 0.0
    if args.check_minimizer:
        mlines = ["mu,lambda,E_min,E_closed,abs_err,n_minimizers,phase"]
        for mu in mus:
            for lam in lams:
                res = minimize_surface(mu, lam, n_starts=args.starts)
                err = abs(res.energy - res.closed_form)
                worst = max(worst, err)
                mlines.append(
                    f"{mu:.12g},{lam:.12g},{res.energy:.12g},{res.closed_form:.12g},"
                    f"{err:.3e},{len(res.minimizers)},{res.phase_label}"
                )
        with open(f"{prefix}_minimizers.csv", "w") as fh:
            fh.write("\n".join(mlines) + "\n")
        print(f"max |numeric - closed-form| = {worst:.3e}")

    write_sidecar(
        prefix,
        "phase",
        {
            "mu_grid": mus,
            "lambda_grid": lams,
            "check_minimizer": args.check_minimizer,
            "starts": args.starts,
            "threads": args.threads,
        },
    )
    if args.check_minimizer and worst > 1e-6:
        print("phase: minimizer disagrees with closed form beyond 1e-6", file=sys.stderr)
        return 1
    return 0


def cmd_check(args) -> int:
    failures = 0

    def report(name: str, ok: bool, detail: str = ""):
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}" + (f" ({detail})" if detail else ""))
        failures += 0 if ok else 1

    for N, total in ((2, 9), (3, 27), (4, 81)):
        got = sum(multiplicity(s) * dimension(s) for s in enumerate_shapes(N))
        report(f"decomposition N={N}", got == total, f"sum={got}")

    rep = check_algebra(IrrepShape(4, 2, 0))
    report("algebra [4,2,0]", max(rep.max_violation, rep.hermiticity_error, rep.casimir_error) < 1e-10,
           f"max violation {rep.max_violation:.2e}")

    for lam in (0.0, 1.0):
        params = ModelParams(lam=lam)
        full = full_tensor_spectrum(3, params)
        union = sector_union_spectrum(3, params)
        report(f"oracle spectrum N=3 lam={lam}", float(np.max(np.abs(full - union))) < 1e-9)

    rng = np.random.default_rng(7)
    shape = IrrepShape(5, 3, 0)
    worst = 0.0
    for _ in range(10):
        p = CoherentPoint.random(rng)
        sc = symbols_closed_form(shape, p).values
        sk = symbols_via_kernel(shape, p).values
        sm = expectation_table(shape, p).values
        worst = max(worst, float(np.max(np.abs(sc - sk))), float(np.max(np.abs(sc - sm))))
    report("symbol triple agreement [5,3,0]", worst < 1e-8, f"max dev {worst:.2e}")

    from .coherent import cat_state, coherent_vector, parity_map
    from .model import normalized_parity_ops

    shape = IrrepShape(3, 2, 1)
    diags = normalized_parity_ops(shape)
    ok = True
    for _ in range(5):
        p = CoherentPoint.random(rng)
        v = coherent_vector(shape, p)
        for i in (1, 2, 3):
            mp, phase = parity_map(shape, p, i)
            lhs = ((-1.0) ** (shape.rows[i - 1] % 2)) * diags[i - 1] * v
            ok &= np.linalg.norm(phase * lhs - phase * coherent_vector(shape, mp)) < 1e-10
        cat = cat_state(shape, p)
        ok &= all(np.linalg.norm(d * cat - cat) < 1e-10 for d in diags)
    report("parity action [3,2,1]", ok)

    worst = 0.0
    for mu in (0.55, 0.8, 1.0):
        for lam in (0.25, 1.0, 2.0):
            res = minimize_surface(mu, lam, n_starts=8)
            worst = max(worst, abs(res.energy - res.closed_form))
    report("mean-field spot check", worst < 1e-6, f"max err {worst:.2e}")

    print(f"{'OK' if failures == 0 else 'FAILED'}: {failures} failing check(s)")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lmg3",
        description="Three-level LMG toolkit: symmetry sectors, spectra, sweeps, phase diagram.",
    )
    ap.add_argument("--version", action="version", version=f"lmg3 {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("basis", help="sector dimensions, multiplicities, extremal patterns")
    b.add_argument("--shape", type=parse_shape, required=True)
    b.add_argument("-o", "--output", default=None, help="optional JSON report path")
    b.set_defaults(fn=cmd_basis)

    s = sub.add_parser("spectrum", help="eigenvalue curves over a coupling grid")
    s.add_argument("--N", type=int, default=None, help="atom count (all sectors)")
    s.add_argument("--shape", type=parse_shape, action="append", default=None)
    s.add_argument("--lambda", dest="lam", type=parse_grid, required=True)
    s.add_argument("--k", type=int, default=None, help="number of lowest levels (default all)")
    s.add_argument("--max-dim", type=int, default=DIM_CAP_DEFAULT)
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(fn=cmd_spectrum)

    w = sub.add_parser("sweep", help="susceptibility and population sweep of sectors")
    w.add_argument("--shape", type=parse_shape, action="append", required=True)
    w.add_argument("--lambda", dest="lam", type=parse_grid, required=True)
    w.add_argument("--dlambda", type=float, default=0.01)
    w.add_argument("--populations-only", action="store_true")
    w.add_argument("--format", choices=("csv", "json"), default="csv")
    w.add_argument("--threads", type=int, default=1)
    w.add_argument("-o", "--output", default=None)
    w.set_defaults(fn=cmd_sweep)

    ph = sub.add_parser("phase", help="phase-diagram grids, curves, minimizer audit")
    ph.add_argument("--mu", type=parse_grid, required=True)
    ph.add_argument("--lambda", dest="lam", type=parse_grid, required=True)
    ph.add_argument("--check-minimizer", action="store_true")
    ph.add_argument("--starts", type=int, default=32)
    ph.add_argument("--threads", type=int, default=1)
    ph.add_argument("-o", "--output", required=True, help="output path prefix")
    ph.set_defaults(fn=cmd_phase)

    c = sub.add_parser("check", help="run the built-in oracle/property suites")
    c.set_defaults(fn=cmd_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, np.linalg.LinAlgError) as exc:
        print(f"lmg3: numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
