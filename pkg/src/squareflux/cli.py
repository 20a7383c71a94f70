"""Command line front end.

Exit status is 0 on success, 1 on a domain error (the module-qualified error
code goes to stderr) and 2 on a usage error.  Output depends only on the
inputs.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import builders
from .curves import format_curves, parse_curves, polyline_from_traversal
from .errors import SquareFluxError
from .flux import flux, full_report
from .homology import build_frame
from .rational import format_q
from .surface import area, cylinders, faces, format_surface, genus, parse_surface
from .twists import parse_word, pa_certificate


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    surface: str | None
    word: str | None
    curve: str | None
    json: bool
    seed_perturbation: int | None
    out_dir: str | None = None


# -- input helpers ---------------------------------------------------------------

def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _surface(cfg):
    return parse_surface(_read(cfg.surface))


def _word(cfg, c):
    if cfg.word is None:
        raise UsageError(f"{cfg.subcommand} needs -w/--word")
    return parse_word(cfg.word, c)


def _curve(cfg, c):
    """The curve file as a 1-cycle; several blocks are added up."""
    trs = parse_curves(_read(cfg.curve))
    return tuple((polyline_from_traversal(c, t), 1) for t in trs), trs


def _frame(cfg, c):
    return build_frame(c, cfg.seed_perturbation)


def _fv(v):
    return {"raw": format_q(v.raw), "reduced": format_q(v.reduced)}


def _matrix_lines(m, indent="  "):
    return [indent + "[" + ", ".join(str(x) for x in row) + "]" for row in m]


# -- subcommands -----------------------------------------------------------

def _summary(c):
    fs = faces(c)
    return {
        "squares": c.n_squares,
        "genus": genus(c),
        "faces": len(fs),
        "face_half_sizes": sorted(f.half_size for f in fs),
        "alpha_widths": [cyl.width for cyl in c.cylinders_by_family["alpha"]],
        "beta_widths": [cyl.width for cyl in c.cylinders_by_family["beta"]],
        "intersections": c.intersection_counts(),
    }


def cmd_validate(cfg, out):
    c = _surface(cfg)
    g = genus(c)
    if cfg.json:
        return {"valid": True, "squares": c.n_squares, "genus": g}
    out.append(f"valid: N = {c.n_squares}, genus {g}")


def cmd_info(cfg, out):
    c = _surface(cfg)
    s = _summary(c)
    s["cylinders"] = [
        {"name": cyl.name, "family": cyl.family, "width": cyl.width, "squares": list(cyl.squares)}
        for cyl in cylinders(c)
    ]
    s["area_per_square"] = format_q(area(c, 1))
    if cfg.json:
        return s
    out.append(f"squares: {s['squares']}")
    out.append(f"genus: {s['genus']}")
    out.append(f"faces: {s['faces']} (half-sizes {' '.join(map(str, s['face_half_sizes']))})")
    for cyl in s["cylinders"]:
        out.append(f"cylinder {cyl['name']} ({cyl['family']}): width {cyl['width']}")
    out.append("intersections (alpha rows, beta columns):")
    out.extend(_matrix_lines(s["intersections"]))
    out.append(f"area per square: {s['area_per_square']}")


def cmd_homology(cfg, out):
    c = _surface(cfg)
    f = _frame(cfg, c)
    classes = {name: list(v) for name, v in f.core_classes.items()}
    if cfg.curve:
        cyc, trs = _curve(cfg, c)
        for (pl, _), tr in zip(cyc, trs):
            classes[tr.name or "curve"] = list(f.class_of(pl))
    if cfg.json:
        return {"rank": f.rank, "spanning_cycles": len(f.cycles), "form": [list(r) for r in f.form],
                "classes": classes}
    out.append(f"rank: {f.rank}")
    out.append(f"spanning cycles: {len(f.cycles)}")
    out.append("intersection form on the basis:")
    out.extend(_matrix_lines(f.form))
    for name, v in classes.items():
        out.append(f"class {name}: ({', '.join(map(str, v))})")


def _pa_json(pa):
    d = {
        "verdict": pa.verdict,
        "blocks": [
            {"family": b.family, "letters": [[n, k] for n, k in b.letters], "shears": list(b.shears),
             "uniform": b.uniform}
            for b in pa.blocks
        ],
    }
    if pa.matrix is not None:
        d["matrix"] = [list(r) for r in pa.matrix]
        d["trace"] = pa.trace
        d["charpoly"] = list(pa.charpoly)
    if pa.dilatation is not None:
        lam = pa.dilatation
        d["dilatation"] = {
            "rational": format_q(lam.rational), "sqrt_coeff": format_q(lam.coeff), "radicand": lam.radicand,
            "approx": pa.dilatation_approx,
        }
        d["unstable_slope"] = _quad_json(pa.unstable_slope)
        d["stable_slope"] = _quad_json(pa.stable_slope)
    return d


def _quad_json(q):
    return {"rational": format_q(q.rational), "sqrt_coeff": format_q(q.coeff), "radicand": q.radicand}


def _pa_lines(pa):
    lines = []
    for b in pa.blocks:
        letters = "*".join(f"{n}^{k}" for n, k in b.letters)
        note = f"uniform, shear {b.shear}" if b.uniform else "non-uniform, shears " + " ".join(map(str, b.shears))
        lines.append(f"block {b.family} {letters}: {note}")
    if pa.matrix is not None:
        lines.append("matrix:")
        lines.extend(_matrix_lines(pa.matrix))
        lines.append(f"trace: {pa.trace}")
        lines.append(f"characteristic polynomial: x^2 {pa.charpoly[1]:+d}x {pa.charpoly[2]:+d}")
    if pa.dilatation is not None:
        lam = pa.dilatation
        lines.append(f"dilatation: {format_q(lam.rational)} + {format_q(lam.coeff)}*sqrt({lam.radicand})"
                     f" ~ {pa.dilatation_approx!r}")
    lines.append(f"verdict: {pa.verdict}")
    return lines


def cmd_pa_check(cfg, out):
    c = _surface(cfg)
    w = _word(cfg, c)
    pa = pa_certificate(c, w)
    if cfg.json:
        return {"word": str(w), **_pa_json(pa)}
    out.append(f"word: {w}")
    out.extend(_pa_lines(pa))


def cmd_flux(cfg, out):
    c = _surface(cfg)
    w = _word(cfg, c)
    if cfg.curve is None:
        raise UsageError("flux needs -c/--curve")
    cyc, _ = _curve(cfg, c)
    f = _frame(cfg, c)
    v = flux(c, f, cyc, w)
    if cfg.json:
        return {"word": str(w), "class": list(f.class_of(cyc)), "flux": _fv(v)}
    out.append(f"word: {w}")
    out.append(f"class: ({', '.join(map(str, f.class_of(cyc)))})")
    out.append(f"flux: {format_q(v.reduced)} (raw {format_q(v.raw)})")


def cmd_report(cfg, out):
    c = _surface(cfg)
    w = _word(cfg, c)
    f = _frame(cfg, c)
    r = full_report(c, f, w)
    curve_val = None
    if cfg.curve:
        cyc, _ = _curve(cfg, c)
        curve_val = flux(c, f, cyc, w)
    if cfg.json:
        d = {
            "word": str(w),
            "action": [list(row) for row in r.action],
            "torelli": r.torelli,
            "kernel": [list(k) for k in r.kernel],
            "flux_on_kernel": [_fv(v) for v in r.values],
            "flux_nonzero": r.nonzero,
            "pa": _pa_json(r.pa),
            "realizability": {
                "verdict": r.realizability.verdict,
                "det_h_minus_id": r.realizability.det_h_minus_id,
                "notes": list(r.realizability.notes),
            },
        }
        if curve_val is not None:
            d["curve_flux"] = _fv(curve_val)
        return d
    out.append(f"word: {w}")
    out.append("action on H1:")
    out.extend(_matrix_lines(r.action))
    out.append(f"Torelli: {'yes' if r.torelli else 'no'}")
    out.append(f"invariant sublattice K: rank {len(r.kernel)}")
    for k, v in zip(r.kernel, r.values):
        out.append(f"  flux on ({', '.join(map(str, k))}): {format_q(v.reduced)} (raw {format_q(v.raw)})")
    out.append(f"flux homomorphism: {'nonzero' if r.nonzero else 'zero'}")
    if curve_val is not None:
        out.append(f"flux: {format_q(curve_val.reduced)} (raw {format_q(curve_val.raw)})")
    out.extend(_pa_lines(r.pa))
    out.append(f"realizability: {r.realizability.verdict}")
    out.append(f"det(h_* - id): {r.realizability.det_h_minus_id}")
    for note in r.realizability.notes:
        out.append(f"note: {note}")


def cmd_examples(cfg, out):
    d = Path(cfg.out_dir)
    try:
        d.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise UsageError(f"cannot create {d}: {e.strerror}") from None
    files = {
        "torus.sq": format_surface(builders.torus()),
        "torus.word": str(builders.torus_word()) + "\n",
        "genus2.sq": format_surface(builders.genus2_block()),
        "genus2.word": str(builders.genus2_word()) + "\n",
        "genus5.sq": format_surface(builders.genus5_surface()),
        "genus5.word": str(builders.genus5_word()) + "\n",
        "gamma.curve": format_curves([builders.gamma()]),
        "gamma0.curve": format_curves([builders.gamma_preimage()]),
    }
    for name, text in files.items():
        (d / name).write_text(text, encoding="utf-8")
    if cfg.json:
        return {"written": sorted(files)}
    for name in sorted(files):
        out.append(f"wrote {d / name}")


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "homology": cmd_homology,
    "pa-check": cmd_pa_check,
    "flux": cmd_flux,
    "report": cmd_report,
    "examples": cmd_examples,
}


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--word", help='twist word, e.g. "a1^9*b1^-9"')
    common.add_argument("-c", "--curve", help="curve file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed-perturbation", type=_positive, metavar="INT",
                        help="denominator for perturbing the spanning cycles")
    p = argparse.ArgumentParser(prog="squareflux", description="Flux of affine twist words on square-tiled surfaces.")
    sub = p.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "examples":
            sp.add_argument("out_dir", metavar="DIR")
        else:
            sp.add_argument("surface", metavar="SURFACE")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    cfg = RunConfig(ns.subcommand, getattr(ns, "surface", None), ns.word, ns.curve, ns.json,
                    ns.seed_perturbation, getattr(ns, "out_dir", None))
    out = []
    try:
        data = COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as e:
        print(f"usage error: {e}", file=stderr)
        return 2
    except SquareFluxError as e:
        print(f"error: {e}", file=stderr)
        return 1
    if cfg.json:
        stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        stdout.write("\n".join(out) + "\n")
    return 0


def main():
    sys.exit(run())
