"""Command-line front end.

Verbs: ``mesh``, ``build``, ``check``, ``eval``, ``attractor``,
``integrate``, ``reproduce``.  Options may also come from a JSON file
given with ``--config``; flags on the command line win.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from .bernstein import Triangle
from .errors import FractalError
from .fif1d import build_ifs_1d, chaos_game_1d, check_hyperbolic_1d, eval_fif_1d
from .fif2d import DEFAULT_ALPHA_2D, build_ifs_2d, chaos_game_2d, check_hyperbolic_2d, eval_fif_2d
from .io import export_attractor, ingest_dataset, write_table
from .presets import FIELDS, SIGNALS
from .quad1d import integrate_fif_1d
from .quad2d import integrate_fif_2d
from .reproduce import DEFAULT_ALPHA_1D, TARGETS, reproduce
from .trimesh import attach_samples, dump_mesh_csv, partition

DEFAULTS: Dict[str, Any] = {
    "mode": "1d", "degree": 1, "alpha": None, "d": 4, "seed": 0, "n_points": 10000,
    "burn_in": 100, "K": 20, "tol": 1e-6, "epsilon": None, "iters": None,
    "input": None, "output": None, "format": None, "domain": None, "field": None,
    "at": None, "sweep": False, "include_large": False, "oracle": None,
}

MODES = {"fif1d": "1d", "quad1d": "1d", "fif2d": "2d", "quad2d": "2d"}


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON file with option values")
    p.add_argument("--mode", choices=["1d", "2d", *MODES], default=None)
    p.add_argument("-i", "--input", default=None, help="dataset (1d p,q CSV; 2d mesh or x,y,z CSV)")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--format", choices=["csv", "json", "svg"], default=None)
    p.add_argument("-m", "--degree", type=int, default=None)
    p.add_argument("--alpha", type=float, nargs="+", default=None,
                   help="vertical scaling (one value, or one per map)")
    p.add_argument("-d", type=int, default=None, help="subdivision parameter")
    p.add_argument("--domain", type=float, nargs=6, default=None, metavar="C",
                   help="x1 y1 x2 y2 x3 y3")
    p.add_argument("--field", choices=sorted(FIELDS), default=None,
                   help="sample a bundled field instead of reading --input")
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--iters", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bernfractal",
                                 description="Bernstein fractal interpolation and quadrature")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mesh", help="partition a triangle and write the mesh CSV")
    _common(p)

    for name, desc in (("build", "print the IFS coefficients"),
                       ("check", "hyperbolicity report"),
                       ("integrate", "fractal quadrature report")):
        p = sub.add_parser(name, help=desc)
        _common(p)
        if name == "integrate":
            p.add_argument("--oracle", type=float, default=None, help="reference value to compare with")

    p = sub.add_parser("eval", help="evaluate the FIF at points")
    _common(p)
    p.add_argument("--at", type=float, nargs="+", default=None,
                   help="abscissae (1d) or x y pairs (2d)")

    p = sub.add_parser("attractor", help="sample the attractor with the chaos game")
    _common(p)
    p.add_argument("-n", "--n-points", dest="n_points", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--burn-in", dest="burn_in", type=int, default=None)

    p = sub.add_parser("reproduce", help="comparison table for a bundled example")
    _common(p)
    p.add_argument("target", choices=TARGETS)
    p.add_argument("--sweep", action="store_true", default=None,
                   help="also sweep uniform alpha over [0, 0.1] (signal targets)")
    p.add_argument("--include-large", dest="include_large", action="store_true", default=None,
                   help="add the d = 49 row (field targets)")
    p.add_argument("-K", type=int, default=None, help="series truncation depth")
    p.add_argument("--tol", type=float, default=None, help="reference quadrature tolerance")
    return ap


def resolve_config(args: argparse.Namespace) -> Dict[str, Any]:
    """Defaults, then the JSON config, then explicit flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        with open(args.config) as fh:
            loaded = json.load(fh)
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        cfg.update(loaded)
    for k, v in vars(args).items():
        if k in cfg and v is not None:
            cfg[k] = v
    cfg["mode"] = MODES.get(cfg["mode"], cfg["mode"])
    if cfg["field"] is not None:
        cfg["mode"] = "2d"
    if isinstance(cfg["alpha"], list) and len(cfg["alpha"]) == 1:
        cfg["alpha"] = cfg["alpha"][0]
    return cfg


# --------------------------------------------------------------------------
# loading
# --------------------------------------------------------------------------

def _domain(cfg):
    if cfg["domain"] is not None:
        c = cfg["domain"]
        return Triangle((c[0], c[1]), (c[2], c[3]), (c[4], c[5]))
    if cfg["field"] is not None:
        return FIELDS[cfg["field"]].domain
    return None


def load_partition(cfg):
    if cfg["field"] is not None:
        prob = FIELDS[cfg["field"]]
        return attach_samples(partition(_domain(cfg), cfg["d"]), prob.fn)
    if cfg["input"] is None:
        raise ValueError("2d commands need --input or --field")
    return ingest_dataset(cfg["input"], "2d", _domain(cfg), cfg["d"])


def load_system(cfg):
    if cfg["mode"] == "1d":
        if cfg["input"] is None:
            raise ValueError("1d commands need --input")
        data = ingest_dataset(cfg["input"], "1d")
        alpha = DEFAULT_ALPHA_1D if cfg["alpha"] is None else cfg["alpha"]
        return build_ifs_1d(data, alpha, cfg["degree"])
    alpha = DEFAULT_ALPHA_2D if cfg["alpha"] is None else cfg["alpha"]
    return build_ifs_2d(load_partition(cfg), alpha, cfg["degree"])


def _emit(obj, cfg, out):
    text = json.dumps(obj, indent=2)
    if cfg["output"]:
        Path(cfg["output"]).write_text(text + "\n")
    else:
        print(text, file=out)


# --------------------------------------------------------------------------
# verbs
# --------------------------------------------------------------------------

def cmd_mesh(cfg, out):
    dom = _domain(cfg)
    if dom is None:
        raise ValueError("mesh needs --domain or --field")
    part = partition(dom, cfg["d"])
    if cfg["field"] is not None:
        part = attach_samples(part, FIELDS[cfg["field"]].fn)
    if cfg["output"] is None:
        raise ValueError("mesh needs --output")
    dump_mesh_csv(part, cfg["output"])
    print(f"{part.n_vertices} vertices, {part.n_triangles} triangles -> {cfg['output']}", file=out)


def cmd_build(cfg, out):
    sys_ = load_system(cfg)
    if cfg["mode"] == "1d":
        maps = [{"a": w.a, "b": w.b, "A": w.A, "B": w.B, "alpha": w.alpha,
                 "correction": list(w.correction)} for w in sys_.maps]
        doc = {"degree": sys_.degree, "bernstein_nodes": list(sys_.bern_nodes.values), "maps": maps}
    else:
        maps = [{"L": [w.L.a11, w.L.a12, w.L.a21, w.L.a22, w.L.b1, w.L.b2],
                 "alpha": w.alpha, "plane": list(w.plane)} for w in sys_.maps]
        b = sys_.bern
        doc = {"degree": sys_.degree, "bernstein": {"K": b.K, "M": b.M, "O": b.O,
                                                     "P": b.P, "T": b.T, "U": b.U},
               "maps": maps}
    _emit(doc, cfg, out)


def cmd_check(cfg, out):
    sys_ = load_system(cfg)
    check = check_hyperbolic_1d if cfg["mode"] == "1d" else check_hyperbolic_2d
    rep = check(sys_, cfg["epsilon"])
    _emit({"theta": rep.theta, "ratio": rep.ratio, "hyperbolic": rep.hyperbolic,
           "epsilon": rep.epsilon}, cfg, out)


def cmd_eval(cfg, out):
    sys_ = load_system(cfg)
    if not cfg["at"]:
        raise ValueError("eval needs --at")
    if cfg["mode"] == "1d":
        pts = np.asarray(cfg["at"], dtype=float)
        vals, bound = eval_fif_1d(sys_, pts, cfg["iters"], return_bound=True)
        rows = [{"p": float(p), "value": float(v)} for p, v in zip(pts, vals)]
    else:
        pts = np.asarray(cfg["at"], dtype=float).reshape(-1, 2)
        vals, bound = eval_fif_2d(sys_, pts, cfg["iters"], return_bound=True)
        rows = [{"x": float(x), "y": float(y), "value": float(v)} for (x, y), v in zip(pts, vals)]
    _emit({"iteration_bound": bound, "values": rows}, cfg, out)


def cmd_attractor(cfg, out):
    sys_ = load_system(cfg)
    game = chaos_game_1d if cfg["mode"] == "1d" else chaos_game_2d
    cloud = game(sys_, cfg["n_points"], seed=cfg["seed"], burn_in=cfg["burn_in"])
    if cfg["output"] is None:
        raise ValueError("attractor needs --output")
    path = export_attractor(cloud, cfg["output"], cfg["format"])
    print(f"{len(cloud)} points -> {path}", file=out)


def cmd_integrate(cfg, out):
    sys_ = load_system(cfg)
    rep = (integrate_fif_1d if cfg["mode"] == "1d" else integrate_fif_2d)(sys_, cfg["oracle"])
    _emit({"fractal_value": rep.fractal_value, "oracle_value": rep.oracle_value,
           "abs_error": rep.abs_error, "denominator": rep.denominator,
           "ill_conditioned": rep.ill_conditioned, "degree": rep.degree,
           "n_pieces": rep.n_pieces}, cfg, out)


def _print_table(rows, out):
    if not rows:
        return
    cols = list(rows[0])
    print("  ".join(f"{c:>14}" for c in cols), file=out)
    for r in rows:
        cells = []
        for c in cols:
            v = r[c]
            if isinstance(v, float):
                cells.append(f"{v:>14.4e}" if v != 0 and (abs(v) >= 1e4 or abs(v) < 1e-3)
                             else f"{v:>14.4f}")
            else:
                cells.append(f"{v!s:>14}")
        print("  ".join(cells), file=out)


def cmd_reproduce(cfg, out, target):
    if target in SIGNALS:
        kw = {"alpha": DEFAULT_ALPHA_1D if cfg["alpha"] is None else cfg["alpha"],
              "K": cfg["K"], "sweep": bool(cfg["sweep"]), "tol": cfg["tol"]}
    else:
        kw = {"alpha": DEFAULT_ALPHA_2D if cfg["alpha"] is None else cfg["alpha"],
              "include_large": bool(cfg["include_large"])}
    rows, header, extra = reproduce(target, **kw)
    if extra is not None:
        header["best_grid_error"] = extra["best_grid_error"]
    _print_table(rows, out)
    for k, v in header.items():
        print(f"# {k}: {v}", file=out)
    if cfg["output"]:
        write_table(rows, cfg["output"], header, cfg["format"])


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "reproduce":
            cmd_reproduce(cfg, out, args.target)
        else:
            {"mesh": cmd_mesh, "build": cmd_build, "check": cmd_check, "eval": cmd_eval,
             "attractor": cmd_attractor, "integrate": cmd_integrate}[args.command](cfg, out)
    except (FractalError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
