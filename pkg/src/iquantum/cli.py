"""Command line: compute dual canonical basis tables and run verification suites."""

import argparse
import hashlib
import os
import sys

from . import suites
from .cartan import satake
from .dcb import (ConventionError, TriangularityError, check_conventions, dcb_double,
                  dcb_iquantum)

DEFAULTS = {
    "cartan": "A2",
    "tau": "",
    "max_height": "4",
    "double": "",
    "word": "",
    "route": "dcb",
    "format": "text",
    "out": "",
    "seed": "0",
    "suites": "all",
}

SUITES = ["serre", "pairing", "star-assoc", "braid", "rel-braid", "k-matrix", "thm-3-match",
          "dcb-symmetries", "appendix-a", "double-coincide", "positivity"]

CACHE_ENV = "IQUANTUM_CACHE_DIR"


def read_config(path):
    """Flat key = value lines; '#' starts a comment; dashes in keys become underscores."""
    cfg = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected key = value" % (path, n))
            k, v = line.split("=", 1)
            k = k.strip().replace("-", "_")
            if k not in DEFAULTS:
                raise ValueError("%s:%d: unknown key %r" % (path, n, k))
            cfg[k] = v.strip().strip('"')
    return cfg


def resolve(args):
    cfg = dict(DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for k in DEFAULTS:
        val = getattr(args, k, None)
        if val is not None and val != [] :
            cfg[k] = " ".join(val) if isinstance(val, list) else str(val)
    h = int(cfg["max_height"])
    if h <= 0:
        raise ValueError("height bound must be positive")
    cfg["max_height"] = h
    cfg["seed"] = int(cfg["seed"])
    return cfg


def _word(text):
    if not text:
        return None
    return tuple(int(x) - 1 for x in text.replace(",", " ").split())


def render(cfg):
    if cfg["double"]:
        table = dcb_double(satake(cfg["double"]), cfg["max_height"])
    else:
        S = satake(cfg["cartan"], cfg["tau"] or None)
        table = dcb_iquantum(S, cfg["max_height"], route=cfg["route"], word=_word(cfg["word"]))
    fmt = cfg["format"]
    if fmt == "json":
        return table.to_json() + "\n"
    if fmt == "latex":
        return table.to_latex()
    if fmt == "text":
        return table.to_text()
    raise ValueError("unknown format %r" % fmt)


def cmd_compute(cfg):
    check_conventions()
    keys = ("cartan", "tau", "max_height", "double", "word", "route", "format")
    ident = "|".join("%s=%s" % (k, cfg[k]) for k in keys)
    cache = os.environ.get(CACHE_ENV)
    path = None
    text = None
    if cache:
        path = os.path.join(cache, hashlib.sha256(ident.encode()).hexdigest()[:24] + ".out")
        if os.path.exists(path):
            with open(path) as fh:
                text = fh.read()
    if text is None:
        text = render(cfg)
        if path:
            os.makedirs(cache, exist_ok=True)
            with open(path, "w") as fh:
                fh.write(text)
    if cfg["out"]:
        with open(cfg["out"], "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def run_suite(name, cfg):
    S = satake(cfg["cartan"], cfg["tau"] or None)
    h = cfg["max_height"]
    seed = cfg["seed"]
    if name == "serre":
        return [suites.double_relations(S)]
    if name == "pairing":
        return [suites.kostant(S, h), suites.r_multiplicative(S, h), suites.pairing(S, h)]
    if name == "star-assoc":
        return [suites.star_assoc(S, seed=seed), suites.bar_checks(S, seed=seed),
                suites.xi_multiplicative(S, seed=seed)]
    if name == "braid":
        return [suites.braid(S)]
    if name == "rel-braid":
        return [suites.rel_braid(S)]
    if name == "k-matrix":
        return [suites.k_matrix(S, h)]
    if name == "thm-3-match":
        i = next((k for k in range(S.n) if S.tau[k] != k), 0)
        return [suites.thm3_match(S, i, seed=seed), suites.generation(S, i, min(h, 4))]
    if name == "dcb-symmetries":
        return [suites.dcb_symmetries(S, h)]
    if name == "appendix-a":
        return [suites.appendix_a(h, "delta"), suites.appendix_a(h, "plain")]
    if name == "double-coincide":
        return [suites.double_coincide(satake(cfg["cartan"]), h)]
    if name in ("positivity", "positivity-report"):
        table = dcb_iquantum(S, h)
        return [suites.positivity(table, S.name)]
    raise ValueError("unknown suite %r" % name)


def cmd_verify(cfg):
    check_conventions()
    names = cfg["suites"].replace(",", " ").split()
    if names == ["all"]:
        names = SUITES
    code = 0
    for name in names:
        for res in run_suite(name, cfg):
            print(res.line())
            if not res.ok and not res.report_only:
                code = 1
    return code


def build_parser():
    p = argparse.ArgumentParser(prog="iquantum",
                                description="Dual canonical bases of quasi-split iquantum groups")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--cartan", help="Cartan type, e.g. A2, B2, A1xA1")
        sp.add_argument("--tau", help="diagram involution in cycle notation, e.g. '1:2'")
        sp.add_argument("--max-height", "--max", "--max-wt", dest="max_height", type=int,
                        help="bound on the total height of weights")
        sp.add_argument("--seed", type=int, help="seed for randomized checks")
        sp.add_argument("--config", help="flat key = value config file")

    c = sub.add_parser("compute", help="compute a dual canonical basis table")
    common(c)
    c.add_argument("--double", help="compute the double of this type instead")
    c.add_argument("--word", help="reduced word of w0 for the dual PBW basis, e.g. '1,2,1'")
    c.add_argument("--route", choices=["dcb", "pbw"])
    c.add_argument("--format", choices=["text", "json", "latex"])
    c.add_argument("--out", help="write to this file instead of stdout")

    vp = sub.add_parser("verify", help="run verification suites")
    common(vp)
    vp.add_argument("suites", nargs="*", help="suite names (default: all): " + ", ".join(SUITES))
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve(args)
        if args.command == "compute":
            return cmd_compute(cfg)
        return cmd_verify(cfg)
    except TriangularityError as e:
        print("triangularity violation: %s" % e, file=sys.stderr)
        return 2
    except ConventionError as e:
        print("convention pin failure: %s" % e, file=sys.stderr)
        return 3
    except (ValueError, OSError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
