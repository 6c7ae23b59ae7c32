"""Command-line front end.

Every subcommand prints one JSON document (schema v1) on stdout.  Exit
codes: 0 ok, 2 invalid matrix, 3 invalid query, 4 internal cross-check
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import random
import sys
import time
from dataclasses import dataclass, asdict
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import conegeom as cg
from . import gmod as gm
from . import gring as gr
from . import localcoh as lc
from . import rankjump as rj

SCHEMA = "gkzjump/v1"
log = logging.getLogger("gkzjump")


class InvalidQuery(ValueError):
    pass


# -- input ---------------------------------------------------------------

def parse_matrix(source: str) -> List[List[int]]:
    """Matrix from a file path or inline text: JSON {"rows": ...}, a JSON
    list of rows, or CSV (one row per line)."""
    text = source
    if os.path.exists(source):
        text = Path(source).read_text()
    text = text.strip()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [[int(x) for x in row if x.strip()] for row in csv.reader(io.StringIO(text)) if row]
    if isinstance(data, dict):
        data = data.get("rows")
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise ValueError("matrix must be a nonempty list of rows")
    return [[int(x) for x in r] for r in data]


def parse_vector(text: str) -> List[Fraction]:
    return [Fraction(x.strip()) for x in text.split(",") if x.strip()]


def fmt(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def face_json(F: cg.Face) -> dict:
    return {"columns": list(F.columns), "dim": F.dim, "functional": list(F.functional)}


def stratum_json(s, F: cg.Face, idx=None) -> dict:
    out = {"shift": [fmt(x) for x in s], "face": list(F.columns), "face_dim": F.dim}
    if idx is not None:
        out["indices"] = sorted(idx)
    return out


# -- reports -------------------------------------------------------------------

def faces_report(ctx: gr.RingContext) -> dict:
    L = gm.toric_data(ctx).lattice
    return {"count": len(L.faces), "faces": [face_json(F) for F in L.faces]}


def toric_report(ctx: gr.RingContext) -> dict:
    T = gm.toric_data(ctx).toric
    return {"generators": [gr.format_poly(g) for g in T.generators]}


def resolution_report(ctx: gr.RingContext) -> dict:
    res = lc.ext_data(ctx).resolution
    return {"ranks": res.ranks(), "projective_dimension": res.length,
            "shifts": [[list(s) for s in F.shifts] for F in res.modules]}


def volume_report(ctx: gr.RingContext) -> dict:
    A = ctx.matrix
    return {"lex": cg.normalized_volume(A, "lex"), "reverse": cg.normalized_volume(A, "reverse"),
            "lattice_index": cg.lattice_index(A), "hilbert_multiplicity": rj.hilbert_multiplicity(ctx)}


def crosscheck_report(ctx: gr.RingContext, half_width: Optional[int]) -> dict:
    rep = lc.cross_check(ctx, half_width=half_width, raise_on_mismatch=False)
    return {"half_width": rep.half_width, "degrees_checked": rep.degrees_checked,
            "nonzero": [{"degree": list(a), "index": i, "dim": x} for a, i, x in rep.nonzero],
            "mismatches": [{"degree": list(a), "combinatorial": list(c), "homological": list(h)}
                           for a, c, h in rep.mismatches]}


def analyze(ctx: gr.RingContext, half_width: Optional[int] = None) -> dict:
    arr = lc.exceptional_arrangement(ctx)
    cm = lc.is_cohen_macaulay(ctx)
    vol = volume_report(ctx)
    return {
        "schema": SCHEMA,
        "command": "analyze",
        "matrix": ctx.matrix.to_rows(),
        "pointedness_certificate": [fmt(x) for x in ctx.matrix.certificate],
        "faces": faces_report(ctx),
        "toric_ideal": toric_report(ctx)["generators"],
        "volume": vol["lex"],
        "resolution": resolution_report(ctx),
        "projective_dimension": cm.projective_dimension,
        "cohen_macaulay": cm.is_cm,
        "exceptional_strata": arr.to_json(),
        "crosscheck": crosscheck_report(ctx, half_width),
    }


# -- corpus --------------------------------------------------------------------

@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 1
    d_min: int = 1
    d_max: int = 3
    n_max: int = 5
    bound: int = 4
    count: int = 50
    projective_fraction: float = 0.5


def generate_corpus(params: CorpusSpec) -> List[List[List[int]]]:
    """Seeded rejection sampling of pointed full-rank matrices with entries in [0, bound].

    With probability ``projective_fraction`` (and d >= 2) the first row is
    all ones.  Duplicates are skipped.
    """
    rng = random.Random(params.seed)
    out, seen = [], set()
    tries = 0
    while len(out) < params.count:
        tries += 1
        if tries > 10000 * max(1, params.count):
            raise RuntimeError("corpus sampling did not converge")
        d = rng.randint(params.d_min, params.d_max)
        n = rng.randint(d, max(d, params.n_max))
        projective = d >= 2 and rng.random() < params.projective_fraction
        rows = [[rng.randint(0, params.bound) for _ in range(n)] for _ in range(d)]
        if projective:
            rows[0] = [1] * n
        key = tuple(map(tuple, rows))
        if key in seen:
            continue
        try:
            cg.make_pointed_matrix(rows)
        except (cg.NotPointed, cg.NotFullRank):
            continue
        seen.add(key)
        out.append(rows)
    return out


def batch_entry(rows, half_width: Optional[int] = None) -> dict:
    ctx = gr.make_ring(rows)
    arr = lc.exceptional_arrangement(ctx)
    cm = lc.is_cohen_macaulay(ctx)
    cc = lc.cross_check(ctx, half_width=half_width, raise_on_mismatch=False)
    vol = volume_report(ctx)
    coh = rj.coherence_report(ctx)
    return {
        "matrix": rows,
        "d": ctx.d,
        "n": ctx.n,
        "volume": vol,
        "projective_dimension": cm.projective_dimension,
        "cohen_macaulay": cm.is_cm,
        "exceptional_strata": arr.to_json(),
        "crosscheck": {"half_width": cc.half_width, "degrees_checked": cc.degrees_checked,
                       "mismatches": len(cc.mismatches)},
        "checks": {
            "crosscheck": cc.ok,
            "cm_equivalence": arr.is_empty() == (cm.projective_dimension == ctx.n - ctx.d),
            "codimension_two": all(F.dim <= ctx.d - 2 for _, F, _ in arr.strata),
            "volume_orders": vol["lex"] == vol["reverse"],
            "volume_multiplicity": vol["hilbert_multiplicity"] is None
            or vol["lex"] == vol["lattice_index"] * vol["hilbert_multiplicity"],
            "coherence": all(r["finite"] and not r["infinite_at"] for r in coh),
        },
    }


def run_corpus(params: CorpusSpec, out_dir: Optional[str] = None, half_width: Optional[int] = None) -> dict:
    mats = generate_corpus(params)
    entries = [batch_entry(m, half_width) for m in mats]
    names = [f"m{k:03d}.json" for k in range(len(mats))]
    if out_dir:
        p = Path(out_dir)
        p.mkdir(parents=True, exist_ok=True)
        for name, m in zip(names, mats):
            (p / name).write_text(json.dumps({"rows": m}) + "\n")
    summary = {}
    for e in entries:
        for k, v in e["checks"].items():
            summary[k] = summary.get(k, True) and v
    report = {"schema": SCHEMA, "command": "corpus", "parameters": asdict(params),
              "count": len(entries), "all_checks": summary,
              "entries": [dict(file=name, **e) for name, e in zip(names, entries)]}
    if out_dir:
        (Path(out_dir) / "report.json").write_text(dumps(report) + "\n")
    return report


# -- command dispatch ------------------------------------------------------

def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _ring(args) -> gr.RingContext:
    return gr.make_ring(parse_matrix(args.matrix))


def _half_width(args) -> Optional[int]:
    if getattr(args, "box", None) is None:
        return None
    if args.box < 0:
        raise InvalidQuery("box half-width must be nonnegative")
    return args.box


def _degree(args, ctx, text) -> List[Fraction]:
    v = parse_vector(text)
    if len(v) != ctx.d:
        raise InvalidQuery(f"expected {ctx.d} coordinates, got {len(v)}")
    return v


def cmd_analyze(args):
    return analyze(_ring(args), _half_width(args))


def cmd_faces(args):
    ctx = _ring(args)
    return {"schema": SCHEMA, "command": "faces", **faces_report(ctx)}


def cmd_toric(args):
    return {"schema": SCHEMA, "command": "toric-ideal", **toric_report(_ring(args))}


def cmd_resolution(args):
    return {"schema": SCHEMA, "command": "resolution", **resolution_report(_ring(args))}


def cmd_ext(args):
    ctx = _ring(args)
    data = lc.ext_data(ctx)
    if args.j < 0:
        raise InvalidQuery("j must be nonnegative")
    E = data.ext(args.j)
    out = {"schema": SCHEMA, "command": "ext", "j": args.j,
           "generator_degrees": [list(s) for s in E.relations.target],
           "relations": len(E.relations.columns)}
    if E.relations.target:
        filt = gm.toric_filtration(E, td=data.toric)
        out["filtration"] = [{"face": list(F.columns), "shift": list(s)} for F, s in filt.steps]
        q = gm.quasidegrees(E, filt)
        out["quasidegrees"] = [stratum_json(s, F) for s, F in q.strata]
    else:
        out["filtration"] = []
        out["quasidegrees"] = []
    return out


def cmd_exceptional(args):
    ctx = _ring(args)
    arr = lc.exceptional_arrangement(ctx)
    return {"schema": SCHEMA, "command": "exceptional", "strata": arr.to_json()}


def cmd_is_jumping(args):
    ctx = _ring(args)
    beta = _degree(args, ctx, args.beta)
    v = rj.is_rank_jumping(ctx, rj.ParameterPoint(tuple(beta)))
    return {"schema": SCHEMA, "command": "is-jumping", "beta": [fmt(x) for x in beta],
            "jumping": v.jumping, "witness": stratum_json(*v.witness) if v.witness else None,
            "generic_rank": rj.generic_rank(ctx)}


def cmd_localcoh(args):
    ctx = _ring(args)
    alpha = _degree(args, ctx, args.alpha)
    if any(x.denominator != 1 for x in alpha):
        raise InvalidQuery("degree must be integral")
    alpha = tuple(int(x) for x in alpha)
    return {"schema": SCHEMA, "command": "localcoh", "degree": list(alpha),
            "combinatorial": list(lc.ishida_slice(ctx, alpha).dims),
            "homological": list(lc.ext_data(ctx).slice(alpha).dims)}


def cmd_crosscheck(args):
    ctx = _ring(args)
    rep = crosscheck_report(ctx, _half_width(args))
    out = {"schema": SCHEMA, "command": "crosscheck", **rep}
    if rep["mismatches"]:
        raise _Mismatch(out)
    return out


def cmd_volume(args):
    return {"schema": SCHEMA, "command": "volume", **volume_report(_ring(args))}


def cmd_coherence(args):
    ctx = _ring(args)
    rep = rj.coherence_report(ctx, samples=args.samples, seed=args.seed)
    return {"schema": SCHEMA, "command": "coherence",
            "faces": [{"face": list(r["face"].columns), "dimensions": r["dimensions"],
                       "infinite_at": [list(p) for p in r["infinite_at"]], "finite": r["finite"]}
                      for r in rep]}


def cmd_corpus(args):
    params = CorpusSpec(seed=args.seed, d_min=args.d_min, d_max=args.d_max, n_max=args.n_max,
                      bound=args.bound, count=args.count, projective_fraction=args.projective_fraction)
    return run_corpus(params, args.out, _half_width(args))


class _Mismatch(Exception):
    def __init__(self, payload):
        self.payload = payload


COMMANDS = {
    "analyze": cmd_analyze, "faces": cmd_faces, "toric-ideal": cmd_toric,
    "resolution": cmd_resolution, "ext": cmd_ext, "exceptional": cmd_exceptional,
    "is-jumping": cmd_is_jumping, "localcoh": cmd_localcoh, "crosscheck": cmd_crosscheck,
    "volume": cmd_volume, "coherence": cmd_coherence, "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gkzjump", description="Rank jumps of GKZ systems via local cohomology of S_A.")
    p.add_argument("--stats", action="store_true", help="log computation statistics to stderr")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        if name != "corpus":
            sp.add_argument("matrix", help="JSON/CSV text or a file path")
        if name in ("analyze", "crosscheck", "corpus"):
            sp.add_argument("--box", type=int, default=None, help="half-width of the degree box")
        if name == "ext":
            sp.add_argument("--j", type=int, required=True)
        if name == "is-jumping":
            sp.add_argument("--beta", required=True, help="comma-separated rationals, e.g. 1,2 or 1/2,3")
        if name == "localcoh":
            sp.add_argument("--alpha", required=True, help="comma-separated integers")
        if name == "coherence":
            sp.add_argument("--samples", type=int, default=3)
            sp.add_argument("--seed", type=int, default=0)
        if name == "corpus":
            sp.add_argument("--seed", type=int, default=1)
            sp.add_argument("--d-min", type=int, default=1)
            sp.add_argument("--d-max", type=int, default=3)
            sp.add_argument("--n-max", type=int, default=5)
            sp.add_argument("--bound", type=int, default=4)
            sp.add_argument("--count", type=int, default=50)
            sp.add_argument("--projective-fraction", type=float, default=0.5)
            sp.add_argument("--out", default=None, help="directory for matrices and report.json")
    return p


def _error(kind: str, message: str, **extra) -> str:
    return dumps({"schema": SCHEMA, "error": kind, "message": message, **extra})


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    handler = None
    if args.stats:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        log.addHandler(handler)
        log.setLevel(logging.INFO)
    try:
        return _run(args)
    finally:
        if handler is not None:
            log.removeHandler(handler)


def _run(args) -> int:
    t0 = time.perf_counter()
    try:
        out = COMMANDS[args.command](args)
    except cg.NotPointed as e:
        print(_error("NotPointed", str(e), witness=list(e.witness) if e.witness else None))
        return 2
    except cg.NotFullRank as e:
        print(_error("NotFullRank", str(e)))
        return 2
    except (ValueError, json.JSONDecodeError) as e:
        if isinstance(e, InvalidQuery):
            print(_error("InvalidQuery", str(e)))
            return 3
        print(_error("InvalidMatrix", str(e)))
        return 2
    except _Mismatch as m:
        print(dumps(m.payload))
        return 4
    except (lc.ConventionMismatch, lc.InternalInconsistency) as e:
        print(_error(type(e).__name__, str(e)))
        return 4
    print(dumps(out))
    if args.stats:
        log.info("command %s finished in %.3fs", args.command, time.perf_counter() - t0)
        log.info("fiber cache: %s", cg._fiber.cache_info())
        log.info("rings analysed: %d", len(lc._EXT_CACHE))
    return 0


if __name__ == "__main__":
    sys.exit(main())
