"""Command-line front end.

Every subcommand reads an optional TOML config (``--config``), applies flag
overrides, writes one or more CSV files plus ``summary.json`` into ``--out``
and exits with

* 0 on success,
* 1 when a ``check`` has a row that is not PASS,
* 2 on configuration or validation errors,
* 3 in ``--strict`` mode when a data-quality flag was raised.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import (build_config, measure_from_config, predicate_from_config)
from .errors import UEntropyError, ValidationError
from .harness import THEOREMS, run_check
from .local_entropy import LeafMeasure, local_unstable_entropy
from .multifractal import (Potential, spectrum_identity_check, doubling_schedule,
                           irregular_orbit_constructor, limit_set_probe)
from .separation import (GluingPlan, SeparationConfig, exact_hamming_separated, glue_orbits,
                         max_hamming_separated, read_words, rho_separated_count,
                         uniform_separation_probe, write_words)
from .systems import SymbolicSystem, as_word, leaf_segment, word_str
from .unstable import (EntropySchedule, default_delta, default_schedule, default_x_grid,
                       delta_independence_check, leaf_sample, unstable_bowen_entropy,
                       unstable_upper_capacity_entropy)

log = logging.getLogger("uentropy")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_QUALITY = 0, 1, 2, 3
QUALITY_FLAGS = ("resolution_limited", "unreliable_delta", "insufficient_range",
                 "boundary_truncated", "zero_mass")


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------

def fmt(v):
    """Full-precision CSV cell (17 significant digits for floats)."""
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v)).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, (list, tuple, np.ndarray)):
        return " ".join(fmt(u) for u in np.asarray(v).ravel().tolist()) if not (
            len(v) and isinstance(v[0], str)) else ";".join(v)
    return "" if v is None else str(v)


def write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])


def _jsonable(o):
    if isinstance(o, dict):
        return {str(k): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, np.ndarray):
        return _jsonable(o.tolist())
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (float, np.floating)):
        f = float(o)
        return f if math.isfinite(f) else str(f)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    return o


def write_summary(out: Path, cfg, summary: dict):
    summary = dict(summary)
    summary["config"] = cfg.echo()
    summary["version"] = __version__
    with open(out / "summary.json", "w") as fh:
        json.dump(_jsonable(summary), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _outdir(cfg) -> Path:
    p = Path(cfg.out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _quality_exit(cfg, flags):
    bad = [f for f in flags if f in QUALITY_FLAGS]
    if cfg.strict and bad:
        log.warning("strict mode: data-quality flags %s", ", ".join(bad))
        return EXIT_QUALITY
    return EXIT_OK


def _point_label(x):
    x = np.asarray(x)
    if x.dtype.kind in "iu":
        return word_str(x[:16])
    return " ".join(format(float(v), ".17g") for v in x.ravel())


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _schedule(cfg, system):
    base = default_schedule(system, cfg.get("grid"))
    return EntropySchedule(eps=tuple(cfg.get("eps", base.eps)), n=tuple(cfg.get("n", base.n)),
                           N=int(cfg.get("N", base.N)),
                           depth_step=int(cfg.get("depth_step", base.depth_step)),
                           grid=int(cfg.get("grid", base.grid)))


def _x_grid(cfg, system):
    if cfg.get("x_grid") is not None:
        pts = cfg.get("x_grid")
        return [as_word(p) if isinstance(p, str) else np.asarray(p, dtype=float) for p in pts]
    return default_x_grid(system, int(cfg.get("x_count", 8)), cfg.seed)


def cmd_estimate_entropy(cfg) -> int:
    system = cfg.build_system()
    sched = _schedule(cfg, system)
    pred = predicate_from_config(cfg.get("predicate", "all"), system)
    delta = float(cfg.get("delta", default_delta(system)))
    xs = _x_grid(cfg, system)
    kind = cfg.get("kind", "both")
    if kind not in ("both", "bowen", "upper_capacity"):
        raise ValidationError("kind must be both, bowen or upper_capacity")
    reports = {}
    if kind in ("both", "upper_capacity"):
        reports["upper_capacity"] = unstable_upper_capacity_entropy(
            system, pred, xs, delta, sched, cfg.threads)
    if kind in ("both", "bowen"):
        reports["bowen"] = unstable_bowen_entropy(system, pred, xs, delta, sched, cfg.threads)
    out = _outdir(cfg)
    rows, flags, summary = [], [], {"system": system.name, "estimates": {}}
    for k, rep in reports.items():
        for (x, d, h), det in zip(rep.per_leaf, rep.details):
            rows.append([_point_label(x), d, k, h, ";".join(det["flags"])])
        summary["estimates"][k] = {"sup_estimate": rep.sup_estimate,
                                   "delta_spread": delta_independence_check(rep),
                                   "flags": rep.flags}
        flags += rep.flags
    write_csv(out / "estimate.csv", ["x", "delta", "kind", "estimate", "flags"], rows)
    write_summary(out, cfg, summary)
    for k, v in summary["estimates"].items():
        print(f"{k}: sup_estimate = {v['sup_estimate']:.4f}  flags = {v['flags']}")
    return _quality_exit(cfg, flags)


def _leaf_measure(cfg, system, seg):
    entry = cfg.get("measure", {"kind": "lebesgue"})
    kind = entry.get("kind", "lebesgue")
    if kind == "lebesgue":
        return LeafMeasure.lebesgue(seg)
    if kind == "density":
        return LeafMeasure.from_density(seg, entry.get("coefficients", [1.0]))
    if kind == "atomic":
        return LeafMeasure.atomic(seg, np.asarray(entry["points"], dtype=float))
    return LeafMeasure.cylinder(seg, measure_from_config(entry, system))


def cmd_local_entropy(cfg) -> int:
    system = cfg.build_system()
    base = cfg.get("base_point")
    if base is None:
        base = (np.zeros(64, dtype=np.int64) if isinstance(system, SymbolicSystem)
                else np.array([0.3, 0.6]))
    elif isinstance(base, str):
        base = as_word(base)
    seg = leaf_segment(system, np.asarray(base), float(cfg.get("delta", default_delta(system))))
    mu = _leaf_measure(cfg, system, seg)
    count = int(cfg.get("points", 9))
    rng = np.random.default_rng(cfg.seed)
    if isinstance(system, SymbolicSystem):
        if mu.markov is None:
            raise ValidationError("symbolic local entropy needs a Markov measure")
        L = int(cfg.get("word_length", 2000))
        pts = [mu.markov.sample_word(L, rng) for _ in range(count)]
    else:
        ts = np.linspace(-seg.radius / 2, seg.radius / 2, count)
        pts = list(seg.chart(ts))
    eps = cfg.get("eps")
    ns = cfg.get("n")
    trace_rows, field_rows, flags = [], [], []
    for p in pts:
        le = local_unstable_entropy(mu, p, eps, ns)
        lab = _point_label(p)
        for e, a in le.traces.items():
            for n, v in zip(le.n_schedule, a):
                trace_rows.append([lab, e, n, v])
        field_rows.append([lab, le.lower, le.upper, ";".join(le.flags)])
        flags += [f for f in le.flags if f not in flags]
    out = _outdir(cfg)
    write_csv(out / "traces.csv", ["x", "eps", "n", "a_n"], trace_rows)
    write_csv(out / "local_entropy.csv", ["x", "lower", "upper", "flags"], field_rows)
    lows = [r[1] for r in field_rows]
    summary = {"system": system.name, "measure": mu.kind, "min_lower": min(lows),
               "max_upper": max(r[2] for r in field_rows), "flags": flags}
    write_summary(out, cfg, summary)
    print(f"local entropy over {len(pts)} points: lower in [{min(lows):.4f}, {max(lows):.4f}]")
    return _quality_exit(cfg, flags)


def _potential(cfg, system):
    entry = cfg.get("potential", {"kind": "indicator", "word": "1"})
    kind = entry.get("kind", "indicator")
    k = system.alphabet_size
    if kind == "indicator":
        return Potential.cylinder_indicator(as_word(entry.get("word", "1")), k)
    if kind == "constant":
        return Potential.constant(float(entry.get("value", 0.5)), k)
    if kind == "locally_constant":
        return Potential.locally_constant(np.asarray(entry["table"], dtype=float))
    raise ValidationError(f"unknown potential kind {kind!r}")


def cmd_spectrum(cfg) -> int:
    system = cfg.build_system()
    if not isinstance(system, SymbolicSystem):
        raise ValidationError("spectrum needs a symbolic system")
    phi = _potential(cfg, system)
    grid = cfg.get("grid_levels", [round(0.1 * i, 1) for i in range(1, 10)])
    kw = {}
    if cfg.get("window") is not None:
        kw["window"] = float(cfg.get("window"))
    if cfg.get("n") is not None:
        kw["n_schedule"] = tuple(cfg.get("n"))
    res = spectrum_identity_check(system, phi, grid, **kw)
    out = _outdir(cfg)
    write_csv(out / "spectrum.csv", ["a", "lhs", "rhs", "gap", "status"],
              [[r["a"], r["lhs"], r["rhs"], r["gap"], r["status"]] for r in res.rows()])
    summary = {"system": system.name, "passed": res.passed, "two_sided": res.two_sided,
               "window": res.window, "unreachable": int(sum(s == "level_unreachable"
                                                            for s in res.status))}
    write_summary(out, cfg, summary)
    print(f"spectrum: {'PASS' if res.passed else 'FAIL'} over {len(res.grid)} levels")
    return EXIT_OK


def cmd_separated_count(cfg) -> int:
    out = _outdir(cfg)
    words = cfg.get("words")
    if words is not None:
        W = read_words(words) if isinstance(words, str) else np.stack([as_word(w) for w in words])
        t = int(cfg.get("threshold", 0))
        sub = max_hamming_separated(W, t, method=cfg.get("method", "auto"))
        exact = len(exact_hamming_separated(np.unique(W, axis=0), t)) if len(W) <= 24 else None
        write_words(out / "separated_words.txt", sub)
        write_csv(out / "separated.csv", ["word"], [[word_str(w)] for w in sub])
        summary = {"input_words": len(W), "threshold": t, "count": len(sub), "exact_max": exact}
        write_summary(out, cfg, summary)
        print(f"Hamming-separated subset: {len(sub)} of {len(W)} words (threshold {t})")
        return EXIT_OK
    system = cfg.build_system()
    sc = SeparationConfig(float(cfg.get("rho", 0.5)), float(cfg.get("eps", 0.5)),
                          int(cfg.get("n", 4)))
    seg = leaf_segment(system, np.zeros(64, dtype=np.int64) if isinstance(system, SymbolicSystem)
                       else np.array([0.3, 0.6]), float(cfg.get("delta", default_delta(system))))
    sample = leaf_sample(seg, int(cfg.get("grid", 2 ** sc.n)))
    res = rho_separated_count(system, seg, None, sc, sample)
    wit = sample.points[res.witnesses]
    write_csv(out / "separated.csv", ["point"], [[_point_label(p)] for p in wit])
    summary = {"system": system.name, "count": res.count, "method": res.method,
               "required_times": sc.required, "flags": res.flags}
    write_summary(out, cfg, summary)
    print(f"(rho, n, eps)-separated count: {res.count} ({res.method})")
    return _quality_exit(cfg, res.flags)


def cmd_glue_demo(cfg) -> int:
    system = cfg.build_system()
    blocks = cfg.get("blocks", [["000", "111"]] * 3)
    blocks = [read_words(b) if isinstance(b, str) else b for b in blocks]
    plan = GluingPlan(blocks, system)
    res = glue_orbits(plan, cfg.get("rho"))
    out = _outdir(cfg)
    write_words(out / "glued_words.txt", res.words)
    write_csv(out / "glued.csv", ["word", "length"], [[word_str(w), len(w)] for w in res.words])
    summary = {"system": system.name, "cardinality": res.cardinality, "expected": res.expected,
               "collision_free": res.collision_free, "bridges_used": res.bridges_used,
               "uniform_bridges": res.uniform_bridges, "min_distance": res.min_distance,
               "required": res.required, "separation_ok": res.separation_ok}
    write_summary(out, cfg, summary)
    print(f"glued {res.cardinality} words (expected {res.expected}); "
          f"min distance {res.min_distance}, separation ok: {res.separation_ok}")
    return EXIT_OK if res.collision_free else EXIT_FAIL


def cmd_uniform_separation(cfg) -> int:
    system = cfg.build_system()
    if not isinstance(system, SymbolicSystem):
        raise ValidationError("uniform separation needs a symbolic system")
    mu = measure_from_config(cfg.get("measure"), system)
    kappas = cfg.get("kappa", [0.2, 0.3])
    ns = cfg.get("n", [14, 16])
    kappas = kappas if isinstance(kappas, list) else [kappas]
    ns = ns if isinstance(ns, list) else [ns]
    rows, summary = [], {"system": system.name, "measure": mu.name, "entropy": mu.entropy(),
                         "runs": []}
    for n in ns:
        for k in kappas:
            r = uniform_separation_probe(system, mu, float(k), int(n),
                                         float(cfg.get("tau", 0.05)))
            rows.append([n, k, r.kappa_prime, r.rho_star, r.threshold, r.size_typical,
                         r.size_extracted, r.achieved, r.target, r.passed])
            summary["runs"].append({"n": n, "kappa": k, "passed": r.passed,
                                    "min_feasible_kappa": r.min_feasible_kappa})
    out = _outdir(cfg)
    write_csv(out / "uniform_separation.csv",
              ["n", "kappa", "kappa_prime", "rho_star", "threshold", "typical", "extracted",
               "achieved", "target", "passed"], rows)
    write_summary(out, cfg, summary)
    for r in rows:
        print(f"n={r[0]} kappa={r[1]}: achieved {r[7]:.4f} vs target {r[8]:.4f}")
    return EXIT_OK


def cmd_irregular_demo(cfg) -> int:
    system = cfg.build_system()
    if not isinstance(system, SymbolicSystem):
        raise ValidationError("irregular-demo needs a symbolic system")
    length = int(cfg.get("length", 65536))
    phi = _potential(cfg, system)
    x = irregular_orbit_constructor(system, cfg.get("proxy1", "0"), cfg.get("proxy2", "1"),
                                    doubling_schedule(length), length)
    cps = cfg.get("checkpoints") or [2 ** j for j in range(6, int(math.log2(length)) + 1)]
    pr = limit_set_probe(system, x, [phi], cps, float(cfg.get("tau", 0.02)))
    out = _outdir(cfg)
    write_csv(out / "averages.csv", ["n", "average"],
              [[n, a] for n, a in zip(pr.checkpoints, pr.averages[:, 0])])
    summary = {"system": system.name, "classification": pr.classification,
               "witness": pr.witness, "length": len(x)}
    write_summary(out, cfg, summary)
    print(f"irregular orbit of length {len(x)}: {pr.classification}")
    return EXIT_OK


def _run_checks(cfg, theorems) -> int:
    rows = []
    for t in theorems:
        rows += [(t, r) for r in run_check(t, cfg.get("instances"))]
    out = _outdir(cfg)
    write_csv(out / "verdicts.csv", ["theorem", "instance", "status", "lhs", "rhs", "tolerance"],
              [[t, r.name, r.status, r.lhs, r.rhs, r.tolerance] for t, r in rows])
    summary = {"theorem": theorems[0] if len(theorems) == 1 else list(theorems),
               "rows": [{"theorem": t, "instance": r.name, "status": r.status, "lhs": r.lhs,
                         "rhs": r.rhs, "tolerance": r.tolerance} for t, r in rows],
               "all_pass": all(r.passed for _, r in rows)}
    write_summary(out, cfg, summary)
    for t, r in rows:
        print(f"{t:>8} {r.status:>18}  {r.name}  lhs={r.lhs:.4f} rhs={r.rhs:.4f}")
    return EXIT_OK if summary["all_pass"] else EXIT_FAIL


def cmd_check(cfg) -> int:
    theorem = cfg.get("theorem")
    if theorem not in THEOREMS:
        raise ValidationError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    return _run_checks(cfg, [theorem])


def cmd_check_theorem_a(cfg) -> int:
    """Both sides of the distribution principle in one run."""
    return _run_checks(cfg, ["a_upper", "a_lower"])


COMMANDS = {
    "estimate-entropy": cmd_estimate_entropy,
    "local-entropy": cmd_local_entropy,
    "spectrum": cmd_spectrum,
    "separated-count": cmd_separated_count,
    "glue-demo": cmd_glue_demo,
    "uniform-separation": cmd_uniform_separation,
    "irregular-demo": cmd_irregular_demo,
    "check": cmd_check,
    "check-theorem-a": cmd_check_theorem_a,
}


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _floats(s):
    return [float(v) for v in s.split(",") if v]


def _ints(s):
    return [int(v) for v in s.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config file")
    common.add_argument("--out", help="output directory (default: out)")
    common.add_argument("--threads", type=int, help="worker threads (results do not depend on it)")
    common.add_argument("--seed", type=int, help="random seed (default 42)")
    common.add_argument("--strict", action="store_true",
                        help="exit 3 when data-quality flags are raised")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="uentropy",
                                description="Unstable entropy estimators and checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("estimate-entropy", parents=[common],
                       help="leafwise Bowen and upper-capacity entropy")
    s.add_argument("--kind", choices=["both", "bowen", "upper_capacity"])
    s.add_argument("--delta", type=float)
    s.add_argument("--grid", type=int)
    s.add_argument("--eps", type=_floats)
    s.add_argument("--n", type=_ints)
    s.add_argument("--predicate")

    s = sub.add_parser("local-entropy", parents=[common], help="local unstable entropy traces")
    s.add_argument("--delta", type=float)
    s.add_argument("--points", type=int)
    s.add_argument("--eps", type=_floats)
    s.add_argument("--n", type=_ints)

    s = sub.add_parser("spectrum", parents=[common], help="level-set entropy spectrum")
    s.add_argument("--window", type=float)
    s.add_argument("--grid-levels", dest="grid_levels", type=_floats)
    s.add_argument("--n", type=_ints)

    s = sub.add_parser("separated-count", parents=[common],
                       help="Hamming or (rho, n, eps)-separated subsets")
    s.add_argument("--words", help="newline-delimited word file")
    s.add_argument("--threshold", type=int)
    s.add_argument("--method", choices=["auto", "greedy", "exact"])
    s.add_argument("--rho", type=float)
    s.add_argument("--eps", type=float)
    s.add_argument("--n", type=int)

    s = sub.add_parser("glue-demo", parents=[common], help="concatenate block sets")
    s.add_argument("--rho", type=float)

    s = sub.add_parser("uniform-separation", parents=[common],
                       help="separated extraction from typical words")
    s.add_argument("--kappa", type=float)
    s.add_argument("--n", type=int)
    s.add_argument("--tau", type=float)

    s = sub.add_parser("irregular-demo", parents=[common],
                       help="orbit with oscillating Birkhoff averages")
    s.add_argument("--proxy1")
    s.add_argument("--proxy2")
    s.add_argument("--length", type=int)
    s.add_argument("--tau", type=float)

    s = sub.add_parser("check", parents=[common], help="run a theorem harness")
    s.add_argument("theorem", help=", ".join(THEOREMS))

    sub.add_parser("check-theorem-a", parents=[common],
                   help="run the a_upper and a_lower harnesses together")
    return p


_GLOBAL = {"command", "config", "out", "threads", "seed", "strict", "verbose"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    overrides = {k: v for k, v in vars(args).items() if k not in _GLOBAL}
    for key in ("kappa", "n"):
        if args.command == "uniform-separation" and overrides.get(key) is not None:
            overrides[key] = [overrides[key]]
    try:
        cfg = build_config(args.command, args.config, overrides, args.out, args.threads,
                           args.seed, args.strict)
        return COMMANDS[args.command](cfg)
    except (ValidationError, ValueError, KeyError, UEntropyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
