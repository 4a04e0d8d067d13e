"""Command line interface.

Subcommands: ``build`` (explore a window and summarize it), ``growth``
(growth table and superadditivity), ``isoperimetry`` (exact or annealed
profiles), ``constants`` (extremal constant estimates and the certified
table), ``verify`` (the full identity and inequality battery; exits
nonzero on failure), and ``corpus`` (emit the deterministic field
corpus).

Instances come from the built-in catalogue (``--instance``) or a JSON
spec file (``--spec``).  All output is deterministic for fixed
arguments; in particular the worker count never changes any reported
byte.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import catalogue, corpus, fields, growth, isoperimetry, reporting, specio, uncertainty
from .groups import explore, validate_ball

_PS = (1.0, 2.0, 3.0)
_ALPHAS = (0.5, 1.0, 2.0)


def _add_instance_args(sub: argparse.ArgumentParser) -> None:
    pick = sub.add_mutually_exclusive_group(required=True)
    pick.add_argument("--instance", help="catalogue name, see `groupiso build --list`")
    pick.add_argument("--spec", help="path to a JSON instance spec")
    sub.add_argument("--horizon", type=int, help="override the exploration radius")
    sub.add_argument("--max-vertices", type=int, default=500_000)


def _resolve(args):
    if args.instance:
        system = catalogue.system(args.instance)
        horizon = args.horizon or catalogue.default_horizon(args.instance)
        return system, explore(system, horizon, args.max_vertices)
    spec = specio.load_spec(args.spec)
    return specio.system_from_spec(spec), specio.build_from_spec(spec, args.horizon)


def _emit(args, payload, text: str) -> None:
    sys.stdout.write(text)
    if getattr(args, "json", None):
        reporting.write_json(args.json, payload)


def cmd_build(args) -> int:
    if args.list:
        sys.stdout.write("\n".join(catalogue.names()) + "\n")
        return 0
    system, ball = _resolve(args)
    issues = validate_ball(ball)
    table = growth.growth_counts(ball)
    payload = {
        "name": ball.name,
        "horizon": ball.horizon,
        "vertices": ball.num_vertices,
        "edges": ball.num_edges,
        "complete": ball.complete,
        "base_degree": int(ball.degrees[ball.base_index]),
        "growth": [int(x) for x in table],
        "issues": issues,
    }
    rows = [(k, payload[k]) for k in ("name", "horizon", "vertices", "edges", "complete", "base_degree")]
    text = reporting.render_table(["property", "value"], rows)
    if issues:
        text += "issues:\n" + "".join(f"  {s}\n" for s in issues)
    _emit(args, payload, text)
    return 1 if issues else 0


def cmd_growth(args) -> int:
    _, ball = _resolve(args)
    table = growth.growth_counts(ball)
    sa = growth.superadditivity_report(ball)
    payload = {
        "name": ball.name,
        "growth": [int(x) for x in table],
        "superadditivity": {"limit": sa["limit"], "pairs": len(sa["pairs"]), "all_ok": sa["all_ok"]},
    }
    rows = [(r + 1, int(g)) for r, g in enumerate(table)]
    text = reporting.render_table(["radius", "ball_size"], rows)
    text += (
        f"superadditivity: {'PASS' if sa['all_ok'] else 'FAIL'}"
        f" ({len(sa['pairs'])} pairs, sums up to {sa['limit']})\n"
    )
    if args.csv:
        reporting.write_csv(args.csv, ["radius", "ball_size"], rows)
    _emit(args, payload, text)
    return 0 if sa["all_ok"] else 1


def cmd_isoperimetry(args) -> int:
    _, ball = _resolve(args)
    if args.anneal:
        entries = [
            isoperimetry.anneal_min_perimeter(
                ball, k, seed=args.seed, chains=args.chains, budget=args.budget,
                workers=args.workers,
            )
            for k in range(1, args.kmax + 1)
        ]
    else:
        entries = isoperimetry.profile(
            ball, args.kmax, cap=args.cap, workers=args.workers, on_cap=args.on_cap
        )
    rows = [
        (e.k, e.perimeter, " ".join(map(str, e.witness or ())), e.leaves, e.capped, e.exact)
        for e in entries
    ]
    headers = ["k", "perimeter", "witness", "leaves", "capped", "exact"]
    payload = {
        "name": ball.name,
        "entries": [
            {
                "k": e.k,
                "perimeter": e.perimeter,
                "witness": list(e.witness or ()),
                "leaves": e.leaves,
                "capped": e.capped,
                "exact": e.exact,
            }
            for e in entries
        ],
    }
    if args.csv:
        reporting.write_csv(args.csv, headers, rows)
    _emit(args, payload, reporting.render_table(headers, rows))
    return 0


def cmd_constants(args) -> int:
    _, ball = _resolve(args)
    cand = isoperimetry.default_candidates(ball)
    entries = []
    import math as _math

    for k in range(1, args.kmax + 1):
        if k > cand.shape[0]:
            break
        if _math.comb(cand.shape[0], k) <= args.cap:
            entries.append(isoperimetry.min_perimeter(ball, k, cand, cap=args.cap, workers=args.workers))
        else:
            entries.append(
                isoperimetry.anneal_min_perimeter(
                    ball, k, seed=args.seed, chains=args.chains, budget=args.budget,
                    workers=args.workers,
                )
            )
    trace = uncertainty.isoperimetric_constant_trace(ball, entries)
    ascent = uncertainty.uncertainty_ascent(
        ball, seed=args.seed, starts=args.starts, iters=args.iters
    )
    best = trace["best"]
    quotient = float(ascent.value / float(best) ** 2) if best else None
    certified = [
        {"p": p, "alpha": a, "certified": uncertainty.certified_constant(p, a, ball.complete)}
        for p in _PS
        for a in _ALPHAS
    ]
    payload = {
        "name": ball.name,
        "isoperimetric": {
            "rows": trace["rows"],
            "best": trace["best"],
            "best_k": trace["best_k"],
            "exact": trace["exact"],
        },
        "uncertainty": {
            "value": ascent.value,
            "start": ascent.start,
            "trace_length": len(ascent.trace),
            "start_values": ascent.start_values,
        },
        "uncertainty_over_isoperimetric_squared": quotient,
        "certified": certified,
    }
    rows = [
        (r["k"], r["radius"], r["perimeter"], r["ratio"], r["running_best"], r["exact"])
        for r in trace["rows"]
    ]
    text = reporting.render_table(
        ["k", "radius", "perimeter", "ratio", "running_best", "exact"], rows
    )
    text += f"isoperimetric constant estimate: {trace['best']} (k={trace['best_k']})\n"
    text += f"uncertainty constant estimate: {ascent.value!r} (start {ascent.start})\n"
    if quotient is not None:
        text += f"uncertainty over squared isoperimetric: {quotient!r}\n"
    text += reporting.render_table(
        ["p", "alpha", "certified"], [(c["p"], c["alpha"], c["certified"]) for c in certified]
    )
    _emit(args, payload, text)
    return 0


def _verify_checks(system, ball, nfields: int, seed: int) -> list[dict]:
    checks: list[dict] = []

    def add(name, ok, detail):
        checks.append({"name": name, "ok": bool(ok), "detail": detail})

    issues = validate_ball(ball)
    add("window-structure", not issues, f"{len(issues)} issues")

    exact = corpus.rational_fields(ball, nfields, seed)
    bad = sum(1 for f in exact if not fields.coarea_report(ball, f)["ok"])
    add("coarea", bad == 0, f"{len(exact)} fields, {bad} failures")

    bad = 0
    for f in exact:
        ind = {v: Fraction(1) for v in f}
        lhs = fields.l1_norm_exact(fields.grad_modulus_exact(ball, ind))
        if lhs != isoperimetry.set_perimeter(ball, ind):
            bad += 1
    add("indicator-perimeter", bad == 0, f"{len(exact)} sets, {bad} failures")

    sa = growth.superadditivity_report(ball)
    add("superadditivity", sa["all_ok"], f"{len(sa['pairs'])} pairs")

    weights = [("canonical", uncertainty.canonical_weight(ball))]
    pool = corpus.field_pool(ball)
    far = int(pool[np.argmax(ball.dist[pool])])
    if far != ball.base_index:
        weights.append(("multipoint", uncertainty.multipoint_weight(ball, [ball.base_index, far])))
    usable = []
    for wname, w in weights:
        rep = uncertainty.admissibility_report(ball, w)
        add(f"admissibility-{wname}", rep["admissible"], f"{len(rep['rows'])} radii")
        if rep["admissible"]:
            usable.append((wname, w.astype(np.float64)))

    floats = corpus.float_fields(ball, nfields, seed, zero_mean=ball.complete)
    wcanon = weights[0][1].astype(np.float64)
    bad = vacuous = 0
    for f in floats:
        for p in _PS:
            for a in _ALPHAS:
                rep = uncertainty.additive_link_report(ball, f, wcanon, p, a)
                if not rep["all_ok"]:
                    bad += 1
                vacuous += rep["vacuous"]
    add("additive-links", bad == 0, f"{len(floats)} fields x {len(_PS) * len(_ALPHAS)} grids, {bad} failures")

    bad = 0
    count = 0
    for f in floats:
        for p in _PS:
            for a in _ALPHAS:
                for _, w in usable:
                    count += 1
                    if not uncertainty.hpw_report(ball, f, w, p, a)["ok"]:
                        bad += 1
    add("uncertainty-ratio", bad == 0, f"{count} ratios, {bad} failures")

    bad = 0
    for f in floats:
        for p in (2.0, 3.0):
            if not fields.power_leibniz_report(ball, f, p)["ok"]:
                bad += 1
    add("power-rule", bad == 0, f"{len(floats)} fields, {bad} failures")

    if ball.complete:
        zexact = corpus.rational_fields(ball, nfields, seed + 1, zero_mean=True)
        bad = sum(
            1
            for f in zexact
            if not (
                (rep := fields.median_report(ball, f))["markov_ok"]
                and rep["shift_ok"] is not False
            )
        )
        add("median", bad == 0, f"{len(zexact)} fields, {bad} failures")

        bad = 0
        for f in floats:
            for p in _PS:
                if not uncertainty.poincare_report(ball, f, p)["ok"]:
                    bad += 1
        add("poincare", bad == 0, f"{len(floats)} fields x {len(_PS)} exponents, {bad} failures")

        if system is not None and (system.kind == "cayley" or system.kind == "schreier"):
            try:
                maps = growth.translation_maps(system, ball)
            except ValueError:
                maps = None
            if maps is not None and maps[2] and len(maps[0]) <= 64:
                bad = 0
                count = 0
                for f in exact[: min(len(exact), 20)]:
                    for target in range(ball.num_vertices):
                        count += 1
                        if not growth.translation_report(system, ball, f, target, maps)["ok"]:
                            bad += 1
                add("translation", bad == 0, f"{count} translates, {bad} failures")
            elif maps is not None and not maps[2]:
                add("translation", True, "skipped: translations are not graph automorphisms")

        if system is not None and system.kind == "cayley" and ball.num_vertices <= 10:
            dc = isoperimetry.double_counting_report(system, max_order=10)
            add("double-counting", dc["all_ok"], f"{dc['checked']} pairs, min slack {dc['min_slack']}")

    return checks


def cmd_verify(args) -> int:
    system, ball = _resolve(args)
    checks = _verify_checks(system, ball, args.fields, args.seed)
    all_ok = all(c["ok"] for c in checks)
    lines = [
        f"{c['name']}: {'PASS' if c['ok'] else 'FAIL'} ({c['detail']})" for c in checks
    ]
    text = "\n".join(lines) + "\n"
    text += f"verify {ball.name}: {'PASS' if all_ok else 'FAIL'}\n"
    payload = {"name": ball.name, "checks": checks, "all_ok": all_ok}
    _emit(args, payload, text)
    return 0 if all_ok else 1


def cmd_corpus(args) -> int:
    _, ball = _resolve(args)
    if args.kind == "exact":
        data = corpus.rational_fields(ball, args.fields, args.seed, zero_mean=args.zero_mean)
        rows = corpus.exact_rows(data)
    else:
        data = corpus.float_fields(ball, args.fields, args.seed, zero_mean=args.zero_mean)
        rows = corpus.float_rows(data)
    headers = ["field", "vertex", "value"]
    payload = {"name": ball.name, "kind": args.kind, "rows": [list(r) for r in rows]}
    if args.csv:
        reporting.write_csv(args.csv, headers, rows)
    _emit(args, payload, reporting.render_table(headers, rows))
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupiso",
        description="Cayley/Schreier windows, isoperimetric profiles, uncertainty constants",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("build", help="explore a window and summarize it")
    p.add_argument("--list", action="store_true", help="list catalogue names and exit")
    pick = p.add_mutually_exclusive_group()
    pick.add_argument("--instance")
    pick.add_argument("--spec")
    p.add_argument("--horizon", type=int)
    p.add_argument("--max-vertices", type=int, default=500_000)
    p.add_argument("--json")
    p.set_defaults(func=cmd_build)

    p = subs.add_parser("growth", help="growth table and superadditivity")
    _add_instance_args(p)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_growth)

    p = subs.add_parser("isoperimetry", help="exact or annealed perimeter profiles")
    _add_instance_args(p)
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--cap", type=int, default=20_000_000)
    p.add_argument("--on-cap", choices=("raise", "partial"), default="raise")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--anneal", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=8)
    p.add_argument("--budget", type=int, default=20_000)
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_isoperimetry)

    p = subs.add_parser("constants", help="extremal constant estimates")
    _add_instance_args(p)
    p.add_argument("--kmax", type=int, default=6)
    p.add_argument("--cap", type=int, default=2_000_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=8)
    p.add_argument("--budget", type=int, default=20_000)
    p.add_argument("--starts", type=int, default=4)
    p.add_argument("--iters", type=int, default=300)
    p.add_argument("--json")
    p.set_defaults(func=cmd_constants)

    p = subs.add_parser("verify", help="identity and inequality battery")
    _add_instance_args(p)
    p.add_argument("--fields", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("corpus", help="emit the deterministic field corpus")
    _add_instance_args(p)
    p.add_argument("--kind", choices=("exact", "float"), default="exact")
    p.add_argument("--fields", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-mean", action="store_true")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "build" and not args.list and not (args.instance or args.spec):
        parser.error("build needs --instance, --spec, or --list")
    try:
        return args.func(args)
    except (isoperimetry.WorkCapError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
