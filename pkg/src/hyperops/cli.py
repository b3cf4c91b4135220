"""Command-line surface.

Subcommands: gen-hyper, gen-complex, push, verify, sparse, stats, figure1,
powers, normalize.  Sampling commands require --seed; fixed flags give
byte-identical outputs.  File writes are atomic.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io as hio
from .expr import ParseError, parse_expression
from .metric import figure_hypergraphs, minimal_powers
from .models import (
    ProbabilityAssignment,
    resolve_probabilities,
    rng_from,
    sample_complex,
    sample_hypergraph,
)
from .pushforward import (
    complex_product,
    closure_transform,
    empirical_distribution,
    hypergraph_product,
    interior_transform,
    point_mass,
    push_word,
    total_variation,
)
from .sparse import (
    algorithm1_truncated,
    algorithm2_truncated,
    closure_dimension_stats,
    dimension_stats,
    threshold_schedule,
)
from .verify import SUITES, run_standard, run_suite
from .words import Prim, eval_word_mask, normalize


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _require_seed(args) -> int | None:
    if args.seed is None:
        return _fail("this command samples; provide --seed")
    return None


def _load_probability(path: str) -> ProbabilityAssignment:
    return hio.read_probability(path)


def cmd_gen(args, as_complex: bool) -> int:
    bad = _require_seed(args)
    if bad is not None:
        return bad
    amb = hio.read_complex(args.ambient)
    pa = _load_probability(args.prob)
    rng = rng_from(args.seed, args.stream)
    sampler = sample_complex if as_complex else sample_hypergraph
    lines = []
    for _ in range(args.samples):
        h = sampler(amb, pa, rng)
        lines.append(h.faces())
    if args.out:
        hio.write_samples(args.out, lines)
    else:
        for faces in lines:
            print(hio.format_faces(faces))
    return 0


def _print_distribution(dist) -> None:
    amb = dist.ambient
    for mask in dist.support():
        faces = amb.faces_of_mask(mask)
        print(f"{dist.prob(mask):.12e}  {hio.format_faces(faces)}")


def cmd_push(args) -> int:
    amb = hio.read_complex(args.ambient)
    try:
        word = parse_expression(args.expr).word
    except ParseError as e:
        return _fail(str(e))
    if word.arity() != 1:
        return _fail("push needs a unary expression")

    if args.hyper:
        if args.model or args.prob:
            return _fail("give either --hyper or --model/--prob, not both")
        base = point_mass(amb, hio.read_hypergraph(args.hyper, amb).mask)
        vec = None
    else:
        if not args.model or not args.prob:
            return _fail("need --model and --prob (or --hyper)")
        pa = _load_probability(args.prob)
        vec = resolve_probabilities(amb, pa)
        base = complex_product(amb, vec) if args.model == "pcomplex" else hypergraph_product(amb, vec)

    if args.samples:
        bad = _require_seed(args)
        if bad is not None:
            return bad
        rng = rng_from(args.seed, args.stream)
        sampler = sample_complex if args.model == "pcomplex" else sample_hypergraph
        if args.hyper:
            return _fail("Monte Carlo mode needs --model/--prob")
        masks = []
        for _ in range(args.samples):
            h = sampler(amb, vec, rng)
            masks.append(eval_word_mask(word, amb, [h.mask]))
        dist = empirical_distribution(amb, masks)
    else:
        dist = push_word(word, base)

    _print_distribution(dist)

    # closed-form family line for the three primitive transforms of a
    # product draw; informational, the suites assert the true parts
    if not args.samples and not args.hyper and args.model == "phyper":
        reduced = normalize(word)
        if isinstance(reduced, Prim) and reduced.name in ("Delta", "delta", "gamma"):
            if reduced.name == "Delta":
                family = complex_product(amb, closure_transform(amb, vec))
            elif reduced.name == "delta":
                family = complex_product(amb, interior_transform(amb, vec))
            else:
                family = hypergraph_product(amb, 1.0 - vec)
            tv = total_variation(dist, family)
            print(f"TV to closed-form family ({reduced.name}): {tv:.12g}")
    return 0


def cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    for name in names:
        if name not in SUITES:
            return _fail(f"unknown suite {name!r}; choose from {sorted(SUITES)} or all")
    seed = args.seed if args.seed is not None else 2026
    results = []
    if args.ambient:
        amb = hio.read_complex(args.ambient)
        for name in names:
            results.append(run_suite(name, amb, rng_from(seed)))
    else:
        results = run_standard(names, seed=seed)
    for res in results:
        print(res.summary_line())
    return 0 if all(r.ok for r in results) else 1


def cmd_sparse(args) -> int:
    bad = _require_seed(args)
    if bad is not None:
        return bad
    pa = _load_probability(args.prob)
    if pa.per_dim is None:
        return _fail("sparse generation needs a per-dim probability file")
    base = list(pa.per_dim[: args.n])
    rng = rng_from(args.seed, args.stream)
    lines = []
    for _ in range(args.samples):
        if args.algorithm == 1:
            sample = algorithm1_truncated(args.n, base, args.r, rng)
            lines.append(
                hio.format_faces(sample.hyper_faces)
                + " | "
                + hio.format_faces(sample.complex_faces)
            )
        else:
            faces = algorithm2_truncated(args.n, base, args.r, rng)
            lines.append(hio.format_faces(faces))
    text = "".join(line + "\n" for line in lines)
    if args.out:
        hio.atomic_write(args.out, text)
    else:
        print(text, end="")
    return 0


def cmd_stats(args) -> int:
    bad = _require_seed(args)
    if bad is not None:
        return bad
    n_values = [int(tok) for tok in args.n.split(",") if tok]
    if not n_values:
        return _fail("give --n as a comma-separated list, e.g. 20,40,80")
    if args.model == "clique":
        denom = args.denom if args.denom is not None else args.r + 1
        schedule = threshold_schedule(args.coeff, denom)
        rows = dimension_stats(n_values, schedule, args.r, args.samples, args.seed)
    else:
        if not args.prob:
            return _fail("closure stats need --prob with a per-dim base vector")
        pa = _load_probability(args.prob)
        if pa.per_dim is None:
            return _fail("closure stats need a per-dim probability file")
        rows = closure_dimension_stats(n_values, list(pa.per_dim), args.r, args.samples, args.seed)
    if args.out:
        hio.write_stats_csv(args.out, rows)
    else:
        import csv as _csv
        import io as _io

        buf = _io.StringIO()
        writer = _csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
        print(buf.getvalue(), end="")
    return 0


def cmd_figure1(args) -> int:
    import os

    amb, h1, h2, h3 = figure_hypergraphs()
    os.makedirs(args.out_dir, exist_ok=True)
    cx_path = os.path.join(args.out_dir, "figure1.cx")
    hio.write_complex(cx_path, amb)
    print(f"wrote {cx_path}")
    for name, h in (("H1", h1), ("H2", h2), ("H3", h3)):
        path = os.path.join(args.out_dir, f"{name}.hg")
        hio.write_hypergraph(path, h)
        print(f"wrote {path}")
    return 0


def cmd_powers(args) -> int:
    amb = hio.read_complex(args.ambient)
    h = hio.read_hypergraph(args.file, amb)
    p = minimal_powers(h)
    if p.degenerate:
        print("degenerate (empty or full)")
    else:
        print(f"r={p.r} t={p.t}")
    return 0


def cmd_normalize(args) -> int:
    try:
        word = parse_expression(args.expr).word
    except ParseError as e:
        return _fail(str(e))
    try:
        reduced = normalize(word)
    except Exception as e:
        return _fail(str(e))
    print(str(reduced))
    return 0


def _add_sampling_flags(sub, need_prob=True):
    sub.add_argument("--seed", type=int, default=None, help="RNG seed (required to sample)")
    sub.add_argument("--stream", "--streams", dest="stream", type=int, default=0, help="RNG stream id")
    if need_prob:
        sub.add_argument("--prob", help="probability JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperops", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for cmd, as_complex in (("gen-hyper", False), ("gen-complex", True)):
        p = sub.add_parser(cmd, help=f"sample {'complexes' if as_complex else 'hypergraphs'} to a file")
        p.add_argument("--ambient", required=True, help="ambient .cx file")
        _add_sampling_flags(p)
        p.add_argument("--samples", type=int, default=1)
        p.add_argument("--out", help="output file (default: stdout)")
        p.set_defaults(fn=lambda a, c=as_complex: cmd_gen(a, c))

    p = sub.add_parser("push", help="push a model or a point mass through an expression")
    p.add_argument("--ambient", required=True)
    p.add_argument("--expr", required=True, help="operator expression, e.g. 'Delta' or 'Ext^2'")
    p.add_argument("--model", choices=("phyper", "pcomplex"))
    p.add_argument("--hyper", help=".hg file for a point-mass start")
    p.add_argument("--exact", action="store_true", help="exact pushforward (default)")
    p.add_argument("--samples", type=int, default=0, help="Monte Carlo sample count")
    _add_sampling_flags(p)
    p.set_defaults(fn=cmd_push)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help="|".join(sorted(SUITES)) + "|all")
    p.add_argument("--ambient", help="run on this .cx instead of the standard fixtures")
    p.add_argument("--exhaustive", action="store_true",
                   help="accepted for compatibility; lattice sweeps are always exhaustive")
    p.add_argument("--seed", type=int, default=None, help="seed for the sampled checks (default 2026)")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("sparse", help="run a truncated generator")
    p.add_argument("--algorithm", type=int, choices=(1, 2), required=True)
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--r", type=int, required=True, help="dimension cutoff")
    _add_sampling_flags(p)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(fn=cmd_sparse)

    p = sub.add_parser("stats", help="dimension statistics over a sweep of n")
    p.add_argument("--model", choices=("clique", "closure"), default="clique")
    p.add_argument("--n", required=True, help="comma-separated vertex counts, e.g. 20,40,80")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--coeff", type=float, default=0.5, help="schedule coefficient")
    p.add_argument("--denom", type=float, default=None, help="schedule denominator (default r+1)")
    _add_sampling_flags(p)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--out", help="CSV output file (default: stdout)")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("figure1", help="write the 28-vertex triangulated triangle and its three example sub-hypergraphs")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(fn=cmd_figure1)

    p = sub.add_parser("powers", help="minimal vanishing/filling powers of a hypergraph file")
    p.add_argument("--file", required=True, help=".hg file")
    p.add_argument("--ambient", default="figure1.cx")
    p.set_defaults(fn=cmd_powers)

    p = sub.add_parser("normalize", help="rewrite an expression with the composition relations")
    p.add_argument("--expr", required=True)
    p.set_defaults(fn=cmd_normalize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (hio.FileFormatError, FileNotFoundError, ValueError) as e:
        return _fail(str(e))
    except BrokenPipeError:
        # downstream closed stdout (e.g. piped into head); point the fd at
        # devnull so the interpreter's exit flush cannot raise again
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 1


if __name__ == "__main__":
    sys.exit(main())
