"""Command-line surface: construct contexts, multiply, verify, report weights,
and benchmark; plus the line-oriented context file format.

Context files are diff-able key=value text.  Element grammar: "c0,c1,..."
(little-endian coefficients); vectors join entries with ";"; torus points
are "x|y".  Output goes to stdout, errors to stderr with the originating
error name; exit code 0 iff all requested checks pass.
"""

from __future__ import annotations

import argparse
import sys
import time

from .additive import AdditiveParams, build_additive_context
from .convolution import CyclicVector
from .engine import NormalBasisContext, OpCounter, nb_multiply
from .errors import NBGroupError, ParseError
from .extension import ExtField
from .fields import FieldElement, FieldSpec, Polynomial, spec_of_order
from .lucas import LucasParams, TorusPoint, build_lucas_context
from .multiplicative import KummerParams, build_kummer_context
from .oracle import oracle_trials, verify_normal

CONTEXT_VERSION = "1"


# -- element/vector text helpers -------------------------------------------

def parse_coords(spec: FieldSpec, s: str, n: int) -> CyclicVector:
    """Vector text: ';'-separated element texts, or comma-separated scalars."""
    s = s.strip()
    if ";" in s:
        vec = CyclicVector.from_text(spec, s)
    else:
        vec = CyclicVector(spec, [FieldElement.from_text(spec, part) for part in s.split(",")])
    if len(vec) != n:
        raise ParseError(f"expected {n} coordinates, got {len(vec)}")
    return vec


def format_coords(vec: CyclicVector) -> str:
    """Comma form when every coordinate lies in the prime field, else ';' form.

    Trailing zero coefficients of each coordinate are trimmed for display
    (parsing pads them back).
    """
    texts = []
    for r in vec.entries:
        coeffs = list(FieldElement(vec.spec, r).coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        texts.append(",".join(str(c) for c in coeffs))
    if all("," not in t for t in texts):
        return ",".join(texts)
    return ";".join(texts)


# -- context file -----------------------------------------------------------

def _poly_text(ext: ExtField) -> str:
    return ";".join(FieldElement(ext.base, c).text() for c in ext.modulus.coeffs)


def context_to_lines(ctx: NormalBasisContext) -> list[str]:
    lines = [
        f"version={CONTEXT_VERSION}",
        f"kind={ctx.kind}",
        f"base={ctx.base.text()}",
        f"n={ctx.n}",
        f"scale={ctx.scale.text()}",
        f"differenced={int(ctx.differenced)}",
        f"frobenius_shift={ctx.frobenius_shift}",
    ]
    for key in sorted(ctx.params):
        lines.append(f"param.{key}={ctx.params[key]}")
    lines.append(f"i_vec={ctx.i_vec.text()}")
    lines.append(f"u_vec={ctx.u_vec.text()}")
    lines.append(f"u_inv_vec={ctx.u_inv_vec.text()}")
    lines.append(f"w_vec={ctx.w_vec.text()}")
    lines.append(f"one_coords={ctx.one_coords.text()}")
    lines.append(f"ext_poly={_poly_text(ctx.ext)}")
    for k, row in enumerate(ctx.theta_rows):
        lines.append(f"theta.{k}={ctx.ext.text_of(row)}")
    return lines


def write_context(ctx: NormalBasisContext, path: str) -> None:
    with open(path, "w") as fh:
        fh.write("\n".join(context_to_lines(ctx)) + "\n")


def context_from_lines(lines: list[str]) -> NormalBasisContext:
    kv: dict[str, str] = {}
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"bad context line {line!r}")
        key, value = line.split("=", 1)
        kv[key] = value
    try:
        if kv["version"] != CONTEXT_VERSION:
            raise ParseError(f"unsupported context version {kv['version']!r}")
        base = FieldSpec.from_text(kv["base"])
        n = int(kv["n"])
        ext_coeffs = [FieldElement.from_text(base, part).raw for part in kv["ext_poly"].split(";")]
        ext = ExtField(base, Polynomial(base, ext_coeffs))
        theta_rows = []
        for k in range(n):
            row = tuple(FieldElement.from_text(base, part).raw for part in kv[f"theta.{k}"].split(";"))
            theta_rows.append(row)
        params = {key[6:]: value for key, value in kv.items() if key.startswith("param.")}
        return NormalBasisContext(
            kv["kind"], base, n,
            i_vec=CyclicVector.from_text(base, kv["i_vec"]),
            u_vec=CyclicVector.from_text(base, kv["u_vec"]),
            u_inv_vec=CyclicVector.from_text(base, kv["u_inv_vec"]),
            w_vec=CyclicVector.from_text(base, kv["w_vec"]),
            scale=FieldElement.from_text(base, kv["scale"]),
            differenced=bool(int(kv["differenced"])),
            ext=ext,
            theta_rows=tuple(theta_rows),
            one_coords=CyclicVector.from_text(base, kv["one_coords"]),
            frobenius_shift=int(kv["frobenius_shift"]),
            params=params,
        )
    except KeyError as exc:
        raise ParseError(f"context file is missing {exc}") from exc


def read_context(path: str) -> NormalBasisContext:
    with open(path) as fh:
        return context_from_lines(fh.readlines())


def rebuild_from_echo(ctx: NormalBasisContext) -> NormalBasisContext:
    """Re-derive the context from its parameter echo (for the verify check)."""
    base = ctx.base
    p = ctx.params
    if ctx.kind == "additive":
        return build_additive_context(AdditiveParams(
            base, FieldElement.from_text(base, p["a"]), FieldElement.from_text(base, p["r"])))
    if ctx.kind == "multiplicative":
        return build_kummer_context(KummerParams(
            base, int(p["n"]), int(p["m"]),
            FieldElement.from_text(base, p["a"]), FieldElement.from_text(base, p["zeta"])))
    if ctx.kind == "lucas":
        return build_lucas_context(LucasParams(
            base, FieldElement.from_text(base, p["alpha"]), int(p["n"]),
            generator=TorusPoint.from_text(base, p["gen"]), seed=int(p["seed"])))
    raise ParseError(f"unknown context kind {ctx.kind!r}")


# -- subcommands -------------------------------------------------------------

def _spec_from_args(args) -> FieldSpec:
    ext = tuple(int(c) for c in args.ext.split(",")) if getattr(args, "ext", None) else None
    if getattr(args, "q", None) is not None:
        return spec_of_order(args.q, ext)
    if getattr(args, "p", None) is None:
        raise ParseError("need --p (with --ext) or --q to fix the base field")
    if ext is None:
        return FieldSpec(args.p)
    return FieldSpec(args.p, ext)


def cmd_construct(args) -> int:
    if args.kind in ("kummer", "lucas") and args.n is None:
        raise ParseError(f"{args.kind} construction needs --n")
    if args.kind == "additive":
        base = _spec_from_args(args)
        from .additive import default_isogeny_target

        a = FieldElement.from_text(base, args.a) if args.a else default_isogeny_target(base)
        if args.r:
            r = FieldElement.from_text(base, args.r)
        else:
            r = FieldElement(base, base.raw_from_coeffs([0, 1]))   # the class of X
        ctx = build_additive_context(AdditiveParams(base, a, r))
    elif args.kind == "kummer":
        base = _spec_from_args(args)
        a = FieldElement.from_text(base, args.a) if args.a else None
        zeta = FieldElement.from_text(base, args.zeta) if args.zeta else None
        ctx = build_kummer_context(KummerParams(base, args.n, args.m, a, zeta))
    else:
        base = _spec_from_args(args)
        from .lucas import smallest_nonsquare

        alpha = FieldElement.from_text(base, args.alpha) if args.alpha else smallest_nonsquare(base)
        gen = TorusPoint.from_text(base, args.gen) if args.gen else None
        ctx = build_lucas_context(LucasParams(base, alpha, args.n, generator=gen, seed=args.seed))

    report = verify_normal(ctx, trials=args.trials, seed=args.seed)
    print(f"constructed {ctx.kind} context: n={ctx.n}, K={ctx.base.text()}")
    for line in report.lines():
        print(line)
    if args.out:
        write_context(ctx, args.out)
        print(f"wrote {args.out}")
    return 0 if report.ok else 1


def cmd_mul(args) -> int:
    ctx = read_context(args.context)
    x = ctx.element(parse_coords(ctx.base, args.x, ctx.n))
    y = ctx.element(parse_coords(ctx.base, args.y, ctx.n))
    out = nb_multiply(ctx, x, y, conv_mode=args.path)
    print(format_coords(out.coords))
    return 0


def cmd_verify(args) -> int:
    ctx = read_context(args.context)
    ok = True

    rebuilt = rebuild_from_echo(ctx)
    stable = context_to_lines(rebuilt) == context_to_lines(ctx)
    print(f"[{'ok' if stable else 'FAIL'}] re-derivation from the parameter echo is bit-exact")
    ok &= stable

    report = verify_normal(ctx, trials=0)
    for line in report.lines():
        print(line)
    ok &= report.ok

    matches, total = oracle_trials(ctx, args.trials, args.seed)
    print(f"{matches}/{total} oracle matches")
    ok &= matches == total

    return 0 if ok else 1


def cmd_weight(args) -> int:
    from .oracle import compute_weight

    ctx = read_context(args.context)
    print(compute_weight(ctx))
    return 0


def _bench_context(kind: str, n: int, q: int | None, seed: int) -> NormalBasisContext:
    if kind == "kummer":
        if q is None:
            q = 3
            while (q - 1) % (2 * n) != 0 or not _is_prime_power(q):
                q += 2
        base = spec_of_order(q)
        return build_kummer_context(KummerParams(base, n))
    if kind == "lucas":
        if q is None:
            q = 3
            while not (_is_prime_power(q) and q % 2 == 1 and (q + 1) % n == 0 and n < q + 1):
                q += 2
        base = spec_of_order(q)
        from .lucas import smallest_nonsquare

        return build_lucas_context(LucasParams(base, smallest_nonsquare(base), n, seed=seed))
    raise ValueError(f"bench supports kummer and lucas families, not {kind!r}")


def _is_prime_power(q: int) -> bool:
    from .fields import factorize

    return len(factorize(q)) == 1 if q > 1 else False


def bench_table(kind: str, sizes: list[int], q: int | None, seed: int,
                reps: int = 200, conv_mode: str = "fast") -> list[dict]:
    """Per-size timing rows: median wall time per multiply plus op counts."""
    import random

    rows = []
    for n in sizes:
        ctx = _bench_context(kind, n, q, seed)
        rng = random.Random(seed)
        pairs = [(ctx.random_element(rng), ctx.random_element(rng)) for _ in range(min(reps, 64))]
        counter = OpCounter()
        best = []
        for trial in range(3):
            t0 = time.perf_counter()
            done = 0
            while done < reps:
                x, y = pairs[done % len(pairs)]
                nb_multiply(ctx, x, y, counter=counter, conv_mode=conv_mode)
                done += 1
            best.append((time.perf_counter() - t0) / reps)
        rows.append({
            "kind": kind, "n": n, "q": ctx.base.q,
            "seconds_per_multiply": sorted(best)[1],
            "convolutions_per_multiply": counter.convolutions // (3 * reps),
            "pointwise_per_multiply": counter.pointwise_products // (3 * reps),
        })
    return rows


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    rows = bench_table(args.kind, sizes, args.q, args.seed, reps=args.reps, conv_mode=args.path)
    header = ["kind", "n", "q", "seconds_per_multiply",
              "convolutions_per_multiply", "pointwise_per_multiply"]
    csv_lines = [",".join(header)]
    for row in rows:
        csv_lines.append(",".join(str(row[h]) for h in header))
    out = "\n".join(csv_lines)
    print(out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(out + "\n")
    if args.plot:
        _plot_bench(rows, args.plot)
        print(f"wrote {args.plot}")
    return 0


def _plot_bench(rows: list[dict], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ns = [r["n"] for r in rows]
    ts = [r["seconds_per_multiply"] * 1e6 for r in rows]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.plot(ns, ts, "o-")
    ax.set_xscale("log", base=2)
    ax.set_yscale("log")
    ax.set_xlabel("degree n")
    ax.set_ylabel("time per multiply (us)")
    ax.set_title(f"{rows[0]['kind']} family, fast path")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nbgroup",
                                     description="normal bases from 1-dimensional algebraic groups")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a context and print its verification summary")
    c.add_argument("kind", choices=["additive", "kummer", "lucas"])
    c.add_argument("--p", type=int, help="characteristic (additive)")
    c.add_argument("--q", type=int, help="field order (kummer/lucas; prime power)")
    c.add_argument("--ext", help="defining polynomial of K, little-endian ints")
    c.add_argument("--a", help="isogeny target a (element text)")
    c.add_argument("--r", help="evaluation point x(R) (additive)")
    c.add_argument("--n", type=int, help="extension degree (kummer/lucas)")
    c.add_argument("--m", type=int, help="cofactor m (kummer)")
    c.add_argument("--zeta", help="primitive mn-th root of unity (kummer)")
    c.add_argument("--alpha", help="nonsquare alpha (lucas)")
    c.add_argument("--gen", help="generator point x|y (lucas)")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=20)
    c.add_argument("--out", help="write the context file here")
    c.set_defaults(func=cmd_construct)

    m = sub.add_parser("mul", help="multiply two coordinate vectors")
    m.add_argument("context")
    m.add_argument("--x", required=True)
    m.add_argument("--y", required=True)
    m.add_argument("--path", choices=["auto", "naive", "fast"], default="auto")
    m.set_defaults(func=cmd_mul)

    v = sub.add_parser("verify", help="oracle-equivalence suite for a context file")
    v.add_argument("context")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("weight", help="print the weight of the stored basis")
    w.add_argument("context")
    w.set_defaults(func=cmd_weight)

    b = sub.add_parser("bench", help="time the multiply across a size list")
    b.add_argument("kind", choices=["kummer", "lucas"])
    b.add_argument("--sizes", default="6,12,24,48")
    b.add_argument("--q", type=int, help="fixed field order (default: smallest per size)")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--reps", type=int, default=200)
    b.add_argument("--path", choices=["auto", "naive", "fast"], default="fast")
    b.add_argument("--csv", help="also write the table to this file")
    b.add_argument("--plot", help="render a timing figure (PNG) to this file")
    b.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NBGroupError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"ValueError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
