"""Command-line front end.

Usage::

    toricheight --input conic.json --command height
    toricheight --input conic.json --command oracle --samples 100000 --seed 1 --machine

Exit codes: 0 success, 2 malformed instance or violated hypothesis,
3 precision exhausted while comparing logarithms, 4 Monte-Carlo disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Callable

from . import invariants as inv
from .envelope import RoofFunction, integrate, verify_roof
from .instance import Instance, InstanceError, load_instance, validate_instance
from .logvalue import LogValue, PrecisionExhausted, precision_cap
from .oracle import FloatRoof, agrees, estimate_weighted
from .places import INF, product_formula_check

__all__ = ["COMMANDS", "Report", "execute", "main", "format_logvalue"]

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECISION = 3
EXIT_ORACLE = 4


@dataclass
class Report:
    """Result of one command: human lines, a JSON-ready payload, an exit code."""

    command: str
    lines: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def machine(self) -> str:
        body = {"command": self.command, "exit_code": self.exit_code, **self.data}
        return json.dumps(body, indent=2, ensure_ascii=False)

    def human(self) -> str:
        return "\n".join(self.lines)


def format_logvalue(x: LogValue, digits: int) -> str:
    return f"{x} ≈ {x.approx(digits)}"


def _lv_json(x: LogValue, digits: int) -> dict:
    return {"symbolic": str(x), "coefficients": x.to_json(), "approx": x.approx(digits)}


def _place(p) -> str:
    return INF if p == INF else str(p)


def _point(v) -> list[str]:
    return [str(x) for x in v]


class _Context:
    def __init__(self, inst: Instance, digits: int, seed: int | None, samples: int):
        self.inst = inst
        self.digits = digits
        self.seed = seed
        self.samples = samples

    def lv(self, x: LogValue) -> dict:
        return _lv_json(x, self.digits)

    def show(self, x: LogValue) -> str:
        return format_logvalue(x, self.digits)


# -- commands ----------------------------------------------------------------

def _degree(ctx: _Context, rep: Report) -> None:
    X = ctx.inst.toric()
    d = inv.degree(X)
    rep.lines.append(str(d))
    rep.data["degree"] = d


def _chow_weight(ctx: _Context, rep: Report) -> None:
    X = ctx.inst.toric()
    rows = inv.chow_weights(X)
    rep.data["places"] = []
    for place, mult, w in rows:
        rep.lines.append(f"place {_place(place)} (multiplicity {mult}): {ctx.show(w)}")
        rep.data["places"].append({"place": _place(place), "multiplicity": str(mult),
                                   "chow_weight": ctx.lv(w)})
    if not rows:
        rep.lines.append("no nontrivial places: every Chow weight is 0")


def _height(ctx: _Context, rep: Report) -> None:
    h = inv.normalized_height(ctx.inst.toric())
    rep.lines.append(ctx.show(h))
    rep.data["height"] = ctx.lv(h)


def _multiheight(ctx: _Context, rep: Report) -> None:
    h = inv.normalized_multiheight(ctx.inst.multi())
    rep.lines.append(ctx.show(h))
    rep.data["multiheight"] = ctx.lv(h)
    rep.data["c"] = list(ctx.inst.c)


def _mixed_integral(ctx: _Context, rep: Report) -> None:
    terms = inv.multiheight_terms(ctx.inst.multi())
    rep.data["places"] = []
    for place, mult, mi in terms:
        rep.lines.append(f"place {_place(place)} (multiplicity {mult}): {ctx.show(mi)}")
        rep.data["places"].append({"place": _place(place), "multiplicity": str(mult),
                                   "mixed_integral": ctx.lv(mi)})
    if not terms:
        rep.lines.append("no nontrivial places: every mixed integral is 0")


def _bezout(ctx: _Context, rep: Report) -> None:
    if ctx.inst.b is None:
        raise InstanceError("missing field 'b' (exponent vector) required by bezout")
    r = inv.monomial_bezout(ctx.inst.toric(), ctx.inst.b)
    rep.lines.append(ctx.show(r.height))
    rep.lines.append(f"D = {r.D}, a = ({', '.join(map(str, r.a))}), "
                     f"height of X = {ctx.show(r.base_height)}")
    places = []
    for bp in r.places:
        rep.lines.append(f"place {_place(bp.place)} (multiplicity {bp.multiplicity}):")
        cells = []
        for c in bp.cells:
            rep.lines.append(
                f"  cell {list(c.indices)}: volume {c.volume}, value {c.value_at_a}, "
                f"lattice index {c.lattice_index if c.lattice_index is not None else 'infinite'}")
            cells.append({"indices": list(c.indices),
                          "vertices": [_point(v) for v in c.polytope.vertices],
                          "volume": str(c.volume), "value": ctx.lv(c.value_at_a),
                          "lattice_index": c.lattice_index})
        places.append({"place": _place(bp.place), "multiplicity": str(bp.multiplicity),
                       "cells": cells})
    if r.effective:
        verdict = "holds" if r.inequality_holds else "FAILS"
        rep.lines.append(f"effective divisor: height <= D * height(X) {verdict}")
        if not r.inequality_holds:
            rep.exit_code = EXIT_INVALID
    rep.data.update({"height": ctx.lv(r.height), "D": r.D, "a": list(r.a),
                     "base_height": ctx.lv(r.base_height), "effective": r.effective,
                     "inequality_holds": r.inequality_holds, "places": places})


def _roof_json(ctx: _Context, f: RoofFunction) -> dict:
    return {
        "on_roof": list(f.on_roof),
        "cells": [{"indices": list(c.indices),
                   "vertices": [_point(v) for v in c.polytope.vertices],
                   "gradient": [ctx.lv(g) for g in c.gradient],
                   "constant": ctx.lv(c.constant),
                   "volume": str(c.polytope.volume)} for c in f.cells],
    }


def _envelope(ctx: _Context, rep: Report) -> None:
    blocks = []
    for k, bl in enumerate(ctx.inst.blocks):
        X = bl.toric(ctx.inst.options)
        entries = []
        for place, mult, f in X.roofs():
            rep.lines.append(f"block {k}, place {_place(place)}:")
            below = [i for i, flag in enumerate(f.on_roof) if not flag]
            for c in f.cells:
                verts = ", ".join("(" + ", ".join(_point(v)) + ")" for v in c.polytope.vertices)
                grad = ", ".join(str(g) for g in c.gradient)
                rep.lines.append(f"  cell {list(c.indices)}: vertices {verts}; "
                                 f"gradient ({grad}), constant {c.constant}")
            if below:
                rep.lines.append(f"  below the roof: {below}")
            entries.append({"place": _place(place), "multiplicity": str(mult),
                            **_roof_json(ctx, f)})
        if not entries:
            rep.lines.append(f"block {k}: no nontrivial places")
        blocks.append({"places": entries})
    rep.data["blocks"] = blocks


def _check(ctx: _Context, rep: Report) -> None:
    results: list[tuple[str, bool, str]] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        results.append((name, ok, detail))

    inst = ctx.inst
    for k, bl in enumerate(inst.blocks):
        X = bl.toric(inst.options)
        pf = product_formula_check(X.weights)
        record(f"block {k}: product formula", pf.passed or inst.options.waive_product_formula,
               "" if pf.passed else "sums " + ", ".join(map(str, pf.sums)))
        P = X.polytope
        record(f"block {k}: hull contains every point", all(P.contains(a) for a in X.configuration))
        for place, _, f in X.roofs():
            problems = verify_roof(f)
            record(f"block {k}, place {_place(place)}: roof invariants", not problems,
                   "; ".join(problems))
    if len(inst.blocks) == 1:
        X = inst.toric()
        record("degree is a positive integer", inv.degree(X) > 0)
        if product_formula_check(X.weights).passed:
            h = inv.normalized_height(X)
            record("height is nonnegative", h >= 0, str(h))
            if inst.b is not None:
                r = inv.monomial_bezout(X, inst.b)
                if r.effective:
                    record("Bezout inequality for an effective divisor",
                           bool(r.inequality_holds), str(r.height))
                record("Bezout formula is additive in b",
                       _bezout_additive(X, inst.b), "")
            c_single = (X.n + 1,)
            # multiheights need the differences of A to generate Z^n
            if X.N >= X.n + 1 and X.lattice.is_standard:
                m = inv.normalized_multiheight(inv.MultiInstance((X,), c_single))
                record("multiheight with one block equals the height", m == h, str(m))
    if inst.c is not None:
        M = inst.multi()
        if all(product_formula_check(b.weights).passed for b in M.blocks):
            m = inv.normalized_multiheight(M)
            record("multiheight is nonnegative", m >= 0, str(m))
    if inst.samples:
        X = inst.toric()
        if product_formula_check(X.weights).passed:
            hs = [inv.orbit_point_height(X, t) for t in inst.samples]
            record("orbit point heights are nonnegative", all(x >= 0 for x in hs))

    failed = 0
    for name, ok, detail in results:
        failed += not ok
        line = f"[{'pass' if ok else 'FAIL'}] {name}"
        if detail and not ok:
            line += f" ({detail})"
        rep.lines.append(line)
    rep.lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    rep.data["checks"] = [{"name": n, "passed": ok, "detail": d} for n, ok, d in results]
    rep.data["passed"] = failed == 0
    if failed:
        rep.exit_code = EXIT_INVALID


def _bezout_additive(X: inv.ToricInstance, b) -> bool:
    """The formula is linear in ``b``: split ``b`` into unit vectors."""
    total = LogValue.zero()
    for i, bi in enumerate(b):
        if bi:
            e = [0] * len(b)
            e[i] = 1
            total = total + inv.monomial_bezout(X, e).height * bi
    return total == inv.monomial_bezout(X, b).height


def _oracle(ctx: _Context, rep: Report) -> None:
    X = ctx.inst.toric()
    scale = factorial(X.n + 1) / X.lattice_factor
    roofs = []
    rows = []
    all_ok = True
    for place, mult, f in X.roofs():
        exact = integrate(f)
        fr = FloatRoof(X.configuration, f.heights)
        mc = estimate_weighted([(fr, 1.0)], ctx.samples, ctx.seed)
        ok = agrees(mc, float(exact))
        all_ok &= ok
        roofs.append((fr, float(mult) * scale))
        rows.append({"place": _place(place), "exact": ctx.lv(exact),
                     "estimate": mc.estimate, "std_error": mc.std_error,
                     "z": mc.z_score(float(exact)), "agrees": ok})
        rep.lines.append(
            f"place {_place(place)}: integral {ctx.show(exact)}; estimate "
            f"{mc.estimate:.6g} ± {mc.std_error:.2g} ({'agrees' if ok else 'DISAGREES'})")
    product_ok = product_formula_check(X.weights).passed
    if product_ok or ctx.inst.options.waive_product_formula:
        h = inv.normalized_height(X)
        mc = estimate_weighted(roofs, ctx.samples, ctx.seed)
        ok = agrees(mc, float(h))
        all_ok &= ok
        rep.lines.append(f"height: {ctx.show(h)}; estimate {mc.estimate:.6g} "
                         f"± {mc.std_error:.2g} ({'agrees' if ok else 'DISAGREES'})")
        rep.data["height"] = {"exact": ctx.lv(h), "estimate": mc.estimate,
                              "std_error": mc.std_error, "agrees": ok}
    rep.lines.append(f"{ctx.samples} samples, seed {ctx.seed}, tolerance 3 standard errors")
    rep.data.update({"places": rows, "samples": ctx.samples, "seed": ctx.seed,
                     "agrees": all_ok})
    if not all_ok:
        rep.exit_code = EXIT_ORACLE


def _minima_report(ctx: _Context, rep: Report) -> None:
    samples = ctx.inst.samples or ()
    r = inv.minima_report(ctx.inst.toric(), samples)
    rep.lines.append(f"height / degree = {ctx.show(r.height_over_degree)} "
                     f"(height {r.height}, degree {r.degree})")
    rep.lines.append(f"successive minima context: mu_1 >= {ctx.show(r.essential_minimum_lower_bound)}, "
                     f"mu_1 + ... + mu_{{n+1}} <= {ctx.show(r.minima_sum_upper_bound)}")
    for t, h in zip(r.samples, r.sample_heights):
        rep.lines.append(f"  t = ({', '.join(map(str, t))}): {ctx.show(h)}")
    if r.minimum is not None:
        rep.lines.append(f"smallest sampled height: {ctx.show(r.minimum)}")
    else:
        rep.lines.append("no samples given")
    rep.data.update({
        "height": ctx.lv(r.height), "degree": r.degree,
        "height_over_degree": ctx.lv(r.height_over_degree),
        "essential_minimum_lower_bound": ctx.lv(r.essential_minimum_lower_bound),
        "minima_sum_upper_bound": ctx.lv(r.minima_sum_upper_bound),
        "samples": [{"t": _point(t), "height": ctx.lv(h)}
                    for t, h in zip(r.samples, r.sample_heights)],
        "minimum": ctx.lv(r.minimum) if r.minimum is not None else None,
    })


COMMANDS: dict[str, Callable[[_Context, Report], None]] = {
    "degree": _degree,
    "chow-weight": _chow_weight,
    "height": _height,
    "multiheight": _multiheight,
    "mixed-integral": _mixed_integral,
    "bezout": _bezout,
    "envelope": _envelope,
    "check": _check,
    "oracle": _oracle,
    "minima-report": _minima_report,
}


def execute(command: str, inst: Instance, *, digits: int = 10, seed: int | None = 0,
            samples: int = 100_000) -> Report:
    """Run ``command`` on ``inst``.

    Errors in the instance or its hypotheses raise :class:`InstanceError`
    (or the library's ``ValueError`` subclasses); precision exhaustion raises
    :class:`PrecisionExhausted`.
    """
    if command not in COMMANDS:
        raise InstanceError(f"unknown command {command!r}; choose from {', '.join(COMMANDS)}")
    rep = Report(command)
    ctx = _Context(inst, digits, seed, samples)
    with precision_cap(inst.options.precision_cap_bits), warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        COMMANDS[command](ctx, rep)
    notes = sorted({str(w.message) for w in caught})
    for msg in notes:
        rep.lines.append(f"warning: {msg}")
    if notes:
        rep.data["warnings"] = notes
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="toricheight",
        description="Exact degrees, Chow weights and heights of projective toric varieties.")
    p.add_argument("--input", required=True, metavar="PATH", help="instance file (JSON)")
    p.add_argument("--command", required=True, choices=list(COMMANDS), metavar="NAME",
                   help="one of: " + ", ".join(COMMANDS))
    p.add_argument("--precision", type=int, default=10, metavar="DIGITS",
                   help="decimal digits of approximate values (default 10)")
    p.add_argument("--seed", type=int, default=0, help="random seed for the oracle")
    p.add_argument("--samples", type=int, default=100_000,
                   help="Monte-Carlo samples for the oracle (default 100000)")
    p.add_argument("--normalized-mode", action="store_true",
                   help="measure volumes in the lattice generated by A")
    p.add_argument("--waive-product-formula", action="store_true",
                   help="compute even if explicit weights fail the product formula")
    p.add_argument("--machine", action="store_true", help="print JSON instead of text")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    def fail(code: int, msg: str) -> int:
        if args.machine:
            print(json.dumps({"command": args.command, "exit_code": code, "error": msg},
                             ensure_ascii=False))
        else:
            print(f"error: {msg}", file=sys.stderr)
        return code

    if args.precision < 1 or args.samples < 2:
        return fail(EXIT_INVALID, "--precision must be >= 1 and --samples >= 2")
    try:
        inst = load_instance(args.input, validate=False)
        changes = {}
        if args.normalized_mode:
            changes["normalized_mode"] = True
        if args.waive_product_formula:
            changes["waive_product_formula"] = True
        if changes:
            inst = inst.with_options(**changes)
        validate_instance(inst)
        rep = execute(args.command, inst, digits=args.precision, seed=args.seed,
                      samples=args.samples)
    except OSError as exc:
        return fail(EXIT_INVALID, f"cannot read {args.input}: {exc.strerror or exc}")
    except PrecisionExhausted as exc:
        return fail(EXIT_PRECISION, f"precision exhausted: {exc}")
    except ValueError as exc:
        return fail(EXIT_INVALID, str(exc))
    print(rep.machine() if args.machine else rep.human())
    return rep.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
