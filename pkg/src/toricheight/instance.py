"""Instance files: parsing, validation and rendering.

An instance is a JSON document::

    {
      "version": 1,
      "n": 1,
      "blocks": [{"A": [[0], [1], [2]], "alpha": ["1", "2", "1"]}],
      "b": [1, 0, 0],
      "c": [2],
      "samples": [["1"], ["2"]],
      "options": {"normalized_mode": false, "waive_product_formula": false,
                  "precision_cap_bits": 16384}
    }

A single block may be written inline with top-level ``A`` and ``alpha`` (or
``weights``).  Rationals are strings such as ``"-3/4"``; plain JSON integers
are accepted, floats are not.  A coordinate is either a rational or an
object ``{"q": "p/q", "base": "r", "exponent": "e/f"}`` meaning ``q*r^e``.
Explicit weights are lists of ``{"place": "2" | "inf", "multiplicity":
"1", "tau": [...]}`` where each ``tau`` entry is a LogValue, written either
symbolically (``"2*log(2) - log(3)"``) or as a map ``{"2": "2"}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .invariants import MultiInstance, ToricError, ToricInstance
from .logvalue import LogValue
from .places import INF, Coordinate, PlaceWeights, weights_from_point

__all__ = ["InstanceError", "Options", "Block", "Instance", "parse_instance",
           "load_instance", "render", "instance_to_dict"]

VERSION = 1
DEFAULT_CAP_BITS = 16384


class InstanceError(ValueError):
    """An instance file is malformed or violates a hypothesis."""


@dataclass(frozen=True)
class Options:
    normalized_mode: bool = False
    waive_product_formula: bool = False
    precision_cap_bits: int = DEFAULT_CAP_BITS


@dataclass(frozen=True)
class Block:
    """One configuration with either a point ``alpha`` or explicit weights."""

    A: tuple[tuple[int, ...], ...]
    weights: PlaceWeights
    alpha: tuple[Coordinate, ...] | None = None

    def toric(self, options: Options) -> ToricInstance:
        return ToricInstance(self.A, self.weights,
                             normalized_mode=options.normalized_mode,
                             waive_product_formula=options.waive_product_formula)


@dataclass(frozen=True)
class Instance:
    n: int
    blocks: tuple[Block, ...]
    b: tuple[int, ...] | None = None
    c: tuple[int, ...] | None = None
    samples: tuple[tuple[Fraction, ...], ...] | None = None
    options: Options = field(default_factory=Options)
    version: int = VERSION

    def with_options(self, **changes) -> Instance:
        opts = Options(**{**self.options.__dict__, **changes})
        return Instance(self.n, self.blocks, self.b, self.c, self.samples, opts, self.version)

    def toric(self) -> ToricInstance:
        """The single block as a toric instance."""
        if len(self.blocks) != 1:
            raise InstanceError(
                f"this command needs exactly one block, the instance has {len(self.blocks)}")
        return self.blocks[0].toric(self.options)

    def multi(self) -> MultiInstance:
        if self.c is None:
            raise InstanceError("missing field 'c' (index vector) required for multiheights")
        return MultiInstance(tuple(bl.toric(self.options) for bl in self.blocks), self.c)


# -- parsing ---------------------------------------------------------------

def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InstanceError(f"{where}: rationals must be strings or integers, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"{where}: malformed rational {x!r}") from None
    raise InstanceError(f"{where}: expected a rational, got {x!r}")


def _integer(x, where: str) -> int:
    q = _rational(x, where)
    if q.denominator != 1:
        raise InstanceError(f"{where}: expected an integer, got {x!r}")
    return int(q)


def _array(x, where: str, length: int | None = None) -> list:
    if not isinstance(x, list):
        raise InstanceError(f"{where}: expected an array")
    if length is not None and len(x) != length:
        raise InstanceError(f"{where}: expected {length} entries, got {len(x)}")
    return x


def _coordinate(x, where: str) -> Coordinate:
    try:
        if isinstance(x, dict):
            unknown = set(x) - {"q", "base", "exponent"}
            if unknown or "q" not in x:
                raise InstanceError(f"{where}: a coordinate object needs 'q' and "
                                    "optionally 'base' and 'exponent'")
            return Coordinate(_rational(x["q"], f"{where}.q"),
                              _rational(x.get("base", 1), f"{where}.base"),
                              _rational(x.get("exponent", 0), f"{where}.exponent"))
        return Coordinate(_rational(x, where))
    except InstanceError:
        raise
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from None


def _logvalue(x, where: str) -> LogValue:
    if isinstance(x, int) and not isinstance(x, bool) and x == 0:
        return LogValue.zero()
    if not isinstance(x, (str, dict)):
        raise InstanceError(f"{where}: expected a LogValue string or coefficient map")
    try:
        return LogValue.from_json(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceError(f"{where}: {exc}") from None


def _weights(x, where: str, size: int) -> PlaceWeights:
    entries = []
    for k, e in enumerate(_array(x, where)):
        w = f"{where}[{k}]"
        if not isinstance(e, dict) or "place" not in e or "tau" not in e:
            raise InstanceError(f"{w}: expected an object with 'place' and 'tau'")
        tau = [_logvalue(t, f"{w}.tau[{i}]") for i, t in enumerate(_array(e["tau"], f"{w}.tau", size))]
        mult = _rational(e.get("multiplicity", 1), f"{w}.multiplicity")
        entries.append((str(e["place"]), mult, tau))
    try:
        return PlaceWeights.build(entries, size=size)
    except ValueError as exc:
        raise InstanceError(f"{where}: {exc}") from None


def _block(x, where: str, n: int) -> Block:
    if not isinstance(x, dict):
        raise InstanceError(f"{where}: expected an object")
    unknown = set(x) - {"A", "alpha", "weights"}
    if unknown:
        raise InstanceError(f"{where}: unknown field(s) {sorted(unknown)}")
    if "A" not in x:
        raise InstanceError(f"{where}: missing field 'A'")
    A = []
    for i, a in enumerate(_array(x["A"], f"{where}.A")):
        A.append(tuple(_integer(v, f"{where}.A[{i}][{k}]")
                       for k, v in enumerate(_array(a, f"{where}.A[{i}]", n))))
    if not A:
        raise InstanceError(f"{where}.A: the configuration is empty")
    if ("alpha" in x) == ("weights" in x):
        raise InstanceError(f"{where}: give exactly one of 'alpha' and 'weights'")
    if "alpha" in x:
        alpha = tuple(_coordinate(v, f"{where}.alpha[{i}]")
                      for i, v in enumerate(_array(x["alpha"], f"{where}.alpha", len(A))))
        try:
            w = weights_from_point(alpha)
        except ValueError as exc:
            raise InstanceError(f"{where}.alpha: {exc}") from None
        return Block(tuple(A), w, alpha)
    return Block(tuple(A), _weights(x["weights"], f"{where}.weights", len(A)))


def _options(x) -> Options:
    if x is None:
        return Options()
    if not isinstance(x, dict):
        raise InstanceError("options: expected an object")
    unknown = set(x) - set(Options.__dataclass_fields__)
    if unknown:
        raise InstanceError(f"options: unknown field(s) {sorted(unknown)}")
    for key in ("normalized_mode", "waive_product_formula"):
        if key in x and not isinstance(x[key], bool):
            raise InstanceError(f"options.{key}: expected true or false")
    cap = _integer(x.get("precision_cap_bits", DEFAULT_CAP_BITS), "options.precision_cap_bits")
    if cap < 64:
        raise InstanceError("options.precision_cap_bits: must be at least 64")
    return Options(x.get("normalized_mode", False), x.get("waive_product_formula", False), cap)


def instance_from_dict(data: Any, validate: bool = True) -> Instance:
    if not isinstance(data, dict):
        raise InstanceError("an instance must be a JSON object")
    known = {"version", "n", "blocks", "A", "alpha", "weights", "b", "c", "samples", "options"}
    unknown = set(data) - known
    if unknown:
        raise InstanceError(f"unknown field(s) {sorted(unknown)}")
    version = _integer(data.get("version", VERSION), "version")
    if version != VERSION:
        raise InstanceError(f"version: unsupported version {version}")
    if "n" not in data:
        raise InstanceError("missing field 'n'")
    n = _integer(data["n"], "n")
    if n < 1:
        raise InstanceError("n: the dimension must be positive")

    inline = {k: data[k] for k in ("A", "alpha", "weights") if k in data}
    if inline and "blocks" in data:
        raise InstanceError("give either 'blocks' or a top-level 'A', not both")
    if inline:
        blocks = (_block(inline, "instance", n),)
    else:
        if "blocks" not in data:
            raise InstanceError("missing field 'blocks' (or a top-level 'A')")
        raw = _array(data["blocks"], "blocks")
        if not raw:
            raise InstanceError("blocks: at least one block is needed")
        blocks = tuple(_block(x, f"blocks[{i}]", n) for i, x in enumerate(raw))

    b = c = samples = None
    if "b" in data:
        if len(blocks) != 1:
            raise InstanceError("b: an exponent vector needs a single block")
        b = tuple(_integer(v, f"b[{i}]")
                  for i, v in enumerate(_array(data["b"], "b", len(blocks[0].A))))
    if "c" in data:
        c = tuple(_integer(v, f"c[{i}]")
                  for i, v in enumerate(_array(data["c"], "c", len(blocks))))
    if "samples" in data:
        samples = []
        for i, s in enumerate(_array(data["samples"], "samples")):
            pt = tuple(_rational(v, f"samples[{i}][{k}]")
                       for k, v in enumerate(_array(s, f"samples[{i}]", n)))
            if any(x == 0 for x in pt):
                raise InstanceError(f"samples[{i}]: torus points need nonzero entries")
            samples.append(pt)
        samples = tuple(samples)
    inst = Instance(n, blocks, b, c, samples, _options(data.get("options")), version)
    if validate:
        validate_instance(inst)
    return inst


def validate_instance(inst: Instance) -> None:
    """Check the hypotheses of every operation the instance can feed."""
    try:
        if len(inst.blocks) == 1:
            inst.toric().lattice_factor
        if inst.c is not None or len(inst.blocks) > 1:
            inst.multi()
    except ToricError as exc:
        raise InstanceError(str(exc)) from None


def parse_instance(text: str, validate: bool = True) -> Instance:
    """Parse and validate an instance from JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(data, validate)


def load_instance(path, validate: bool = True) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read(), validate)


# -- rendering -------------------------------------------------------------

def _render_coordinate(x: Coordinate):
    if x.base == 1:
        return str(x.q)
    return {"q": str(x.q), "base": str(x.base), "exponent": str(x.exponent)}


def _render_block(bl: Block) -> dict:
    out: dict[str, Any] = {"A": [list(a) for a in bl.A]}
    if bl.alpha is not None:
        out["alpha"] = [_render_coordinate(x) for x in bl.alpha]
    else:
        out["weights"] = [
            {"place": INF if e.place == INF else str(e.place),
             "multiplicity": str(e.multiplicity),
             "tau": [str(t) for t in e.tau]}
            for e in bl.weights]
    return out


def instance_to_dict(inst: Instance) -> dict:
    out: dict[str, Any] = {"version": inst.version, "n": inst.n,
                           "blocks": [_render_block(bl) for bl in inst.blocks]}
    if inst.b is not None:
        out["b"] = list(inst.b)
    if inst.c is not None:
        out["c"] = list(inst.c)
    if inst.samples is not None:
        out["samples"] = [[str(x) for x in s] for s in inst.samples]
    out["options"] = {
        "normalized_mode": inst.options.normalized_mode,
        "waive_product_formula": inst.options.waive_product_formula,
        "precision_cap_bits": inst.options.precision_cap_bits,
    }
    return out


def render(inst: Instance) -> str:
    """JSON text that parses back to an equal instance."""
    return json.dumps(instance_to_dict(inst), indent=2, ensure_ascii=False) + "\n"
