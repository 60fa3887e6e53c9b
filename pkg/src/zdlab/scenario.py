"""Scenario files: a YAML schema describing a space, its symbols and a task
list, parsed with line-accurate schema diagnostics.

The parser walks the composed YAML node tree (rather than the loaded
objects) so every schema error carries the line it came from, and it
collects as many errors as it can instead of stopping at the first.
Rationals are written as ``"p/q"`` strings or bare integers; decimal floats
are rejected to keep symbol data exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import yaml

from .rational import parse_rational
from .sequences import C0Sequence
from .spaces import (
    Affine,
    AtomMap,
    AtomicMeasureSpace,
    ConstFn,
    GridFunction,
    Monomial,
    SimpleFunction,
)
from .symbols import (
    Block,
    ConstMap,
    ConstWeight,
    CPlusInv,
    Geom,
    Inv,
    Power,
    SelfMap,
    Shift,
    WeightSeq,
)

TASK_NAMES = (
    "classify_left",
    "classify_right",
    "classify_zd",
    "witness",
    "tdz_demo",
    "norm",
    "verify_all",
)

_SEQUENCE_RULES = ("tail_projection", "single_hole", "diagonal_tail")


@dataclass(frozen=True)
class SchemaError:
    code: str
    message: str
    line: int

    def __str__(self) -> str:
        return f"line {self.line}: {self.code}: {self.message}"


class ScenarioParseError(ValueError):
    def __init__(self, errors: list[SchemaError]):
        super().__init__("; ".join(str(e) for e in errors))
        self.errors = errors


@dataclass(frozen=True)
class LpSpace:
    p: Fraction | float


@dataclass(frozen=True)
class CxSpace:
    a: Fraction
    b: Fraction
    grid: int


@dataclass(frozen=True)
class AtomicSpace:
    space: AtomicMeasureSpace


SpaceDecl = Union[LpSpace, CxSpace, AtomicSpace]


@dataclass(frozen=True)
class Symbols:
    weight: WeightSeq | None = None
    map: SelfMap | None = None
    multiplier: SimpleFunction | GridFunction | None = None
    diagonal: C0Sequence | None = None
    atom_map: AtomMap | None = None
    atom_weight: SimpleFunction | None = None


@dataclass(frozen=True)
class Task:
    name: str
    params: dict
    line: int


@dataclass(frozen=True)
class Scenario:
    id: str
    space: SpaceDecl
    symbols: Symbols
    tasks: tuple[Task, ...]


# ---------------------------------------------------------------------------
# Node helpers


def _line(node) -> int:
    return node.start_mark.line + 1


class _Walk:
    """Collects schema errors while extracting typed values from YAML nodes."""

    def __init__(self) -> None:
        self.errors: list[SchemaError] = []

    def fail(self, code: str, message: str, node) -> None:
        self.errors.append(SchemaError(code, message, _line(node)))

    def mapping(self, node, what: str) -> dict | None:
        if not isinstance(node, yaml.MappingNode):
            self.fail("BAD_STRUCTURE", f"{what} must be a mapping", node)
            return None
        out = {}
        for key_node, value_node in node.value:
            if not isinstance(key_node, yaml.ScalarNode):
                self.fail("BAD_STRUCTURE", f"{what} keys must be scalars", key_node)
                continue
            out[key_node.value] = (key_node, value_node)
        return out

    def sequence(self, node, what: str) -> list | None:
        if not isinstance(node, yaml.SequenceNode):
            self.fail("BAD_STRUCTURE", f"{what} must be a sequence", node)
            return None
        return list(node.value)

    def string(self, node, what: str) -> str | None:
        if not isinstance(node, yaml.ScalarNode):
            self.fail("BAD_TYPE", f"{what} must be a string", node)
            return None
        return node.value

    def integer(self, node, what: str) -> int | None:
        if isinstance(node, yaml.ScalarNode):
            try:
                return int(node.value)
            except ValueError:
                pass
        self.fail("BAD_TYPE", f"{what} must be an integer", node)
        return None

    def rational(self, node, what: str) -> Fraction | None:
        if isinstance(node, yaml.ScalarNode):
            try:
                return parse_rational(node.value)
            except ValueError:
                pass
        self.fail("BAD_RATIONAL", f"{what} must be an exact rational like 3/4", node)
        return None

    def check_keys(self, entries: dict, allowed: set[str], what: str) -> None:
        for key, (key_node, _) in entries.items():
            if key not in allowed:
                self.fail("UNKNOWN_FIELD", f"unknown {what} field {key!r}", key_node)


# ---------------------------------------------------------------------------
# Symbol parsing


def _parse_int_exceptions(walk: _Walk, node) -> dict[int, int] | None:
    entries = walk.mapping(node, "exceptions")
    if entries is None:
        return None
    out = {}
    for key, (key_node, value_node) in entries.items():
        idx = walk.integer(key_node, "exception index")
        val = walk.integer(value_node, "exception value")
        if idx is not None and val is not None:
            out[idx] = val
    return out


def _parse_rational_exceptions(walk: _Walk, node) -> dict[int, Fraction] | None:
    entries = walk.mapping(node, "exceptions")
    if entries is None:
        return None
    out = {}
    for key, (key_node, value_node) in entries.items():
        idx = walk.integer(key_node, "exception index")
        val = walk.rational(value_node, "exception value")
        if idx is not None and val is not None:
            out[idx] = val
    return out


def _parse_tail(walk: _Walk, node, kinds: dict) -> object | None:
    entries = walk.mapping(node, "tail")
    if entries is None:
        return None
    walk.check_keys(entries, {"kind", "params"}, "tail")
    if "kind" not in entries:
        walk.fail("MISSING_FIELD", "tail needs a kind", node)
        return None
    kind = walk.string(entries["kind"][1], "tail kind")
    if kind is None:
        return None
    if kind not in kinds:
        walk.fail(
            "UNKNOWN_TAIL_KIND",
            f"tail kind {kind!r} not in catalog {sorted(kinds)}",
            entries["kind"][1],
        )
        return None
    wanted = kinds[kind]
    params: dict[str, object] = {}
    if "params" in entries:
        pentries = walk.mapping(entries["params"][1], "tail params")
        if pentries is None:
            return None
        walk.check_keys(pentries, set(wanted), "tail param")
        for pname, (ptype, _default) in wanted.items():
            if pname in pentries:
                value_node = pentries[pname][1]
                if ptype == "int":
                    value = walk.integer(value_node, f"tail param {pname}")
                else:
                    value = walk.rational(value_node, f"tail param {pname}")
                if value is None:
                    return None
                params[pname] = value
    for pname, (_ptype, default) in wanted.items():
        if pname not in params:
            if default is None:
                walk.fail("MISSING_FIELD", f"tail kind {kind!r} needs param {pname!r}", node)
                return None
            params[pname] = default
    return kind, params


_MAP_TAILS = {
    "shift": {"s": ("int", None)},
    "block": {"d": ("int", None), "c": ("int", 0)},
    "power": {"k": ("int", None)},
    "const": {"c": ("int", None)},
}

_WEIGHT_TAILS = {
    "const": {"c": ("rational", None)},
    "c_plus_inv": {"c": ("rational", None), "a": ("rational", None)},
    "inv": {"a": ("rational", None)},
    "geom": {"a": ("rational", None), "r": ("rational", None)},
}

_DIAGONAL_TAILS = {
    "inv": {"a": ("rational", None)},
    "geom": {"a": ("rational", None), "r": ("rational", None)},
}


def _build_map_tail(kind: str, params: dict):
    if kind == "shift":
        return Shift(params["s"])
    if kind == "block":
        return Block(params["d"], params["c"])
    if kind == "power":
        return Power(params["k"])
    return ConstMap(params["c"])


def _build_weight_tail(kind: str, params: dict):
    if kind == "const":
        return ConstWeight(params["c"])
    if kind == "c_plus_inv":
        return CPlusInv(params["c"], params["a"])
    if kind == "inv":
        return Inv(params["a"])
    return Geom(params["a"], params["r"])


def _parse_self_map(walk: _Walk, node) -> SelfMap | None:
    entries = walk.mapping(node, "map symbol")
    if entries is None:
        return None
    walk.check_keys(entries, {"exceptions", "tail_start", "tail"}, "map symbol")
    exceptions = {}
    if "exceptions" in entries:
        parsed = _parse_int_exceptions(walk, entries["exceptions"][1])
        if parsed is None:
            return None
        exceptions = parsed
    tail_start = 1
    if "tail_start" in entries:
        ts = walk.integer(entries["tail_start"][1], "tail_start")
        if ts is None:
            return None
        tail_start = ts
    if "tail" not in entries:
        walk.fail("MISSING_FIELD", "map symbol needs a tail", node)
        return None
    tail = _parse_tail(walk, entries["tail"][1], _MAP_TAILS)
    if tail is None:
        return None
    try:
        return SelfMap(
            tail=_build_map_tail(*tail), tail_start=tail_start, exceptions=exceptions
        )
    except ValueError as exc:
        walk.fail("BAD_VALUE", str(exc), node)
        return None


def _parse_weight(walk: _Walk, node) -> WeightSeq | None:
    entries = walk.mapping(node, "weight symbol")
    if entries is None:
        return None
    walk.check_keys(entries, {"exceptions", "tail_start", "tail"}, "weight symbol")
    exceptions = {}
    if "exceptions" in entries:
        parsed = _parse_rational_exceptions(walk, entries["exceptions"][1])
        if parsed is None:
            return None
        exceptions = parsed
    tail_start = 1
    if "tail_start" in entries:
        ts = walk.integer(entries["tail_start"][1], "tail_start")
        if ts is None:
            return None
        tail_start = ts
    if "tail" not in entries:
        walk.fail("MISSING_FIELD", "weight symbol needs a tail", node)
        return None
    tail = _parse_tail(walk, entries["tail"][1], _WEIGHT_TAILS)
    if tail is None:
        return None
    try:
        return WeightSeq(
            tail=_build_weight_tail(*tail), tail_start=tail_start, exceptions=exceptions
        )
    except ValueError as exc:
        walk.fail("BAD_VALUE", str(exc), node)
        return None


def _parse_diagonal(walk: _Walk, node) -> C0Sequence | None:
    entries = walk.mapping(node, "diagonal symbol")
    if entries is None:
        return None
    walk.check_keys(entries, {"exceptions", "tail_start", "tail"}, "diagonal symbol")
    exceptions = {}
    if "exceptions" in entries:
        parsed = _parse_rational_exceptions(walk, entries["exceptions"][1])
        if parsed is None:
            return None
        exceptions = parsed
    tail_start = 1
    if "tail_start" in entries:
        ts = walk.integer(entries["tail_start"][1], "tail_start")
        if ts is None:
            return None
        tail_start = ts
    if "tail" not in entries:
        walk.fail("MISSING_FIELD", "diagonal symbol needs a tail", node)
        return None
    tail = _parse_tail(walk, entries["tail"][1], _DIAGONAL_TAILS)
    if tail is None:
        return None
    try:
        built = _build_weight_tail(*tail)
        return C0Sequence(tail=built, tail_start=tail_start, exceptions=exceptions)
    except ValueError as exc:
        walk.fail("BAD_VALUE", str(exc), node)
        return None


_FORM_KINDS = {
    "affine": {"alpha": ("rational", None), "beta": ("rational", None)},
    "monomial": {"k": ("int", None)},
    "const": {"c": ("rational", None)},
}


def _parse_grid_multiplier(walk: _Walk, node, space: CxSpace) -> GridFunction | None:
    entries = walk.mapping(node, "multiplier symbol")
    if entries is None:
        return None
    walk.check_keys(entries, {"form", "samples"}, "multiplier symbol")
    if "form" in entries:
        parsed = _parse_tail(walk, entries["form"][1], _FORM_KINDS)
        if parsed is None:
            return None
        kind, params = parsed
        if kind == "affine":
            form = Affine(params["alpha"], params["beta"])
        elif kind == "monomial":
            form = Monomial(params["k"])
        else:
            form = ConstFn(params["c"])
        try:
            return GridFunction.from_form(space.a, space.b, space.grid, form)
        except ValueError as exc:
            walk.fail("BAD_VALUE", str(exc), node)
            return None
    if "samples" in entries:
        items = walk.sequence(entries["samples"][1], "samples")
        if items is None:
            return None
        values = []
        for item in items:
            v = walk.rational(item, "sample")
            if v is None:
                return None
            values.append(v)
        if len(values) != space.grid:
            walk.fail(
                "BAD_VALUE",
                f"got {len(values)} samples for a grid of {space.grid}",
                entries["samples"][1],
            )
            return None
        try:
            return GridFunction(space.a, space.b, tuple(values))
        except ValueError as exc:
            walk.fail("BAD_VALUE", str(exc), node)
            return None
    walk.fail("MISSING_FIELD", "multiplier needs form or samples", node)
    return None


def _parse_simple_function(walk: _Walk, node, space: AtomicMeasureSpace, what: str) -> SimpleFunction | None:
    entries = walk.mapping(node, what)
    if entries is None:
        return None
    walk.check_keys(entries, {"values"}, what)
    if "values" not in entries:
        walk.fail("MISSING_FIELD", f"{what} needs values", node)
        return None
    ventries = walk.mapping(entries["values"][1], f"{what} values")
    if ventries is None:
        return None
    values = {}
    for atom, (_k, value_node) in ventries.items():
        v = walk.rational(value_node, f"value of atom {atom!r}")
        if v is None:
            return None
        values[atom] = v
    try:
        return SimpleFunction(space, values)
    except ValueError as exc:
        walk.fail("BAD_VALUE", str(exc), node)
        return None


def _parse_atom_map(walk: _Walk, node, space: AtomicMeasureSpace) -> AtomMap | None:
    entries = walk.mapping(node, "atom_map symbol")
    if entries is None:
        return None
    walk.check_keys(entries, {"map"}, "atom_map symbol")
    if "map" not in entries:
        walk.fail("MISSING_FIELD", "atom_map needs a map", node)
        return None
    mentries = walk.mapping(entries["map"][1], "atom map")
    if mentries is None:
        return None
    image = {}
    for atom, (_k, value_node) in mentries.items():
        v = walk.string(value_node, f"image of atom {atom!r}")
        if v is None:
            return None
        image[atom] = v
    try:
        return AtomMap(space, image)
    except ValueError as exc:
        walk.fail("BAD_VALUE", str(exc), node)
        return None


# ---------------------------------------------------------------------------
# Space parsing


def _parse_space(walk: _Walk, node) -> SpaceDecl | None:
    entries = walk.mapping(node, "space")
    if entries is None:
        return None
    if "kind" not in entries:
        walk.fail("MISSING_FIELD", "space needs a kind", node)
        return None
    kind = walk.string(entries["kind"][1], "space kind")
    if kind == "lp":
        walk.check_keys(entries, {"kind", "p"}, "space")
        if "p" not in entries:
            walk.fail("MISSING_FIELD", "lp space needs p", node)
            return None
        pnode = entries["p"][1]
        if isinstance(pnode, yaml.ScalarNode) and pnode.value in ("inf", "infinity"):
            return LpSpace(math.inf)
        p = walk.rational(pnode, "p")
        if p is None:
            return None
        if p < 1:
            walk.fail("BAD_VALUE", "p must satisfy p >= 1", pnode)
            return None
        return LpSpace(p)
    if kind == "cx":
        walk.check_keys(entries, {"kind", "interval", "grid"}, "space")
        if "interval" not in entries or "grid" not in entries:
            walk.fail("MISSING_FIELD", "cx space needs interval and grid", node)
            return None
        bounds = walk.sequence(entries["interval"][1], "interval")
        if bounds is None or len(bounds) != 2:
            walk.fail("BAD_VALUE", "interval must be [a, b]", entries["interval"][1])
            return None
        a = walk.rational(bounds[0], "interval start")
        b = walk.rational(bounds[1], "interval end")
        grid = walk.integer(entries["grid"][1], "grid")
        if a is None or b is None or grid is None:
            return None
        if b <= a:
            walk.fail("BAD_VALUE", "interval must satisfy a < b", entries["interval"][1])
            return None
        if grid < 3:
            walk.fail("BAD_VALUE", "grid must have at least 3 points", entries["grid"][1])
            return None
        return CxSpace(a, b, grid)
    if kind == "atomic":
        walk.check_keys(entries, {"kind", "atoms"}, "space")
        if "atoms" not in entries:
            walk.fail("MISSING_FIELD", "atomic space needs atoms", node)
            return None
        items = walk.sequence(entries["atoms"][1], "atoms")
        if items is None:
            return None
        atoms = []
        seen = set()
        ok = True
        for item in items:
            ientries = walk.mapping(item, "atom")
            if ientries is None:
                ok = False
                continue
            walk.check_keys(ientries, {"id", "mass"}, "atom")
            if "id" not in ientries or "mass" not in ientries:
                walk.fail("MISSING_FIELD", "atom needs id and mass", item)
                ok = False
                continue
            atom_id = walk.string(ientries["id"][1], "atom id")
            mass = walk.rational(ientries["mass"][1], "atom mass")
            if atom_id is None or mass is None:
                ok = False
                continue
            if mass <= 0:
                walk.fail(
                    "NEGATIVE_MASS",
                    f"atom {atom_id!r} has non-positive mass {mass}",
                    ientries["mass"][1],
                )
                ok = False
                continue
            if atom_id in seen:
                walk.fail("DUPLICATE_ATOM", f"atom {atom_id!r} repeated", ientries["id"][1])
                ok = False
                continue
            seen.add(atom_id)
            atoms.append((atom_id, mass))
        if not ok or not atoms:
            return None
        return AtomicSpace(AtomicMeasureSpace(tuple(atoms)))
    walk.fail("UNKNOWN_SPACE", f"space kind {kind!r} not in (lp, cx, atomic)", node)
    return None


# ---------------------------------------------------------------------------
# Task parsing


_TASK_PARAM_KEYS = {
    "classify_left": set(),
    "classify_right": set(),
    "classify_zd": set(),
    "witness": {"side"},
    "tdz_demo": {"rule", "n_max", "N", "probes"},
    "norm": {"sizes"},
    "verify_all": {"sizes"},
}


def _parse_probes(walk: _Walk, node):
    items = walk.sequence(node, "probes")
    if items is None:
        return None
    probes = []
    for item in items:
        if isinstance(item, yaml.ScalarNode):
            probes.append(item.value)
        elif isinstance(item, yaml.SequenceNode):
            vec = []
            for sub in item.value:
                v = walk.rational(sub, "probe entry")
                if v is None:
                    return None
                vec.append(v)
            probes.append(tuple(vec))
        else:
            walk.fail("BAD_TYPE", "probe must be a name or a vector", item)
            return None
    return tuple(probes)


def _parse_task(walk: _Walk, node, space: SpaceDecl, symbols: Symbols) -> Task | None:
    entries = walk.mapping(node, "task")
    if entries is None:
        return None
    if "task" not in entries:
        walk.fail("MISSING_FIELD", "task entry needs a task name", node)
        return None
    name = walk.string(entries["task"][1], "task name")
    if name is None:
        return None
    if name not in TASK_NAMES:
        walk.fail("UNKNOWN_TASK", f"task {name!r} not in {TASK_NAMES}", entries["task"][1])
        return None
    walk.check_keys(entries, {"task"} | _TASK_PARAM_KEYS[name], f"task {name}")
    params: dict = {}
    if "side" in entries:
        side = walk.string(entries["side"][1], "side")
        if side not in ("left", "right", "both"):
            walk.fail("BAD_VALUE", "side must be left, right or both", entries["side"][1])
            return None
        params["side"] = side
    for key in ("n_max", "N"):
        if key in entries:
            value = walk.integer(entries[key][1], key)
            if value is None:
                return None
            if value < 1:
                walk.fail("BAD_VALUE", f"{key} must be >= 1", entries[key][1])
                return None
            params[key] = value
    if "rule" in entries:
        rule = walk.string(entries["rule"][1], "rule")
        if rule not in _SEQUENCE_RULES:
            walk.fail("BAD_VALUE", f"rule must be one of {_SEQUENCE_RULES}", entries["rule"][1])
            return None
        params["rule"] = rule
    if "probes" in entries:
        probes = _parse_probes(walk, entries["probes"][1])
        if probes is None:
            return None
        params["probes"] = probes
    if "sizes" in entries:
        items = walk.sequence(entries["sizes"][1], "sizes")
        if items is None:
            return None
        sizes = []
        for item in items:
            v = walk.integer(item, "size")
            if v is None or v < 1:
                walk.fail("BAD_VALUE", "sizes must be positive integers", item)
                return None
            sizes.append(v)
        params["sizes"] = tuple(sizes)
    task = Task(name, params, _line(node))
    _check_task_symbols(walk, node, task, space, symbols)
    return task


def _check_task_symbols(walk: _Walk, node, task: Task, space: SpaceDecl, symbols: Symbols) -> None:
    def need(symbol_name: str, present: bool) -> None:
        if not present:
            walk.fail(
                "UNDEFINED_SYMBOL",
                f"task {task.name!r} needs the symbol {symbol_name!r}",
                node,
            )

    if isinstance(space, LpSpace):
        if task.name in ("classify_left", "classify_right", "classify_zd", "witness", "norm", "verify_all"):
            need("map", symbols.map is not None)
        if task.name == "tdz_demo":
            rule = task.params.get("rule")
            if rule == "diagonal_tail" or (rule is None and symbols.diagonal is not None):
                need("diagonal", symbols.diagonal is not None)
            else:
                need("map", symbols.map is not None)
    elif isinstance(space, CxSpace):
        if task.name == "tdz_demo":
            need("multiplier", symbols.multiplier is not None)
        else:
            walk.fail(
                "UNSUPPORTED_TASK",
                f"task {task.name!r} is not defined on cx spaces",
                node,
            )
    else:  # atomic
        if task.name in ("classify_left", "witness", "verify_all"):
            need("atom_map", symbols.atom_map is not None)
        if task.name == "tdz_demo":
            need("multiplier", symbols.multiplier is not None)
        if task.name in ("classify_right", "classify_zd", "norm"):
            walk.fail(
                "UNSUPPORTED_TASK",
                f"task {task.name!r} is not defined on atomic spaces",
                node,
            )


# ---------------------------------------------------------------------------
# Entry point


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario text; raises :class:`ScenarioParseError`
    carrying every schema error found, each with its line."""
    walk = _Walk()
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        line = getattr(getattr(exc, "problem_mark", None), "line", 0) + 1
        raise ScenarioParseError([SchemaError("YAML_SYNTAX", str(exc), line)]) from exc
    if root is None:
        raise ScenarioParseError([SchemaError("BAD_STRUCTURE", "empty scenario", 1)])
    entries = walk.mapping(root, "scenario")
    if entries is None:
        raise ScenarioParseError(walk.errors)
    walk.check_keys(entries, {"id", "space", "symbols", "tasks"}, "scenario")

    scenario_id = None
    if "id" in entries:
        scenario_id = walk.string(entries["id"][1], "id")
    else:
        walk.fail("MISSING_FIELD", "scenario needs an id", root)

    space = None
    if "space" in entries:
        space = _parse_space(walk, entries["space"][1])
    else:
        walk.fail("MISSING_FIELD", "scenario needs a space", root)

    symbols = Symbols()
    if space is not None and "symbols" in entries:
        sym_entries = walk.mapping(entries["symbols"][1], "symbols")
        if sym_entries is not None:
            allowed = {"weight", "map", "multiplier", "diagonal", "atom_map", "atom_weight"}
            walk.check_keys(sym_entries, allowed, "symbols")
            kwargs: dict = {}
            if "weight" in sym_entries:
                kwargs["weight"] = _parse_weight(walk, sym_entries["weight"][1])
            if "map" in sym_entries:
                kwargs["map"] = _parse_self_map(walk, sym_entries["map"][1])
            if "diagonal" in sym_entries:
                kwargs["diagonal"] = _parse_diagonal(walk, sym_entries["diagonal"][1])
            if "multiplier" in sym_entries:
                mnode = sym_entries["multiplier"][1]
                if isinstance(space, CxSpace):
                    kwargs["multiplier"] = _parse_grid_multiplier(walk, mnode, space)
                elif isinstance(space, AtomicSpace):
                    kwargs["multiplier"] = _parse_simple_function(
                        walk, mnode, space.space, "multiplier"
                    )
                else:
                    walk.fail(
                        "BAD_VALUE", "multiplier symbols need a cx or atomic space", mnode
                    )
            if "atom_map" in sym_entries:
                anode = sym_entries["atom_map"][1]
                if isinstance(space, AtomicSpace):
                    kwargs["atom_map"] = _parse_atom_map(walk, anode, space.space)
                else:
                    walk.fail("BAD_VALUE", "atom_map needs an atomic space", anode)
            if "atom_weight" in sym_entries:
                wnode = sym_entries["atom_weight"][1]
                if isinstance(space, AtomicSpace):
                    kwargs["atom_weight"] = _parse_simple_function(
                        walk, wnode, space.space, "atom_weight"
                    )
                else:
                    walk.fail("BAD_VALUE", "atom_weight needs an atomic space", wnode)
            kwargs = {k: v for k, v in kwargs.items() if v is not None}
            symbols = Symbols(**kwargs)

    tasks: list[Task] = []
    if "tasks" in entries:
        items = walk.sequence(entries["tasks"][1], "tasks")
        if items is not None and space is not None:
            for item in items:
                task = _parse_task(walk, item, space, symbols)
                if task is not None:
                    tasks.append(task)
    else:
        walk.fail("MISSING_FIELD", "scenario needs a task list", root)

    if walk.errors:
        raise ScenarioParseError(walk.errors)
    return Scenario(scenario_id, space, symbols, tuple(tasks))
