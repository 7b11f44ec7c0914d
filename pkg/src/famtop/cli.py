"""Command-line front end.

Every command reads one or more definition files, runs one pipeline and
writes a report.  Reports list topologies as open-set families in canonical
order, so identical inputs give byte-identical output.

Exit status: 0 when every verdict is true, 1 when some verdict is false,
2 on parse or usage errors, 3 when a size guard trips.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import bits
from .definitions import Definitions, parse_definitions
from .errors import FamtopError, ParseError, SizeGuardExceeded, UnknownName
from .family_open import LevelChain, build_family_open_topology
from .finite_space import (
    FiniteSpace,
    FunctionSpaceTopology,
    chain_space,
    enumerate_probe_catalog,
    is_corecompact,
    is_T0,
    point_space,
    sierpinski,
)
from .function_space import check_h_properties, isbell_topology, scott_on_opens
from .guards import use_guards
from .tower import RULES, extend_by_rule, stabilization_search, tower_containment, with_induced
from .verification import (
    SplittingReport,
    check_jointly_characterization,
    check_splitting_characterization,
    greatest_splitting_bruteforce,
    is_A_jointly_continuous,
    is_A_splitting,
)

COMMANDS = (
    "space-check", "scott", "isbell", "family-open", "tower",
    "verify-splitting", "verify-jointly", "characterize",
    "greatest-splitting", "stabilize",
)

BUILTIN_CODOMAINS = {"S": sierpinski, "chain3": lambda: chain_space(3), "point": point_space}


class Report:
    """Ordered (key, value) records plus the overall verdict."""

    def __init__(self) -> None:
        self.records: list[tuple[str, str]] = []
        self.ok = True

    def add(self, key: str, value) -> None:
        self.records.append((key, str(value)))

    def verdict(self, key: str, value: bool) -> None:
        self.add(key, "true" if value else "false")
        self.ok = self.ok and value

    def render(self, fmt: str) -> str:
        if fmt == "machine":
            return "".join(f"{k}={v}\n" for k, v in self.records)
        width = max((len(k) for k, _ in self.records), default=0)
        return "".join(f"{k.ljust(width)}  {v}\n" for k, v in self.records)


def _family(labels: Sequence[Sequence]) -> str:
    return "{" + ", ".join("{" + ",".join(str(x) for x in o) + "}" for o in labels) + "}"


def _space_opens(X: FiniteSpace) -> str:
    return _family([X.labels_of(o) for o in X.opens])


def _ids(opens: Sequence[int]) -> str:
    return _family([bits.members(o) for o in opens])


def _add_function_space(rep: Report, prefix: str, t: FunctionSpaceTopology) -> None:
    rep.add(f"{prefix}.maps", " ".join(t.labels()))
    rep.add(f"{prefix}.open_count", len(t.opens))
    rep.add(f"{prefix}.opens", _family(t.open_labels()))


def _add_splitting(rep: Report, prefix: str, r: SplittingReport) -> None:
    rep.verdict(f"{prefix}.verdict", r.verdict)
    rep.add(f"{prefix}.checked", r.checked_count)
    if r.witness is not None:
        w = r.witness
        rep.add(f"{prefix}.witness.space", f"{w.space.name} {_space_opens(w.space)}")
        if isinstance(w.mapping, tuple):
            mapping = " ".join(str(g.table) for g in w.mapping)
        else:
            mapping = str(w.mapping.table)
        rep.add(f"{prefix}.witness.map", mapping)
        rep.add(f"{prefix}.witness.point", w.point)
        rep.add(f"{prefix}.witness.open", bin(w.open_set))


class Context:
    def __init__(self, args: argparse.Namespace) -> None:
        self.args = args
        self.defs = Definitions()
        for path in args.inputs:
            text = Path(path).read_text(encoding="utf-8")
            parsed = parse_definitions(text)
            for name, e in parsed.entities.items():
                if name in self.defs.entities:
                    raise ParseError(parsed.lines[name], f"{path}: name {name!r} defined in an earlier file")
                self.defs.entities[name] = e
                self.defs.lines[name] = parsed.lines[name]

    def _pick(self, table: dict, wanted: str | None, what: str):
        if wanted is not None:
            if wanted not in table:
                raise UnknownName(f"no {what} named {wanted!r}")
            return wanted, table[wanted]
        if len(table) == 1:
            return next(iter(table.items()))
        raise UnknownName(f"--{what} is required ({len(table)} candidates)")

    def space(self) -> tuple[str, FiniteSpace]:
        return self._pick(self.defs.spaces, self.args.space, "space")

    def chain(self) -> tuple[str, LevelChain]:
        return self._pick(self.defs.chains, self.args.chain, "chain")

    def codomain(self) -> FiniteSpace:
        name = self.args.codomain
        if name in BUILTIN_CODOMAINS:
            return BUILTIN_CODOMAINS[name]()
        if name in self.defs.spaces:
            return self.defs.spaces[name]
        raise UnknownName(f"unknown codomain {name!r}")

    def catalog(self):
        return enumerate_probe_catalog(self.args.catalog_points)

    def level(self, chain: LevelChain) -> int:
        return chain.depth if self.args.level is None else self.args.level


def cmd_space_check(ctx: Context, rep: Report) -> None:
    rep.add("spaces", len(ctx.defs.spaces))
    rep.add("topologies", len(ctx.defs.topologies))
    rep.add("chains", len(ctx.defs.chains))
    for name, X in ctx.defs.spaces.items():
        rep.add(f"space.{name}.points", " ".join(str(p) for p in X.points))
        rep.add(f"space.{name}.opens", _space_opens(X))
        rep.add(f"space.{name}.T0", "true" if is_T0(X) else "false")
        rep.add(f"space.{name}.corecompact", "true" if is_corecompact(X) else "false")
    for name, T in ctx.defs.topologies.items():
        rep.add(f"topology.{name}.opens", _space_opens(T))
    for name, C in ctx.defs.chains.items():
        rep.add(f"chain.{name}.depth", C.depth)
        for lvl in C.levels:
            rep.add(f"chain.{name}.level{lvl.index}.carrier_size", lvl.size)
            rep.add(f"chain.{name}.level{lvl.index}.tau", "-" if lvl.tau is None else _ids(lvl.tau.opens))


def cmd_scott(ctx: Context, rep: Report) -> None:
    name, Y = ctx.space()
    sc = scott_on_opens(Y)
    rep.add("space", name)
    rep.add("lattice", _space_opens(Y))
    rep.add("scott.open_count", len(sc.opens))
    rep.add("scott.opens", _family([[_family([Y.labels_of(Y.opens[i])])[1:-1] for i in bits.members(H)]
                                    for H in sc.opens]))


def cmd_isbell(ctx: Context, rep: Report) -> None:
    name, Y = ctx.space()
    rep.add("space", name)
    rep.add("codomain", ctx.args.codomain)
    _add_function_space(rep, "isbell", isbell_topology(Y, ctx.codomain()))


def cmd_family_open(ctx: Context, rep: Report) -> None:
    name, chain = ctx.chain()
    n = ctx.level(chain)
    rep.add("chain", name)
    rep.add("level", n)
    rep.add("codomain", ctx.args.codomain)
    rep.add("carrier_size", chain.level(n).size)
    lvl = chain.level(n)
    if lvl.family is not None:
        # each member of O^n(U) printed as its set of level n-1 carrier ids
        for U, c in zip(chain.base.opens, lvl.values):
            members = [bits.members(lvl.family[j]) for j in bits.members(lvl.carrier[c])]
            rep.add(f"O[{_family([chain.base.labels_of(U)])[1:-1]}]", _family(members))
    rep.add("tau", _ids(chain.tau(n).opens))
    _add_function_space(rep, "t", build_family_open_topology(chain, n, ctx.codomain()))


def cmd_tower(ctx: Context, rep: Report) -> None:
    """Induced tower built on the lowest level that carries a topology.

    Topologies supplied for higher levels are compared with the induced ones
    but not used.
    """
    name, chain = ctx.chain()
    start = next((lvl.index for lvl in chain.levels if lvl.tau is not None), None)
    if start is None:
        raise ParseError(ctx.defs.lines[name], f"chain {name} has no topology on any level")
    supplied = {lvl.index: lvl.tau for lvl in chain.levels if lvl.tau is not None}
    for n in range(start, chain.depth):
        chain = with_induced(chain, n)
    depth = ctx.args.depth if ctx.args.depth is not None else chain.depth
    while chain.depth < depth:
        chain = extend_by_rule(chain, ctx.args.rule)
    Z = ctx.codomain()
    rep.add("chain", name)
    rep.add("start", start)
    rep.add("depth", depth)
    maps = None
    for n in range(start, depth + 1):
        t = build_family_open_topology(chain, n, Z, maps)
        maps = t.maps
        rep.add(f"level{n}.tau", _ids(chain.tau(n).opens))
        if n > start and n in supplied:
            same = supplied[n].opens == chain.tau(n).opens
            rep.add(f"level{n}.supplied_tau_matches", "true" if same else "false")
        rep.add(f"level{n}.t", _family(t.open_labels()))
        if n >= 1:
            h = check_h_properties(chain, n)
            rep.verdict(f"level{n}.h.continuous", h.continuous)
            rep.verdict(f"level{n}.h.open", h.open)
            rep.verdict(f"level{n}.h.onto", h.onto)
            rep.add(f"level{n}.h.homeomorphism", "true" if h.homeomorphism else "false")
    for n in range(start, depth):
        rep.verdict(f"contained.t{n + 1}_in_t{n}", tower_containment(chain, n, Z).contained)


def _target(ctx: Context) -> tuple[str, FunctionSpaceTopology]:
    Z = ctx.codomain()
    if ctx.args.isbell:
        name, Y = ctx.space()
        return f"isbell({name},{ctx.args.codomain})", isbell_topology(Y, Z)
    name, chain = ctx.chain()
    n = ctx.level(chain)
    return f"{name}@{n},{ctx.args.codomain}", build_family_open_topology(chain, n, Z)


def cmd_verify_splitting(ctx: Context, rep: Report) -> None:
    label, t = _target(ctx)
    rep.add("topology", label)
    rep.add("catalog_spaces", len(ctx.catalog()))
    _add_splitting(rep, "splitting", is_A_splitting(t, ctx.catalog()))


def cmd_verify_jointly(ctx: Context, rep: Report) -> None:
    label, t = _target(ctx)
    rep.add("topology", label)
    rep.add("catalog_spaces", len(ctx.catalog()))
    _add_splitting(rep, "jointly", is_A_jointly_continuous(t, ctx.catalog()))


def cmd_characterize(ctx: Context, rep: Report) -> None:
    name, chain = ctx.chain()
    n = ctx.level(chain)
    Z = ctx.codomain()
    rep.add("chain", name)
    rep.add("level", n)
    for key, fn in (("splitting", check_splitting_characterization), ("jointly", check_jointly_characterization)):
        r = fn(chain, n, ctx.catalog(), Z)
        rep.add(f"{key}.topology_side", "true" if r.topology_side.verdict else "false")
        rep.add(f"{key}.condition_side", "true" if r.condition_side else "false")
        rep.verdict(f"{key}.agree", r.agree)


def cmd_greatest_splitting(ctx: Context, rep: Report) -> None:
    name, Y = ctx.space()
    Z = ctx.codomain()
    g = greatest_splitting_bruteforce(Y, Z, ctx.catalog())
    rep.add("space", name)
    rep.add("codomain", ctx.args.codomain)
    _add_function_space(rep, "greatest", g)
    rep.add("equals_isbell", "true" if g.opens == isbell_topology(Y, Z).opens else "false")


def cmd_stabilize(ctx: Context, rep: Report) -> None:
    name, chain = ctx.chain()
    depth = ctx.args.depth if ctx.args.depth is not None else 3
    res = stabilization_search(chain, ctx.args.rule, depth, ctx.codomain())
    rep.add("chain", name)
    rep.add("rule", ctx.args.rule)
    rep.add("max_depth", depth)
    for i, t in enumerate(res.stages):
        rep.add(f"stage{i + 1}.t", _family(t.open_labels()))
    rep.add("stable_at", "none" if res.depth is None else res.depth)


HANDLERS = {
    "space-check": cmd_space_check,
    "scott": cmd_scott,
    "isbell": cmd_isbell,
    "family-open": cmd_family_open,
    "tower": cmd_tower,
    "verify-splitting": cmd_verify_splitting,
    "verify-jointly": cmd_verify_jointly,
    "characterize": cmd_characterize,
    "greatest-splitting": cmd_greatest_splitting,
    "stabilize": cmd_stabilize,
}


def _positive(raw: str) -> int:
    v = int(raw)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="famtop", description="Family-open topologies on finite function spaces.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("inputs", nargs="+", help="definition files")
    p.add_argument("--space")
    p.add_argument("--chain")
    p.add_argument("--level", type=int)
    p.add_argument("--codomain", default="S", help="S, chain3, point, or a space name from the inputs")
    p.add_argument("--isbell", action="store_true", help="verify the Isbell topology of --space")
    p.add_argument("--max-points", type=_positive)
    p.add_argument("--max-candidates", type=_positive)
    p.add_argument("--catalog-points", type=_positive, default=3)
    p.add_argument("--format", choices=("human", "machine"), default="human")
    p.add_argument("--output")
    p.add_argument("--depth", type=int)
    p.add_argument("--rule", choices=RULES, default="scott-opens")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    overrides = {}
    if args.max_points is not None:
        overrides["max_points"] = args.max_points
    if args.max_candidates is not None:
        overrides["max_candidates"] = args.max_candidates
    rep = Report()
    rep.add("command", args.command)
    try:
        with use_guards(**overrides):
            HANDLERS[args.command](Context(args), rep)
    except SizeGuardExceeded as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 3
    except (FamtopError, OSError) as exc:
        code = exc.code if isinstance(exc, FamtopError) else type(exc).__name__
        print(f"error: {code}: {exc}", file=sys.stderr)
        return 2
    text = rep.render(args.format)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
