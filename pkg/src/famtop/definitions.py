"""Line-oriented definition files for spaces, topologies and level chains.

A file is a sequence of blocks, each opened by a header line::

    space Y
    points a b c
    open -            # the empty set
    open a
    open a b c

    topology t0
    carrier 0 1 2 3 4
    open -
    open 3
    open 0 1 2 3 4

    chain C over Y
    level 0
    tau use t0
    level 1
    member p = { 1 3 }
    member q = { 2 3 }
    tau open { }
    tau open { 1 3 }
    tau open { 0 1 2 3 }

Carrier ids at level 0 are the positions of the opens of the base space in
sorted-bitmask order; at level n >= 1 they are positions in the sorted
carrier (see ``family_open``).  ``family powerset|scott-opens|tau`` may stand
in for member lines and ``tau scott|induced|discrete|indiscrete|use NAME`` for
explicit ``tau open`` lines.  Names are resolved after the whole file is
read, so blocks may appear in any order.  ``#`` starts a comment.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable

from . import bits
from .errors import DanglingReference, DuplicateName, FamtopError, ParseError, TopologyAxiomError
from .family_open import LevelChain
from .finite_space import FiniteSpace, SetFamilyTopology, validate_topology
from .topology_algebra import (
    discrete_topology,
    inclusion_poset,
    indiscrete_topology,
    scott_topology,
    topology_on,
)
from .tower import induced_next_topology, next_family

_TAU_KEYWORDS = ("scott", "induced", "discrete", "indiscrete")


@dataclasses.dataclass
class Definitions:
    entities: dict[str, object] = dataclasses.field(default_factory=dict)
    lines: dict[str, int] = dataclasses.field(default_factory=dict)

    def _kind(self, cls) -> dict[str, object]:
        return {k: v for k, v in self.entities.items() if type(v) is cls}

    @property
    def spaces(self) -> dict[str, FiniteSpace]:
        return self._kind(FiniteSpace)

    @property
    def topologies(self) -> dict[str, SetFamilyTopology]:
        return self._kind(SetFamilyTopology)

    @property
    def chains(self) -> dict[str, LevelChain]:
        return self._kind(LevelChain)


@dataclasses.dataclass
class _Block:
    kind: str
    name: str
    line: int
    args: list[str]
    body: list[tuple[int, list[str]]] = dataclasses.field(default_factory=list)


def _tokens(raw: str) -> list[str]:
    raw = raw.split("#", 1)[0]
    return raw.replace("{", " { ").replace("}", " } ").replace("=", " = ").split()


def _braced(lineno: int, toks: list[str]) -> list[str]:
    if not toks or toks[0] != "{" or toks[-1] != "}":
        raise ParseError(lineno, "expected '{ ... }'")
    return toks[1:-1]


def _ids(lineno: int, toks: Iterable[str], k: int) -> int:
    m = 0
    for t in toks:
        if not t.isdigit() or int(t) >= k:
            raise ParseError(lineno, f"carrier id {t!r} out of range 0..{k - 1}")
        m |= 1 << int(t)
    return m


def _split_blocks(text: str) -> list[_Block]:
    blocks: list[_Block] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokens(raw)
        if not toks:
            continue
        head = toks[0]
        if head in ("space", "topology", "chain"):
            if len(toks) < 2:
                raise ParseError(lineno, f"{head} needs a name")
            blocks.append(_Block(head, toks[1], lineno, toks[2:]))
        elif not blocks:
            raise ParseError(lineno, f"{head!r} outside of a block")
        else:
            blocks[-1].body.append((lineno, toks))
    return blocks


def _parse_space(b: _Block) -> FiniteSpace:
    points: list[str] | None = None
    opens: list[list[str]] = []
    for lineno, toks in b.body:
        if toks[0] == "points":
            if points is not None:
                raise ParseError(lineno, "points given twice")
            points = toks[1:]
            if len(set(points)) != len(points):
                raise ParseError(lineno, "duplicate point labels")
        elif toks[0] == "open":
            if points is None:
                raise ParseError(lineno, "open before points")
            members = [] if toks[1:] == ["-"] else toks[1:]
            for p in members:
                if p not in points:
                    raise ParseError(lineno, f"unknown point {p!r}")
            opens.append(members)
        else:
            raise ParseError(lineno, f"unexpected {toks[0]!r} in space block")
    if points is None:
        raise ParseError(b.line, f"space {b.name} has no points line")
    try:
        return validate_topology(points, opens, b.name)
    except TopologyAxiomError as exc:
        raise ParseError(b.line, f"{exc.code}: {exc}") from exc


def _parse_topology(b: _Block) -> SetFamilyTopology:
    carrier: list[str] | None = None
    opens: list[list[str]] = []
    for lineno, toks in b.body:
        if toks[0] == "carrier":
            carrier = toks[1:]
        elif toks[0] == "open":
            if carrier is None:
                raise ParseError(lineno, "open before carrier")
            members = [] if toks[1:] == ["-"] else toks[1:]
            for p in members:
                if p not in carrier:
                    raise ParseError(lineno, f"unknown carrier element {p!r}")
            opens.append(members)
        else:
            raise ParseError(lineno, f"unexpected {toks[0]!r} in topology block")
    if carrier is None:
        raise ParseError(b.line, f"topology {b.name} has no carrier line")
    try:
        return validate_topology(carrier, opens, b.name, cls=SetFamilyTopology)
    except TopologyAxiomError as exc:
        raise ParseError(b.line, f"{exc.code}: {exc}") from exc


def _resolve_tau(chain: LevelChain, n: int, entry: tuple, topologies: dict) -> SetFamilyTopology:
    lineno, kind, payload = entry
    k = chain.level(n).size
    try:
        if kind == "open":
            return topology_on(range(k), payload)
        if kind == "use":
            if payload not in topologies:
                raise DanglingReference(lineno, f"unknown topology {payload!r}")
            t = topologies[payload]
            if t.carrier != tuple(str(i) for i in range(k)):
                raise ParseError(lineno, f"topology {payload} carrier does not match level {n} ids 0..{k - 1}")
            return SetFamilyTopology(tuple(range(k)), t.opens, payload)
        if kind == "scott":
            return scott_topology(inclusion_poset(chain.level(n).carrier))
        if kind == "discrete":
            return discrete_topology(range(k))
        if kind == "indiscrete":
            return indiscrete_topology(range(k))
        if kind == "induced":
            if n == 0:
                raise ParseError(lineno, "level 0 has no previous level to induce from")
            return induced_next_topology(chain, n - 1)
    except TopologyAxiomError as exc:
        raise ParseError(lineno, f"{exc.code}: {exc}") from exc
    raise AssertionError(kind)


def _parse_chain(b: _Block, spaces: dict, topologies: dict) -> LevelChain:
    if len(b.args) != 2 or b.args[0] != "over":
        raise ParseError(b.line, "expected 'chain NAME over SPACE'")
    if b.args[1] not in spaces:
        raise DanglingReference(b.line, f"unknown space {b.args[1]!r}")
    Y = spaces[b.args[1]]
    # per level: (members [(line, label, ids)], family rule, tau specs)
    levels: list[dict] = []
    for lineno, toks in b.body:
        head = toks[0]
        if head == "level":
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError(lineno, "expected 'level N'")
            n = int(toks[1])
            expected = len(levels) if levels else None
            if expected is None and n not in (0, 1):
                raise ParseError(lineno, "first level must be 0 or 1")
            if expected is not None and n != expected + (1 if levels[0]["n"] == 1 else 0):
                raise ParseError(lineno, "levels must be consecutive")
            levels.append({"n": n, "line": lineno, "members": [], "rule": None, "tau": []})
            continue
        if not levels:
            raise ParseError(lineno, f"{head!r} before any level line")
        cur = levels[-1]
        if head == "member":
            if cur["n"] == 0:
                raise ParseError(lineno, "level 0 has no family members")
            if len(toks) < 4 or toks[2] != "=":
                raise ParseError(lineno, "expected 'member ID = { ids }'")
            cur["members"].append((lineno, toks[1], _braced(lineno, toks[3:])))
        elif head == "family":
            if cur["n"] == 0 or len(toks) != 2 or toks[1] not in ("powerset", "scott-opens", "tau"):
                raise ParseError(lineno, "expected 'family powerset|scott-opens|tau' on a level >= 1")
            cur["rule"] = toks[1]
        elif head == "tau":
            if len(toks) >= 2 and toks[1] == "open":
                cur["tau"].append((lineno, "open", _braced(lineno, toks[2:])))
            elif len(toks) == 3 and toks[1] == "use":
                cur["tau"].append((lineno, "use", toks[2]))
            elif len(toks) == 2 and toks[1] in _TAU_KEYWORDS:
                cur["tau"].append((lineno, toks[1], None))
            else:
                raise ParseError(lineno, "malformed tau line")
        else:
            raise ParseError(lineno, f"unexpected {head!r} in chain block")

    chain = LevelChain.start(Y)
    for lv in levels:
        n = lv["n"]
        if n >= 1:
            if n > chain.depth + 1:
                raise ParseError(lv["line"], "levels must be consecutive")
            k = chain.level(n - 1).size
            if lv["rule"] is not None:
                if lv["members"]:
                    raise ParseError(lv["line"], "family rule and member lines are exclusive")
                rule = {"powerset": "power-set", "scott-opens": "scott-opens", "tau": "tau-itself"}[lv["rule"]]
                try:
                    chain = chain.extend(next_family(chain, rule))
                except FamtopError as exc:
                    raise ParseError(lv["line"], f"{exc.code}: {exc}") from exc
            else:
                labels = [lab for _, lab, _ in lv["members"]]
                if len(set(labels)) != len(labels):
                    raise ParseError(lv["line"], "duplicate member id")
                fam = [_ids(line, ids, k) for line, _, ids in lv["members"]]
                chain = chain.extend(fam, labels=labels)
        taus = lv["tau"]
        if not taus:
            continue
        kinds = {t[1] for t in taus}
        if len(taus) > 1 and kinds != {"open"}:
            raise ParseError(taus[1][0], "tau keyword lines cannot be combined")
        if kinds == {"open"}:
            k = chain.level(n).size
            opens = [_ids(line, ids, k) for line, _, ids in taus]
            tau = _resolve_tau(chain, n, (taus[0][0], "open", opens), topologies)
        else:
            tau = _resolve_tau(chain, n, taus[0], topologies)
        chain = chain.with_tau(n, tau)
    return chain


def parse_definitions(text: str) -> Definitions:
    """Parse a definitions file into a name -> entity table."""
    blocks = _split_blocks(text)
    defs = Definitions()
    for b in blocks:
        if b.name in defs.lines:
            raise DuplicateName(b.line, f"name {b.name!r} already defined on line {defs.lines[b.name]}")
        defs.lines[b.name] = b.line
    spaces = {}
    topologies = {}
    for b in blocks:
        if b.kind == "space":
            if b.args:
                raise ParseError(b.line, "unexpected tokens after space name")
            spaces[b.name] = _parse_space(b)
        elif b.kind == "topology":
            if b.args:
                raise ParseError(b.line, "unexpected tokens after topology name")
            topologies[b.name] = _parse_topology(b)
    chains = {b.name: _parse_chain(b, spaces, topologies) for b in blocks if b.kind == "chain"}
    for b in blocks:
        defs.entities[b.name] = {**spaces, **topologies, **chains}[b.name]
    return defs


def _fmt_ids(mask: int) -> str:
    inner = " ".join(str(i) for i in bits.members(mask))
    return "{ " + inner + " }" if inner else "{ }"


def format_space(name: str, X: FiniteSpace, header: str = "space") -> str:
    key = "carrier" if header == "topology" else "points"
    lines = [f"{header} {name}", f"{key} " + " ".join(str(p) for p in X.points)]
    for o in X.opens:
        lab = X.labels_of(o)
        lines.append("open " + (" ".join(str(p) for p in lab) if lab else "-"))
    return "\n".join(lines)


def format_chain(name: str, chain: LevelChain, base_name: str) -> str:
    lines = [f"chain {name} over {base_name}"]
    for lvl in chain.levels:
        if lvl.index > 0 or lvl.tau is not None:
            lines.append(f"level {lvl.index}")
        if lvl.family is not None:
            for lab, m in zip(lvl.labels, lvl.family):
                lines.append(f"member {lab} = {_fmt_ids(m)}")
        if lvl.tau is not None:
            lines.extend(f"tau open {_fmt_ids(o)}" for o in lvl.tau.opens)
    return "\n".join(lines)


def format_definitions(defs: Definitions) -> str:
    """Inverse of ``parse_definitions`` (keyword shorthands come back expanded)."""
    space_names = {}
    for name, e in defs.entities.items():
        if type(e) is FiniteSpace:
            space_names.setdefault((e.points, e.opens), name)
    out = []
    for name, e in defs.entities.items():
        if type(e) is FiniteSpace:
            out.append(format_space(name, e))
        elif type(e) is SetFamilyTopology:
            out.append(format_space(name, e, "topology"))
        elif isinstance(e, LevelChain):
            base = space_names.get((e.base.points, e.base.opens))
            if base is None:
                raise ValueError(f"chain {name} has no named base space")
            out.append(format_chain(name, e, base))
    return "\n\n".join(out) + "\n"
