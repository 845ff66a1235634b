"""Text and JSON serialization for codes, partition systems, GDDs, and base
partitions.

Canonical text forms round-trip byte-exactly: parse(serialize(x)) == x and
serialize(parse(text)) == text for canonically formatted files.  The fixed
point serializes as the token ``inf``.

Formats (one artifact per file):

    armstrong-code q=<q> k=<k> n=<n> m=<m> [s=<s> t=<t>]
    <m rows of n space-separated symbols in 1..q>

    partition-system m=<points> n=<partitions> [inf=true]
    <n lines: parts separated by " | ", points space-separated>

    gdd k=<k> type=<g1^t1 ...>
    <one line of groups, separated by " | ">
    <one block per line, points space-separated>

    base-partition m=<order>
    <one line: triples separated by " | ">
"""

from __future__ import annotations

import json

from .codes import ArmstrongCode
from .designs import (
    INF,
    BasePartition,
    GddDesign,
    Partition,
    PartitionSystem,
    PointSet,
    point_key,
)
from .report import StructureError


class ParseError(StructureError):
    """Malformed artifact text; carries a line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


def _fmt_point(p) -> str:
    return "inf" if p is INF else str(p)


def _parse_point(tok: str, line=None):
    if tok == "inf":
        return INF
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad point token {tok!r}", line)


def _fmt_parts(parts) -> str:
    return " | ".join(
        " ".join(_fmt_point(p) for p in sorted(part, key=point_key))
        for part in parts)


def _parse_parts(text: str, line=None):
    parts = []
    for chunk in text.split("|"):
        toks = chunk.split()
        if not toks:
            raise ParseError("empty part", line)
        parts.append(frozenset(_parse_point(t, line) for t in toks))
    return tuple(parts)


def _parse_header(line: str, expected: str, known_keys):
    toks = line.split()
    if not toks or toks[0] != expected:
        raise ParseError(f"expected header {expected!r}, got {line!r}", 1)
    kv = {}
    for tok in toks[1:]:
        if "=" not in tok:
            raise ParseError(f"bad header token {tok!r}", 1)
        key, val = tok.split("=", 1)
        if key not in known_keys:
            raise ParseError(f"unknown header key {key!r}", 1)
        kv[key] = val
    return kv


# --- armstrong codes ---------------------------------------------------------


def serialize_code(c: ArmstrongCode) -> str:
    header = f"armstrong-code q={c.q} k={c.k} n={c.n} m={c.m}"
    if (c.s, c.t) != (1, 1):
        header += f" s={c.s} t={c.t}"
    body = "\n".join(" ".join(str(v) for v in row) for row in c.rows)
    return header + "\n" + body + "\n"


def parse_code(text: str) -> ArmstrongCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty file")
    kv = _parse_header(lines[0], "armstrong-code", {"q", "k", "n", "m", "s", "t"})
    try:
        q, k = int(kv["q"]), int(kv["k"])
        n, m = int(kv["n"]), int(kv["m"])
        s = int(kv.get("s", 1))
        t = int(kv.get("t", 1))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad or missing header field: {exc}", 1)
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} rows, found {len(lines) - 1}")
    rows = []
    for i, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, found {len(toks)}", i)
        try:
            rows.append(tuple(int(tk) for tk in toks))
        except ValueError:
            raise ParseError(f"non-integer entry in {ln!r}", i)
    return ArmstrongCode(q=q, k=k, rows=tuple(rows), s=s, t=t)


# --- partition systems -------------------------------------------------------


def serialize_partition_system(ps: PartitionSystem) -> str:
    header = f"partition-system m={ps.m} n={ps.n}"
    if ps.points.has_infinity:
        header += " inf=true"
    body = "\n".join(_fmt_parts(p.parts) for p in ps.partitions)
    return header + "\n" + body + "\n"


def parse_partition_system(text: str) -> PartitionSystem:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty file")
    kv = _parse_header(lines[0], "partition-system", {"m", "n", "inf"})
    try:
        m, n = int(kv["m"]), int(kv["n"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad or missing header field: {exc}", 1)
    has_inf = kv.get("inf", "false").lower() == "true"
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} partitions, found {len(lines) - 1}")
    partitions = tuple(Partition(_parse_parts(ln, i))
                       for i, ln in enumerate(lines[1:], start=2))
    return PartitionSystem(points=PointSet(size=m, has_infinity=has_inf),
                           partitions=partitions)


# --- group divisible designs -------------------------------------------------


def serialize_gdd(g: GddDesign) -> str:
    header = f"gdd k={g.block_size} type={g.type_vector()}"
    groups = _fmt_parts(g.groups.parts)
    blocks = "\n".join(
        " ".join(_fmt_point(p) for p in sorted(b, key=point_key))
        for b in g.blocks)
    return header + "\n" + groups + "\n" + blocks + "\n"


def parse_gdd(text: str) -> GddDesign:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise ParseError("gdd file needs a header and a groups line")
    toks = lines[0].split()
    if not toks or toks[0] != "gdd":
        raise ParseError(f"expected header 'gdd', got {lines[0]!r}", 1)
    k = None
    for tok in toks[1:]:
        if tok.startswith("k="):
            k = int(tok[2:])
    if k is None:
        raise ParseError("gdd header missing k=", 1)
    groups = Partition(_parse_parts(lines[1], 2))
    size = sum(len(grp) for grp in groups.parts)
    blocks = []
    for i, ln in enumerate(lines[2:], start=3):
        blocks.append(frozenset(_parse_point(t, i) for t in ln.split()))
    return GddDesign(points=PointSet(size=size), groups=groups,
                     blocks=tuple(blocks), block_size=k)


# --- base partitions ---------------------------------------------------------


def serialize_base_partition(bp: BasePartition) -> str:
    return f"base-partition m={bp.order}\n{_fmt_parts(bp.triples.parts)}\n"


def parse_base_partition(text: str) -> BasePartition:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ParseError("base-partition file needs a header and one triples line")
    kv = _parse_header(lines[0], "base-partition", {"m"})
    try:
        m = int(kv["m"])
    except (KeyError, ValueError) as exc:
        raise ParseError(f"bad or missing header field: {exc}", 1)
    return BasePartition(order=m, triples=Partition(_parse_parts(lines[1], 2)))


# --- kind dispatch and JSON --------------------------------------------------

_SERIALIZERS = {
    ArmstrongCode: ("code", serialize_code),
    PartitionSystem: ("design", serialize_partition_system),
    GddDesign: ("gdd", serialize_gdd),
    BasePartition: ("base-partition", serialize_base_partition),
}

_PARSERS = {
    "code": parse_code,
    "design": parse_partition_system,
    "gdd": parse_gdd,
    "base-partition": parse_base_partition,
}


def kind_of(artifact) -> str:
    for cls, (kind, _) in _SERIALIZERS.items():
        if isinstance(artifact, cls):
            return kind
    raise StructureError(f"unknown artifact type {type(artifact).__name__}")


def serialize(artifact) -> str:
    return _SERIALIZERS[type(artifact)][1](artifact)


def parse(kind: str, text: str):
    if kind not in _PARSERS:
        raise StructureError(f"unknown artifact kind {kind!r}; expected {sorted(_PARSERS)}")
    return _PARSERS[kind](text)


def to_json(artifact) -> str:
    """JSON carrying the kind plus the canonical text; both emissions parse
    back to the identical in-memory value."""
    return json.dumps({"format": "armcodes", "version": 1,
                       "kind": kind_of(artifact),
                       "text": serialize(artifact)}, indent=2) + "\n"


def from_json(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc}")
    if not isinstance(obj, dict) or obj.get("format") != "armcodes":
        raise ParseError("not an armcodes JSON artifact")
    if obj.get("version") != 1:
        raise ParseError(f"unsupported artifact version {obj.get('version')!r}")
    return parse(obj["kind"], obj["text"])


def detect_and_parse(text: str):
    """Parse by sniffing the header token."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return from_json(text)
    head = stripped.split(None, 1)[0] if stripped else ""
    mapping = {"armstrong-code": "code", "partition-system": "design",
               "gdd": "gdd", "base-partition": "base-partition"}
    if head not in mapping:
        raise ParseError(f"unrecognized artifact header {head!r}")
    return parse(mapping[head], text)
