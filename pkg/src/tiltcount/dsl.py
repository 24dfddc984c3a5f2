"""Line-oriented text format for bound quivers.

    # comment
    field: 32003
    vertices: 1 2 3
    arrow: u1 : 2 -> 1
    arrow: u2 : 3 -> 2
    relation: u1*u2 = 0
    relation: u3*u5 - u4*u6 = 0

In a product ``u1*u2`` the right factor acts first, so ``u2`` must end where
``u1`` starts.  Sections may appear in any order.
"""

from __future__ import annotations

import re

from .algebra import DEFAULT_PRIME, EndpointMismatch, Quiver, Relation, build_algebra

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_TERM = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>\d+)\s*\*\s*)?(?P<word>{_NAME}(?:\s*\*\s*{_NAME})*)\s*"
)
_ARROW = re.compile(rf"^\s*(?P<name>{_NAME})\s*:\s*(?P<src>\d+)\s*->\s*(?P<tgt>\d+)\s*$")


class DSLError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _parse_relation(body, line, offset):
    if "=" not in body:
        raise DSLError("relation must end with '= 0'", line, offset + len(body) + 1)
    lhs, rhs = body.rsplit("=", 1)
    if rhs.strip() != "0":
        raise DSLError("right-hand side of a relation must be 0", line, offset + len(lhs) + 2)
    terms = []
    pos = 0
    text = lhs.rstrip()
    if not text.strip():
        raise DSLError("empty relation", line, offset + 1)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise DSLError(f"cannot parse term near {text[pos:pos + 12]!r}", line, offset + pos + 1)
        if terms and not m.group("sign"):
            raise DSLError("terms must be separated by '+' or '-'", line, offset + pos + 1)
        sign = -1 if m.group("sign") == "-" else 1
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        word = tuple(w.strip() for w in m.group("word").split("*"))
        terms.append((sign * coeff, word, offset + m.start("word") + 1))
        pos = m.end()
    return terms


def parse_dsl(text):
    """Parse the text format into ``(Quiver, [Relation], p)``."""
    vertices = None
    field = None
    arrows = []
    arrow_lines = {}
    relations = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise DSLError("expected '<section>: ...'", lineno, 1)
        key, body = line.split(":", 1)
        key = key.strip().lower()
        offset = len(key) + 1 + (len(line) - len(line.lstrip()))
        if key == "vertices":
            if vertices is not None:
                raise DSLError("duplicate 'vertices' section", lineno, 1)
            toks = body.split()
            if not toks:
                raise DSLError("no vertices listed", lineno, offset + 1)
            vertices = []
            for tok in toks:
                if not tok.isdigit() or int(tok) <= 0:
                    raise DSLError(f"vertex id must be a positive integer, got {tok!r}", lineno, offset + body.index(tok) + 1)
                if int(tok) in vertices:
                    raise DSLError(f"duplicate vertex id {tok}", lineno, offset + body.index(tok) + 1)
                vertices.append(int(tok))
        elif key == "arrow":
            m = _ARROW.match(body)
            if not m:
                raise DSLError("expected 'arrow: <name> : <src> -> <tgt>'", lineno, offset + 1)
            name = m.group("name")
            if name in arrow_lines:
                raise DSLError(f"duplicate arrow id {name!r} (first declared on line {arrow_lines[name]})", lineno, offset + 1)
            arrow_lines[name] = lineno
            arrows.append((name, int(m.group("src")), int(m.group("tgt")), lineno))
        elif key == "relation":
            relations.append((_parse_relation(body, lineno, offset), lineno))
        elif key == "field":
            if field is not None:
                raise DSLError("duplicate 'field' section", lineno, 1)
            tok = body.strip()
            if not tok.isdigit():
                raise DSLError(f"field must be a prime number, got {tok!r}", lineno, offset + 1)
            field = int(tok)
        else:
            raise DSLError(f"unknown section {key!r}", lineno, 1)
    if vertices is None:
        raise DSLError("missing 'vertices' section")
    vset = set(vertices)
    for name, s, t, lineno in arrows:
        for v in (s, t):
            if v not in vset:
                raise DSLError(f"arrow {name!r} uses undeclared vertex {v}", lineno)
    quiver = Quiver(vertices, [(n, s, t) for n, s, t, _ in arrows])
    rels = []
    for terms, lineno in relations:
        for _, word, col in terms:
            for n in word:
                if n not in arrow_lines:
                    raise DSLError(f"unknown arrow {n!r}", lineno, col)
            try:
                quiver.endpoints(word)
            except EndpointMismatch as exc:
                raise DSLError(str(exc), lineno, col) from None
        rels.append(Relation([(c, w) for c, w, _ in terms]))
    return quiver, rels, field if field is not None else DEFAULT_PRIME


def load_algebra(text, p=None, length_cap=None):
    quiver, rels, field = parse_dsl(text)
    return build_algebra(quiver, rels, p or field, length_cap=length_cap)


def to_dsl(quiver, relations, p=DEFAULT_PRIME, title=None):
    lines = []
    if title:
        lines.append(f"# {title}")
    lines.append(f"field: {p}")
    lines.append("vertices: " + " ".join(str(v) for v in quiver.vertices))
    for a in quiver.arrows:
        lines.append(f"arrow: {a.name} : {a.source} -> {a.target}")
    for r in relations:
        lines.append(f"relation: {_relation_text(r)}")
    return "\n".join(lines) + "\n"


def _relation_text(rel):
    parts = []
    for k, (c, path) in enumerate(rel.terms):
        word = "*".join(path)
        mag = abs(c)
        body = word if mag == 1 else f"{mag}*{word}"
        if k == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) + " = 0"
