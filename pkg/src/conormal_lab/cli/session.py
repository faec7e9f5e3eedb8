"""Session files: a ring, named objects, and a list of commands to run.

Grammar (statements end with ``;``, ``#`` starts a comment)::

    ring u v t w over QQ order grevlex;
    ideal p = u*w - t*v, u*t - v^2, v*w - t^2;
    ideal q = minors(2, A);
    matrix A = [w, 0, -t; 0, u, -v];
    closure Gbar over assoc_graded(p) adjoin Y relations Y*w - t*x3, Y^2 - Y*x2 + x1*x3;
    run normality-criterion p;
    run component 2 p as G2;

Polynomials are parsed eagerly so syntax errors carry their location.
Closure relations mention the x-variables of the associated graded ring,
whose names are fixed by the base ring, so they are checked eagerly too.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path

from ..arith import ring_create
from ..arith.fields import field_from_name
from ..arith.orders import parse_order
from ..arith.parsing import parse_polynomial
from ..arith.polynomial import PolyRing, Polynomial
from ..blowup import _fresh_names
from ..errors import ConormalLabError, ParseError
from ..groebner.matrix import Matrix

COMMANDS = (
    "gb", "dim", "fitting", "resolve", "conormal", "bidual", "det", "rees", "assoc-graded",
    "component", "linear-type", "spread", "domain-criterion", "normality-criterion",
    "normal-locus", "closedness-pipeline", "nu2-check", "sliding-depth", "verify-closure",
    "top-component", "m-full",
)
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass
class Statement:
    text: str
    line: int
    column: int


@dataclass
class RingDecl:
    names: tuple
    field: str
    order: str

    def format(self) -> str:
        return f"ring {' '.join(self.names)} over {self.field} order {self.order};"


@dataclass
class IdealDecl:
    name: str
    generators: list  # Polynomial list, or ("minors", t, matrix name)
    line: int = 0

    def format(self) -> str:
        if isinstance(self.generators, tuple):
            _, t, mat = self.generators
            return f"ideal {self.name} = minors({t}, {mat});"
        return f"ideal {self.name} = {', '.join(str(f) for f in self.generators)};"


@dataclass
class MatrixDecl:
    name: str
    rows: list
    line: int = 0

    def format(self) -> str:
        body = "; ".join(", ".join(str(x) for x in row) for row in self.rows)
        return f"matrix {self.name} = [{body}];"


@dataclass
class ClosureDecl:
    name: str
    ideal: str
    new_variables: tuple
    relations: list  # strings, parsed once the candidate ring exists
    degrees: tuple | None = None
    line: int = 0

    def format(self) -> str:
        deg = f" degrees {' '.join(map(str, self.degrees))}" if self.degrees else ""
        return (
            f"closure {self.name} over assoc_graded({self.ideal}) adjoin {' '.join(self.new_variables)}"
            f"{deg} relations {', '.join(self.relations)};"
        )


@dataclass
class Command:
    name: str
    args: list
    alias: str | None = None
    line: int = 0
    column: int = 0

    def format(self) -> str:
        tail = f" as {self.alias}" if self.alias else ""
        return f"run {' '.join([self.name] + [str(a) for a in self.args])}{tail};"

    @property
    def label(self) -> str:
        return " ".join([self.name] + [str(a) for a in self.args])


@dataclass
class SessionFile:
    ring_decl: RingDecl | None = None
    ring: PolyRing | None = None
    ideals: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    closures: dict = field(default_factory=dict)
    commands: list = field(default_factory=list)
    source: str = ""

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(self.source.encode()).hexdigest()

    def declarations(self) -> list:
        items = list(self.matrices.values()) + list(self.ideals.values()) + list(self.closures.values())
        return sorted(items, key=lambda d: d.line)

    def format(self) -> str:
        lines = []
        if self.ring_decl:
            lines.append(self.ring_decl.format())
        lines += [d.format() for d in self.declarations()]
        lines += [c.format() for c in self.commands]
        return "\n".join(lines) + ("\n" if lines else "")

    def equivalent(self, other: SessionFile) -> bool:
        """Same ring, same objects and same commands (ignoring layout)."""
        if (self.ring_decl is None) != (other.ring_decl is None):
            return False
        if self.ring_decl and (self.ring_decl.names, self.ring_decl.order) != (other.ring_decl.names, other.ring_decl.order):
            return False
        if self.ring and other.ring and self.ring.field.modulus != other.ring.field.modulus:
            return False

        def strip(decls):
            return {k: d.format() for k, d in decls.items()}

        return (
            strip(self.ideals) == strip(other.ideals)
            and strip(self.matrices) == strip(other.matrices)
            and strip(self.closures) == strip(other.closures)
            and [c.format() for c in self.commands] == [c.format() for c in other.commands]
        )


def split_statements(text: str) -> list[Statement]:
    """Split on ``;`` outside brackets, dropping comments; keep start positions."""
    out = []
    depth = 0
    buf: list[str] = []
    start = None
    line, col = 1, 1
    in_comment = False
    for ch in text:
        if in_comment:
            if ch == "\n":
                in_comment = False
        elif ch == "#":
            in_comment = True
        elif ch == ";" and depth == 0:
            body = "".join(buf)
            if body.strip():
                out.append(Statement(body, *start))
            buf, start = [], None
        else:
            if ch in "[(":
                depth += 1
            elif ch in "])":
                depth -= 1
                if depth < 0:
                    raise ParseError(f"unbalanced {ch!r}", line, col)
            if start is None and not ch.isspace():
                start = (line, col)
            if start is not None:
                buf.append(ch)
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
    if "".join(buf).strip():
        raise ParseError("missing ';' at end of statement", *start)
    return out


def _position(st: Statement, offset: int) -> tuple[int, int]:
    """Line and column of character ``offset`` inside a statement."""
    before = st.text[:offset]
    nl = before.count("\n")
    if nl:
        return st.line + nl, offset - before.rfind("\n")
    return st.line, st.column + offset


class _Builder:
    def __init__(self, text: str):
        self.session = SessionFile(source=text)

    def error(self, st: Statement, msg: str, offset: int = 0):
        return ParseError(msg, *_position(st, offset))

    def defined(self, name: str) -> bool:
        s = self.session
        return name in s.ideals or name in s.matrices or name in s.closures

    def declare(self, st: Statement, name: str, offset: int):
        if not _NAME.match(name):
            raise self.error(st, f"invalid name {name!r}", offset)
        if self.defined(name):
            raise self.error(st, f"duplicate name {name!r}", offset)

    def need_ring(self, st: Statement):
        if self.session.ring is None:
            raise self.error(st, "a ring must be declared first")
        return self.session.ring

    def poly(self, st: Statement, text: str, offset: int) -> Polynomial:
        line, col = _position(st, offset)
        return parse_polynomial(self.need_ring(st), text, line, col)

    def comma_list(self, st: Statement, text: str, offset: int):
        """Split at top-level commas; yields ``(piece, offset_of_piece)``."""
        depth, last = 0, 0
        for i, ch in enumerate(text + ","):
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
            elif ch == "," and depth == 0:
                piece = text[last:i]
                lead = len(piece) - len(piece.lstrip())
                if not piece.strip():
                    raise self.error(st, "empty list entry", offset + last)
                yield piece.strip(), offset + last + lead
                last = i + 1

    # -- statements --------------------------------------------------------
    def ring(self, st: Statement):
        m = re.match(r"ring\s+(.*?)\s+over\s+(\S+(?:\s*\(\s*\d+\s*\))?)(?:\s+order\s+(.+))?\s*\Z", st.text, re.S)
        if not m:
            raise self.error(st, "expected 'ring <vars> over <field> [order <order>]'")
        if self.session.ring is not None:
            raise self.error(st, "the ring is already declared")
        names = tuple(m.group(1).split())
        for i, n in enumerate(names):
            if not _NAME.match(n):
                raise self.error(st, f"invalid variable name {n!r}", m.start(1))
        if len(set(names)) != len(names):
            raise self.error(st, "repeated variable name", m.start(1))
        order = (m.group(3) or "grevlex").strip()
        try:
            fld = field_from_name(m.group(2))
            parse_order(order)
            ring = ring_create(names, fld, order)
        except ConormalLabError as exc:
            raise self.error(st, str(exc), m.start(2)) from None
        self.session.ring_decl = RingDecl(names, str(fld), order)
        self.session.ring = ring

    def ideal(self, st: Statement):
        m = re.match(r"ideal\s+(\S+)\s*=\s*", st.text)
        if not m:
            raise self.error(st, "expected 'ideal <name> = <generators>'")
        name = m.group(1)
        self.declare(st, name, m.start(1))
        self.need_ring(st)
        body = st.text[m.end():]
        mm = re.match(r"minors\s*\(\s*(-?\d+)\s*,\s*(\w+)\s*\)\s*\Z", body)
        if mm:
            if mm.group(2) not in self.session.matrices:
                raise self.error(st, f"undefined matrix {mm.group(2)!r}", m.end() + mm.start(2))
            gens = ("minors", int(mm.group(1)), mm.group(2))
        else:
            gens = [self.poly(st, piece, m.end() + off) for piece, off in self.comma_list(st, body, 0)] if body.strip() else []
        self.session.ideals[name] = IdealDecl(name, gens, st.line)

    def matrix(self, st: Statement):
        m = re.match(r"matrix\s+(\S+)\s*=\s*\[(.*)\]\s*\Z", st.text, re.S)
        if not m:
            raise self.error(st, "expected 'matrix <name> = [a, b; c, d]'")
        name = m.group(1)
        self.declare(st, name, m.start(1))
        self.need_ring(st)
        rows = []
        pos = m.start(2)
        for chunk in m.group(2).split(";"):
            row = [self.poly(st, piece, pos + off) for piece, off in self.comma_list(st, chunk, 0)]
            rows.append(row)
            pos += len(chunk) + 1
        if len({len(r) for r in rows}) != 1:
            raise self.error(st, "matrix rows have different lengths", m.start(2))
        self.session.matrices[name] = MatrixDecl(name, rows, st.line)

    def closure(self, st: Statement):
        m = re.match(
            r"closure\s+(\S+)\s+over\s+assoc_graded\(\s*(\w+)\s*\)\s+adjoin\s+(.*?)"
            r"(?:\s+degrees\s+([\d\s]+?))?\s+relations\s+(.*)\Z",
            st.text, re.S,
        )
        if not m:
            raise self.error(st, "expected 'closure <name> over assoc_graded(<ideal>) adjoin <vars> relations ...'")
        name = m.group(1)
        self.declare(st, name, m.start(1))
        ring = self.need_ring(st)
        if m.group(2) not in self.session.ideals:
            raise self.error(st, f"undefined ideal {m.group(2)!r}", m.start(2))
        new = tuple(m.group(3).split())
        degrees = tuple(int(x) for x in m.group(4).split()) if m.group(4) else None
        if degrees is not None and len(degrees) != len(new):
            raise self.error(st, "one degree per adjoined variable", m.start(4))
        rels = [piece for piece, _ in self.comma_list(st, m.group(5), m.start(5))]
        # the x-variable names depend only on the base ring and the generator count
        decl = self.session.ideals[m.group(2)]
        count = len(decl.generators) if isinstance(decl.generators, list) else None
        if count is not None:
            xs = _fresh_names(ring.names, count)
            probe = PolyRing(new + ring.names + tuple(xs), ring.field)
            for piece, off in self.comma_list(st, m.group(5), m.start(5)):
                parse_polynomial(probe, piece, *_position(st, off))
        self.session.closures[name] = ClosureDecl(name, m.group(2), new, rels, degrees, st.line)

    def run(self, st: Statement):
        words = st.text.split()
        if len(words) < 2:
            raise self.error(st, "expected 'run <command> <arguments>'")
        cmd = words[1]
        if cmd not in COMMANDS:
            raise self.error(st, f"unknown command {cmd!r}", st.text.index(cmd))
        args = words[2:]
        alias = None
        if len(args) >= 2 and args[-2] == "as":
            alias = args[-1]
            self.declare(st, alias, st.text.rindex(alias))
            args = args[:-2]
        pos = len("run ") + len(cmd)
        known_results = {c.alias for c in self.session.commands if c.alias}
        for a in args:
            pos = st.text.index(a, pos)
            if a.lstrip("-").isdigit() or a in ("mG", "G"):
                continue
            if not self.defined(a) and a not in known_results:
                raise self.error(st, f"undefined reference {a!r}", pos)
        self.session.commands.append(
            Command(cmd, [int(a) if a.lstrip("-").isdigit() else a for a in args], alias, st.line, st.column)
        )


def parse_session_text(text: str) -> SessionFile:
    builder = _Builder(text)
    for st in split_statements(text):
        key = st.text.split(None, 1)[0]
        handler = {"ring": builder.ring, "ideal": builder.ideal, "matrix": builder.matrix,
                   "closure": builder.closure, "run": builder.run}.get(key)
        if handler is None:
            raise builder.error(st, f"unknown statement {key!r}")
        handler(st)
    return builder.session


def parse_session(path) -> SessionFile:
    return parse_session_text(Path(path).read_text())


def build_matrix(session: SessionFile, name: str) -> Matrix:
    decl = session.matrices[name]
    return Matrix.from_rows(session.ring, decl.rows)
