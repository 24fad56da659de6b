"""Scene files and verification reports.

A scene is a plain-text description of named points and lines with exact
rational coordinates, plus optional expression strings and render hints.
The format is line oriented and versioned::

    format: 1
    # comments and blank lines are ignored
    point a = 1, -2, 7/3
    line A = 0, 1, -2
    expr cubic = (xaAa_1.xbBkCb_1.xc)=0
    viewport = -12, 12, -12, 12

Point names are lowercase letters with an optional _<digits> subscript
('x' is reserved for the variable); line names are uppercase.  All
serialization is canonical (sorted names, reduced fractions) so that a
scene has a stable digest and reports are byte-reproducible.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .core import Line, Point, canonicalize

__all__ = [
    "SceneError",
    "Scene",
    "Report",
    "parse_rational",
    "format_triple",
]

_POINT_NAME = re.compile(r"^[a-wyz](_\d+)?$")
_LINE_NAME = re.compile(r"^[A-Z](_\d+)?$")


class SceneError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SceneError(f"bad rational {text!r}: {exc}") from None


def _parse_triple(text: str):
    parts = [p for p in text.split(",")]
    if len(parts) != 3:
        raise SceneError(f"expected three comma-separated rationals, got {text!r}")
    return tuple(parse_rational(p) for p in parts)


def format_triple(obj) -> str:
    """Canonical bracketed form of a point or line, primitive and sign-fixed."""
    cobj = canonicalize(obj)
    return "[" + ":".join(str(c) for c in cobj.coords) + "]"


@dataclass
class Scene:
    points: dict[str, Point] = field(default_factory=dict)
    lines: dict[str, Line] = field(default_factory=dict)
    exprs: dict[str, str] = field(default_factory=dict)
    viewport: tuple[Fraction, Fraction, Fraction, Fraction] | None = None

    @classmethod
    def parse(cls, text: str) -> "Scene":
        scene = cls()
        saw_format = False
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if not saw_format:
                if line != "format: 1":
                    raise SceneError(f"line {lineno}: scene must start with 'format: 1'")
                saw_format = True
                continue
            key, _, rest = line.partition("=")
            key = key.strip()
            rest = rest.strip()
            if not rest:
                raise SceneError(f"line {lineno}: expected 'key = value'")
            if key.startswith("point "):
                name = key[6:].strip()
                if not _POINT_NAME.match(name):
                    raise SceneError(f"line {lineno}: bad point name {name!r}")
                if name in scene.points:
                    raise SceneError(f"line {lineno}: duplicate point {name!r}")
                scene.points[name] = Point(*_parse_triple(rest))
            elif key.startswith("line "):
                name = key[5:].strip()
                if not _LINE_NAME.match(name):
                    raise SceneError(f"line {lineno}: bad line name {name!r}")
                if name in scene.lines:
                    raise SceneError(f"line {lineno}: duplicate line {name!r}")
                scene.lines[name] = Line(*_parse_triple(rest))
            elif key.startswith("expr "):
                name = key[5:].strip()
                if not name.isidentifier():
                    raise SceneError(f"line {lineno}: bad expression name {name!r}")
                scene.exprs[name] = rest
            elif key == "viewport":
                parts = rest.split(",")
                if len(parts) != 4:
                    raise SceneError(f"line {lineno}: viewport needs four rationals")
                scene.viewport = tuple(parse_rational(p) for p in parts)
            else:
                raise SceneError(f"line {lineno}: unknown entry {key!r}")
        if not saw_format:
            raise SceneError("empty scene: missing 'format: 1' header")
        return scene

    @classmethod
    def load(cls, path) -> "Scene":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.parse(fh.read())

    def serialize(self) -> str:
        out = ["format: 1"]
        for name in sorted(self.points):
            coords = ", ".join(str(c) for c in self.points[name].coords)
            out.append(f"point {name} = {coords}")
        for name in sorted(self.lines):
            coords = ", ".join(str(c) for c in self.lines[name].coords)
            out.append(f"line {name} = {coords}")
        for name in sorted(self.exprs):
            out.append(f"expr {name} = {self.exprs[name]}")
        if self.viewport is not None:
            out.append("viewport = " + ", ".join(str(c) for c in self.viewport))
        return "\n".join(out) + "\n"

    def digest(self) -> str:
        return "sha256:" + hashlib.sha256(self.serialize().encode()).hexdigest()

    def point(self, name: str) -> Point:
        try:
            return self.points[name]
        except KeyError:
            raise SceneError(f"scene has no point named {name!r}") from None

    def nine_points(self):
        """The conventionally named points a..i, in order."""
        names = ["a", "b", "c", "d", "e", "f", "g", "h", "i"]
        missing = [n for n in names if n not in self.points]
        if missing:
            raise SceneError(f"scene is missing points: {', '.join(missing)}")
        return [self.points[n] for n in names]


@dataclass
class Report:
    """Outcome of one command: named outputs, verification checks, diagnostics."""

    command: str
    inputs_digest: str
    outputs: list[tuple[str, str]] = field(default_factory=list)
    checks: list[tuple[str, bool]] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    def add_output(self, name: str, value: str) -> None:
        self.outputs.append((name, value))

    def add_triple(self, kind: str, name: str, obj) -> None:
        self.outputs.append((f"{kind} {name}", format_triple(obj)))

    def add_check(self, name: str, ok: bool) -> None:
        self.checks.append((name, bool(ok)))

    def add_diagnostic(self, text: str) -> None:
        self.diagnostics.append(text)

    @property
    def ok(self) -> bool:
        return all(flag for _, flag in self.checks)

    def render(self) -> str:
        out = [f"command: {self.command}", f"inputs: {self.inputs_digest}"]
        for name, value in self.outputs:
            out.append(f"output {name} = {value}")
        for name, flag in self.checks:
            out.append(f"check {name}: {'pass' if flag else 'FAIL'}")
        for diag in self.diagnostics:
            out.append(f"diagnostic: {diag}")
        out.append(f"status: {'ok' if self.ok else 'FAILED'}")
        return "\n".join(out) + "\n"
