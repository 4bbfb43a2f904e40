"""Line-oriented configuration files.

Example::

    # rational generators inside the Hilbert modular group of Q(sqrt 2)
    field.minpoly = x^2 - 2
    group.r = 2
    gen.G1 = [[2, 1], [1, 1]]
    gen.G2 = [[1, 1], [1, 2]]
    ambient.gen.U = [[1, t], [0, 1]]

Quaternion generators use ``quat.a``, ``quat.b`` and ``qgen.<LABEL> =
(x, y, z, w)``.  Field entries are expressions in rationals and the
generator ``t`` with ``+ - * / ^`` and parentheses.
"""

from dataclasses import dataclass
import hashlib
import re

from . import numfield
from .errors import ArithLimitError, ParseError
from .isometry import ExactMobius
from .limitsets import GroupConfig
from .quatalg import QuaternionAlgebra


# --- expressions -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(\*\*|[-+*/^()]))")


class _ExprParser:
    """Recursive descent over  expr := term (('+'|'-') term)*,
    term := unary (('*'|'/') unary)*,  unary := '-' unary | power,
    power := atom ('^' integer)?,  atom := integer | 't' | '(' expr ')'.
    """

    def __init__(self, text, field, line=None, col0=1):
        self.text = text
        self.K = field
        self.line = line
        self.col0 = col0
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                self._fail(f"unexpected character {text[pos:].lstrip()[0]!r}",
                           pos + len(text[pos:]) - len(text[pos:].lstrip()))
            start = m.start(m.lastindex)
            tok = m.group(m.lastindex)
            self.tokens.append(("^" if tok == "**" else tok, start))
            pos = m.end()
        self.i = 0

    def _fail(self, msg, pos):
        raise ParseError(msg, self.line, self.col0 + pos)

    def _peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def _pos(self):
        return self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text)

    def _take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok[0]

    def parse(self):
        if not self.tokens:
            self._fail("empty expression", 0)
        v = self.expr()
        if self.i != len(self.tokens):
            self._fail(f"unexpected {self._peek()!r}", self._pos())
        return v

    def expr(self):
        v = self.term()
        while self._peek() in ("+", "-"):
            op = self._take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self._peek() in ("*", "/"):
            op = self._take()
            pos = self._pos()
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    self._fail("division by zero", pos)
                v = v / w
        return v

    def unary(self):
        if self._peek() == "-":
            self._take()
            return -self.unary()
        if self._peek() == "+":
            self._take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self._peek() == "^":
            self._take()
            sign = 1
            if self._peek() == "-":
                self._take()
                sign = -1
            pos = self._pos()
            tok = self._take() if self._peek() is not None else None
            if tok is None or not tok.isdigit():
                self._fail("exponent must be an integer", pos)
            k = sign * int(tok)
            if k < 0 and v.is_zero():
                self._fail("division by zero", pos)
            v = v ** k
        return v

    def atom(self):
        tok = self._peek()
        pos = self._pos()
        if tok is None:
            self._fail("unexpected end of expression", pos)
        if tok.isdigit():
            self._take()
            return self.K(int(tok))
        if tok == "t":
            self._take()
            return self.K.gen
        if tok == "(":
            self._take()
            v = self.expr()
            if self._peek() != ")":
                self._fail("missing ')'", self._pos())
            self._take()
            return v
        self._fail(f"unexpected {tok!r}", pos)


def parse_expr(text, field, line=None, col0=1):
    """Field element denoted by ``text``."""
    return _ExprParser(text, field, line, col0).parse()


def _split_top(text, line, col0):
    """Split on commas at bracket depth 0; returns (piece, column) pairs."""
    parts, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced {ch!r}", line, col0 + k)
        elif ch == "," and depth == 0:
            parts.append((text[start:k], col0 + start))
            start = k + 1
    if depth:
        raise ParseError("unbalanced brackets", line, col0 + len(text))
    parts.append((text[start:], col0 + start))
    return parts


def _strip_brackets(text, open_, close, line, col0, what):
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (s.startswith(open_) and s.endswith(close)):
        raise ParseError(f"{what} must be written {open_}...{close}", line, col0 + lead)
    return s[1:-1], col0 + lead + 1


def parse_matrix(text, field, line=None, col0=1):
    inner, c = _strip_brackets(text, "[", "]", line, col0, "matrix")
    rows = _split_top(inner, line, c)
    if len(rows) != 2:
        raise ParseError("matrix must have two rows", line, c)
    out = []
    for row, rc in rows:
        rin, rc2 = _strip_brackets(row, "[", "]", line, rc, "matrix row")
        ents = _split_top(rin, line, rc2)
        if len(ents) != 2:
            raise ParseError("matrix row must have two entries", line, rc2)
        out.append([parse_expr(e, field, line, ec) for e, ec in ents])
    return out


def parse_quaternion(text, field, line=None, col0=1):
    inner, c = _strip_brackets(text, "(", ")", line, col0, "quaternion")
    ents = _split_top(inner, line, c)
    if len(ents) != 4:
        raise ParseError("quaternion must have four coordinates", line, c)
    return [parse_expr(e, field, line, ec) for e, ec in ents]


# --- files -------------------------------------------------------------------

@dataclass(eq=False)
class ConfigFile:
    """Parsed configuration: the group, an optional ambient group and algebra."""

    field: numfield.NumberField
    group: GroupConfig
    ambient: GroupConfig = None
    algebra: QuaternionAlgebra = None
    phi1_root: int = None

    def __eq__(self, other):
        if not isinstance(other, ConfigFile):
            return NotImplemented
        return format_config(self) == format_config(other)

    @property
    def hash(self):
        return config_hash(self)


_KEY = re.compile(r"^(field\.minpoly|field\.phi1_root|group\.r|quat\.a|quat\.b|"
                  r"gen\.(\w+)|ambient\.gen\.(\w+)|qgen\.(\w+))$")


def parse_config(text):
    """Validated :class:`ConfigFile` from configuration text."""
    entries = []
    seen = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            raise ParseError("expected 'key = value'", ln, len(body) - len(body.lstrip()) + 1)
        key_part, val = body.split("=", 1)
        key = key_part.strip()
        kcol = len(key_part) - len(key_part.lstrip()) + 1
        vcol = len(key_part) + 2
        if not _KEY.match(key):
            raise ParseError(f"unknown key {key!r}", ln, kcol)
        if key in seen:
            raise ParseError(f"duplicate key {key!r} (first on line {seen[key]})", ln, kcol)
        seen[key] = ln
        entries.append((key, val, ln, vcol))
    kv = {k: (v, ln, c) for k, v, ln, c in entries}
    if "field.minpoly" not in kv:
        raise ParseError("missing field.minpoly")
    v, ln, c = kv["field.minpoly"]
    try:
        poly = numfield.parse_polynomial(v.strip())
    except ValueError as exc:
        raise ParseError(str(exc), ln, c) from None
    phi1 = None
    if "field.phi1_root" in kv:
        phi1 = _parse_int(*kv["field.phi1_root"])
    K = numfield.NumberField(poly, phi1)
    r = _parse_int(*kv["group.r"]) if "group.r" in kv else K.degree
    if not 1 <= r <= K.degree:
        v, ln, c = kv["group.r"]
        raise ParseError(f"group.r = {r} must lie in 1..{K.degree}", ln, c)

    algebra = None
    if "quat.a" in kv or "quat.b" in kv:
        if not ("quat.a" in kv and "quat.b" in kv):
            raise ParseError("quat.a and quat.b must be given together")
        (va, la, ca), (vb, lb, cb) = kv["quat.a"], kv["quat.b"]
        qa, qb = parse_expr(va, K, la, ca), parse_expr(vb, K, lb, cb)
        if qa.is_zero() or qb.is_zero():
            raise ParseError("quaternion parameters must be nonzero", la)
        algebra = QuaternionAlgebra(K, qa, qb)

    gens, labels, amb, amb_labels = [], [], [], []
    for key, val, ln, c in entries:
        if key.startswith("gen."):
            rows = parse_matrix(val, K, ln, c)
            gens.append(_matrix(rows, key, ln))
            labels.append(key[4:])
        elif key.startswith("ambient.gen."):
            rows = parse_matrix(val, K, ln, c)
            amb.append(_matrix(rows, key, ln))
            amb_labels.append(key[12:])
        elif key.startswith("qgen."):
            if algebra is None:
                raise ParseError("qgen requires quat.a and quat.b", ln, c)
            gens.append(algebra(*parse_quaternion(val, K, ln, c)))
            labels.append(key[5:])
    if not gens:
        raise ParseError("no generators (gen.<LABEL> or qgen.<LABEL>)")
    if any(k.startswith("gen.") for k in kv) and any(k.startswith("qgen.") for k in kv):
        raise ParseError("matrix and quaternion generators cannot be mixed")
    group = GroupConfig(K, r, gens, labels, algebra)
    ambient = GroupConfig(K, r, amb, amb_labels) if amb else None
    return ConfigFile(K, group, ambient, algebra, phi1)


def _parse_int(val, ln, c):
    s = val.strip()
    if not re.fullmatch(r"\d+", s):
        raise ParseError(f"expected a positive integer, got {s!r}", ln, c)
    return int(s)


def _matrix(rows, key, ln):
    (a, b), (c, d) = rows
    try:
        return ExactMobius(a, b, c, d)
    except ArithLimitError as exc:
        raise type(exc)(f"line {ln}: {key}: {exc}") from None


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_config(cfg):
    """Canonical text of a config; ``parse_config`` inverts it."""
    K = cfg.field
    fmt = numfield.format_element
    lines = [f"field.minpoly = {numfield.format_polynomial(K.minpoly)}"]
    if cfg.phi1_root is not None:
        lines.append(f"field.phi1_root = {cfg.phi1_root}")
    lines.append(f"group.r = {cfg.group.r}")
    if cfg.algebra is not None:
        lines.append(f"quat.a = {fmt(cfg.algebra.a)}")
        lines.append(f"quat.b = {fmt(cfg.algebra.b)}")
    for lab, g in zip(cfg.group.labels, cfg.group.generators):
        if cfg.algebra is not None:
            lines.append(f"qgen.{lab} = ({', '.join(fmt(v) for v in g.coords)})")
        else:
            lines.append(f"gen.{lab} = {_fmt_matrix(g)}")
    if cfg.ambient is not None:
        for lab, g in zip(cfg.ambient.labels, cfg.ambient.generators):
            lines.append(f"ambient.gen.{lab} = {_fmt_matrix(g)}")
    return "\n".join(lines) + "\n"


def _fmt_matrix(g):
    f = numfield.format_element
    return f"[[{f(g.a)}, {f(g.b)}], [{f(g.c)}, {f(g.d)}]]"


def config_hash(cfg):
    return hashlib.sha256(format_config(cfg).encode()).hexdigest()
