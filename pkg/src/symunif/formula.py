"""Modal formulas over variables and parameters.

The core syntax is ``false | atom | ~f | f | g | [] f``.  Everything else
(``true``, ``&``, ``->``, ``<->``, ``<>`` and the guarded boxes ``[+]`` /
``[-]``) is expanded into the core when built, so structural equality is
plain syntactic equality of the expansions.

Atoms come in two kinds.  Variables are what substitutions replace;
parameters are constants.  In concrete syntax parameters carry a ``#``
sigil and the two names ``p`` and ``q`` are reserved for parameters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

__all__ = [
    "Atom", "Formula", "Bot", "AtomRef", "Neg", "Or", "Box",
    "BOT", "TOP", "And", "Imp", "Iff", "Diamond", "Top",
    "var", "par", "P", "Q", "X",
    "boxplus", "boxminus", "boxplus_iter", "boxminus_iter",
    "boxplus_bounded", "boxminus_bounded",
    "degree", "atoms", "variables", "parameters", "subformulas",
    "parse", "to_text", "FormulaSyntaxError",
]

VARIABLE = "var"
PARAMETER = "par"
RESERVED_PARAMETERS = frozenset({"p", "q"})
KEYWORDS = frozenset({"true", "false"})
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


@dataclass(frozen=True, order=True)
class Atom:
    kind: str
    name: str

    def __post_init__(self):
        if self.kind not in (VARIABLE, PARAMETER):
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if not _IDENT.match(self.name) or self.name in KEYWORDS:
            raise ValueError(f"bad atom name {self.name!r}")
        if self.kind == VARIABLE and self.name in RESERVED_PARAMETERS:
            raise ValueError(f"{self.name!r} is reserved for a parameter; write #{self.name}")

    @property
    def is_variable(self) -> bool:
        return self.kind == VARIABLE

    @property
    def is_parameter(self) -> bool:
        return self.kind == PARAMETER

    def __str__(self) -> str:
        return "#" + self.name if self.is_parameter else self.name

    @classmethod
    def from_text(cls, text: str) -> "Atom":
        if text.startswith("#"):
            return cls(PARAMETER, text[1:])
        return cls(VARIABLE, text)


class Formula:
    """Immutable formula node; hash and modal degree are computed once."""

    __slots__ = ("_hash", "_degree")

    def children(self) -> tuple:
        return ()

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self) or other._hash != self._hash:
            return False
        return self._key() == other._key()

    def _key(self) -> tuple:
        return self.children()

    @property
    def degree(self) -> int:
        return self._degree

    def __invert__(self) -> "Formula":
        return Neg(self)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Imp(self, other)

    def __str__(self) -> str:
        return to_text(self)


class Bot(Formula):
    __slots__ = ()

    def __init__(self):
        self._hash = hash("Bot")
        self._degree = 0

    def __repr__(self) -> str:
        return "Bot()"


class AtomRef(Formula):
    __slots__ = ("atom",)

    def __init__(self, atom: Atom):
        if not isinstance(atom, Atom):
            raise TypeError("AtomRef expects an Atom")
        self.atom = atom
        self._hash = hash(("AtomRef", atom))
        self._degree = 0

    def _key(self) -> tuple:
        return (self.atom,)

    def __repr__(self) -> str:
        return f"AtomRef({self.atom})"


class Neg(Formula):
    __slots__ = ("arg",)

    def __init__(self, arg: Formula):
        self.arg = arg
        self._hash = hash(("Neg", arg._hash))
        self._degree = arg._degree

    def children(self) -> tuple:
        return (self.arg,)

    def __repr__(self) -> str:
        return f"Neg({self.arg!r})"


class Or(Formula):
    __slots__ = ("left", "right")

    def __init__(self, left: Formula, right: Formula):
        self.left = left
        self.right = right
        self._hash = hash(("Or", left._hash, right._hash))
        self._degree = max(left._degree, right._degree)

    def children(self) -> tuple:
        return (self.left, self.right)

    def __repr__(self) -> str:
        return f"Or({self.left!r}, {self.right!r})"


class Box(Formula):
    __slots__ = ("arg",)

    def __init__(self, arg: Formula):
        self.arg = arg
        self._hash = hash(("Box", arg._hash))
        self._degree = arg._degree + 1

    def children(self) -> tuple:
        return (self.arg,)

    def __repr__(self) -> str:
        return f"Box({self.arg!r})"


BOT = Bot()
TOP = Neg(BOT)


def Top() -> Formula:
    return TOP


def And(a: Formula, b: Formula) -> Formula:
    return Neg(Or(Neg(a), Neg(b)))


def Imp(a: Formula, b: Formula) -> Formula:
    return Or(Neg(a), b)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def Diamond(a: Formula) -> Formula:
    return Neg(Box(Neg(a)))


def var(name: str) -> AtomRef:
    return AtomRef(Atom(VARIABLE, name))


def par(name: str) -> AtomRef:
    return AtomRef(Atom(PARAMETER, name))


P = par("p")
Q = par("q")
X = var("x")

# p^0 & q^0, p^1 & q^0, p^0 & q^1
_NPNQ = And(Neg(P), Neg(Q))
_PNQ = And(P, Neg(Q))
_NPQ = And(Neg(P), Q)


def _guarded(middle1: Formula, middle2: Formula, f: Formula) -> Formula:
    inner = Imp(_NPNQ, f)
    inner = Imp(middle2, Box(inner))
    inner = Imp(middle1, Box(inner))
    return Imp(_NPNQ, Box(inner))


def boxplus(f: Formula) -> Formula:
    """Three-step box along the label pattern (00) -> (10) -> (01) -> (00)."""
    return _guarded(_PNQ, _NPQ, f)


def boxminus(f: Formula) -> Formula:
    """Like :func:`boxplus` with the two middle labels swapped."""
    return _guarded(_NPQ, _PNQ, f)


def _check_nat(k: int) -> None:
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"expected a natural number, got {k!r}")


def boxplus_iter(k: int, f: Formula) -> Formula:
    _check_nat(k)
    for _ in range(k):
        f = boxplus(f)
    return f


def boxminus_iter(k: int, f: Formula) -> Formula:
    _check_nat(k)
    for _ in range(k):
        f = boxminus(f)
    return f


def _bounded(step, k: int, f: Formula) -> Formula:
    _check_nat(k)
    acc = TOP
    power = f
    for _ in range(k):
        acc = And(acc, power)
        power = step(power)
    return acc


def boxplus_bounded(k: int, f: Formula) -> Formula:
    """Conjunction of ``[+^i] f`` for ``i < k``; ``true`` when ``k == 0``."""
    return _bounded(boxplus, k, f)


def boxminus_bounded(k: int, f: Formula) -> Formula:
    return _bounded(boxminus, k, f)


def degree(f: Formula) -> int:
    return f.degree


def subformulas(f: Formula) -> Iterator[Formula]:
    """Distinct subformulas of ``f`` (shared nodes visited once)."""
    seen: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in seen:
            continue
        seen.add(g)
        yield g
        stack.extend(g.children())


def atoms(f: Formula) -> frozenset[Atom]:
    return frozenset(g.atom for g in subformulas(f) if isinstance(g, AtomRef))


def variables(f: Formula) -> frozenset[Atom]:
    return frozenset(a for a in atoms(f) if a.is_variable)


def parameters(f: Formula) -> frozenset[Atom]:
    return frozenset(a for a in atoms(f) if a.is_parameter)


# ---------------------------------------------------------------------------
# concrete syntax

class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<imp>->)
  | (?P<dia><>)
  | (?P<box>\[\])
  | (?P<guard>\[(?P<sign>[+-])(?:(?P<mode>[\^<])\s*(?P<n>\d+)\s*)?\])
  | (?P<or>\|)
  | (?P<and>&)
  | (?P<neg>~)
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<param>\#[A-Za-z_][A-Za-z0-9_']*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind in ("sign", "mode", "n"):
            kind = "guard"
        if kind == "guard":
            n = m.group("n")
            tokens.append(("guard", (m.group("sign"), m.group("mode"), int(n) if n else None), pos))
        elif kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind}, found {what}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        self.take("eof")
        return f

    def iff(self) -> Formula:
        left = self.imp()
        if self.peek()[0] == "iff":
            self.i += 1
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek()[0] == "imp":
            self.i += 1
            return Imp(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[0] == "or":
            self.i += 1
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.prefix()
        while self.peek()[0] == "and":
            self.i += 1
            f = And(f, self.prefix())
        return f

    def prefix(self) -> Formula:
        kind, value, pos = self.peek()
        if kind == "neg":
            self.i += 1
            return Neg(self.prefix())
        if kind == "box":
            self.i += 1
            return Box(self.prefix())
        if kind == "dia":
            self.i += 1
            return Diamond(self.prefix())
        if kind == "guard":
            self.i += 1
            sign, mode, n = value
            arg = self.prefix()
            if mode is None:
                return boxplus(arg) if sign == "+" else boxminus(arg)
            if mode == "^":
                return (boxplus_iter if sign == "+" else boxminus_iter)(n, arg)
            return (boxplus_bounded if sign == "+" else boxminus_bounded)(n, arg)
        return self.primary()

    def primary(self) -> Formula:
        kind, value, pos = self.peek()
        self.i += 1
        if kind == "lpar":
            f = self.iff()
            self.take("rpar")
            return f
        if kind == "ident":
            if value == "true":
                return TOP
            if value == "false":
                return BOT
            if value in RESERVED_PARAMETERS:
                raise FormulaSyntaxError(
                    f"{value!r} is a reserved parameter name; write #{value}", pos, self.text)
            return var(value)
        if kind == "param":
            if value[1:] in KEYWORDS:
                raise FormulaSyntaxError(f"bad parameter name {value!r}", pos, self.text)
            return par(value[1:])
        what = "end of input" if kind == "eof" else repr(value)
        raise FormulaSyntaxError(f"unexpected {what}", pos, self.text)


def parse(text: str) -> Formula:
    """Parse concrete syntax; see the README for the grammar."""
    return _Parser(text).parse()


# precedence levels for printing
_IFF, _IMP, _OR, _AND, _PREFIX, _ATOMIC = range(1, 7)


def _match_and(f: Formula):
    # Neg(Or(Neg a, Neg b))
    if isinstance(f, Neg) and isinstance(f.arg, Or):
        left, right = f.arg.left, f.arg.right
        if isinstance(left, Neg) and isinstance(right, Neg):
            return left.arg, right.arg
    return None


def _match_imp(f: Formula):
    if isinstance(f, Or) and isinstance(f.left, Neg):
        return f.left.arg, f.right
    return None


def _match_iff(f: Formula):
    both = _match_and(f)
    if both is None:
        return None
    fwd, bwd = _match_imp(both[0]), _match_imp(both[1])
    if fwd is None or bwd is None or fwd != (bwd[1], bwd[0]):
        return None
    return fwd


def _render(f: Formula) -> tuple[str, int]:
    if isinstance(f, Bot):
        return "false", _ATOMIC
    if isinstance(f, AtomRef):
        return str(f.atom), _ATOMIC
    if f == TOP:
        return "true", _ATOMIC
    pair = _match_iff(f)
    if pair is not None:
        return _binary(pair, "<->", _IFF, right_assoc=True)
    pair = _match_and(f)
    if pair is not None:
        return _binary(pair, "&", _AND, right_assoc=False)
    if isinstance(f, Neg):
        if isinstance(f.arg, Box) and isinstance(f.arg.arg, Neg):
            return "<> " + _wrap(f.arg.arg.arg, _PREFIX), _PREFIX
        return "~" + _wrap(f.arg, _PREFIX), _PREFIX
    pair = _match_imp(f)
    if pair is not None:
        return _binary(pair, "->", _IMP, right_assoc=True)
    if isinstance(f, Or):
        return _binary((f.left, f.right), "|", _OR, right_assoc=False)
    if isinstance(f, Box):
        return "[] " + _wrap(f.arg, _PREFIX), _PREFIX
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula, min_prec: int) -> str:
    text, prec = _render(f)
    return text if prec >= min_prec else f"({text})"


def _binary(pair, op: str, prec: int, right_assoc: bool) -> tuple[str, int]:
    left, right = pair
    left_min = prec + 1 if right_assoc else prec
    right_min = prec if right_assoc else prec + 1
    return f"{_wrap(left, left_min)} {op} {_wrap(right, right_min)}", prec


def to_text(f: Formula) -> str:
    """Canonical concrete syntax with minimal parentheses."""
    return _render(f)[0]
