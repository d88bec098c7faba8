"""Words in free groups, finite presentations, and homomorphism checks.

Words are stored run-length encoded as ``(generator, exponent)`` syllables and
are always freely reduced.  Commutators expand as ``[x, y] = x y x^-1 y^-1``;
the other common expansion is kept in ``COMMUTATORS`` so callers can test both.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence, TypeVar

Syllable = tuple[str, int]
T = TypeVar("T")

COMMUTATOR_CONVENTION = "[x,y] = x y x^-1 y^-1"


def free_reduce(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    """Merge adjacent powers of the same generator and drop zero exponents."""
    out: list[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (gen, merged)
        else:
            out.append((gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", free_reduce(self.syllables))

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> "Word":
        return cls(((name, exp),))

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.syllables * n)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def letters(self) -> Iterator[Syllable]:
        """Yield the word letter by letter as ``(generator, +1 or -1)``."""
        for g, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, step

    def generators(self) -> set[str]:
        return {g for g, _ in self.syllables}

    def exponent_sum(self, gen: str) -> int:
        return sum(e for g, e in self.syllables if g == gen)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return "*".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def commutator(x: Word, y: Word) -> Word:
    return x * y * x.inverse() * y.inverse()


def commutator_inverse_first(x: Word, y: Word) -> Word:
    return x.inverse() * y.inverse() * x * y


COMMUTATORS = {
    "x y x^-1 y^-1": commutator,
    "x^-1 y^-1 x y": commutator_inverse_first,
}


def conjugate(x: Word, by: Word) -> Word:
    """``by * x * by^-1``, the form the construction writes out explicitly."""
    return by * x * by.inverse()


# -- parsing -----------------------------------------------------------------

_DEFAULT_GEN = re.compile(r"[A-Za-z](?:_?\d+)?")
_EXPONENT = re.compile(r"\(\s*(-?\d+)\s*\)|(-?\d+)")


class WordSyntaxError(ValueError):
    pass


class _WordParser:
    def __init__(self, text: str, gens: Sequence[str] | None):
        self.text = text
        self.pos = 0
        self.gens = sorted(gens, key=len, reverse=True) if gens else None

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            raise WordSyntaxError(f"expected {ch!r} at position {self.pos} in {self.text!r}")
        self.pos += 1

    def parse(self) -> Word:
        w = self.word()
        if self._peek():
            raise WordSyntaxError(f"unexpected {self._peek()!r} at position {self.pos} in {self.text!r}")
        return w

    def word(self) -> Word:
        w = Word()
        while True:
            ch = self._peek()
            if ch == "*":
                self.pos += 1
                continue
            if not ch or ch in "),]":
                return w
            w = w * self.term()

    def term(self) -> Word:
        base = self.atom()
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            m = _EXPONENT.match(self.text, self.pos)
            if not m:
                raise WordSyntaxError(f"bad exponent at position {self.pos} in {self.text!r}")
            self.pos = m.end()
            base = base ** int(m.group(1) or m.group(2))
        return base

    def atom(self) -> Word:
        ch = self._peek()
        if ch == "(":
            self.pos += 1
            w = self.word()
            self._expect(")")
            return w
        if ch == "[":
            self.pos += 1
            x = self.word()
            self._expect(",")
            y = self.word()
            self._expect("]")
            return commutator(x, y)
        if ch == "1":
            self.pos += 1
            return Word()
        if self.gens is not None:
            for g in self.gens:
                if self.text.startswith(g, self.pos):
                    self.pos += len(g)
                    return Word.gen(g)
            raise WordSyntaxError(f"unknown generator at position {self.pos} in {self.text!r}")
        m = _DEFAULT_GEN.match(self.text, self.pos)
        if not m:
            raise WordSyntaxError(f"unexpected {ch!r} at position {self.pos} in {self.text!r}")
        self.pos = m.end()
        return Word.gen(m.group(0))


def parse_word(text: str, gens: Sequence[str] | None = None) -> Word:
    """Parse ``p*r^-1``, ``prq``, ``(pr)^-1 q^2 (pr)``, ``[g,h]^2`` and so on.

    With ``gens`` given, generator names are matched greedily against that
    list; otherwise a generator is one letter optionally followed by digits.
    """
    return _WordParser(text, gens).parse()


# -- presentations -----------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    name: str
    gens: tuple[str, ...]
    relators: tuple[Word, ...] = ()
    elliptic: tuple[tuple[Word, int], ...] = field(default=())

    def __post_init__(self):
        if len(set(self.gens)) != len(self.gens):
            raise ValueError(f"{self.name}: repeated generator names")
        known = set(self.gens)
        words = list(self.relators) + [w for w, _ in self.elliptic]
        for w in words:
            unknown = w.generators() - known
            if unknown:
                raise ValueError(f"{self.name}: word {w} uses undeclared generators {sorted(unknown)}")
        for w, n in self.elliptic:
            if n < 2:
                raise ValueError(f"{self.name}: elliptic element {w} has order {n} < 2")

    def word(self, text: str) -> Word:
        return parse_word(text, self.gens)

    def to_text(self) -> str:
        lines = [f"group {self.name}", "gens " + " ".join(self.gens)]
        lines += [f"rel {w}" for w in self.relators]
        lines += [f"elliptic {w} {n}" for w, n in self.elliptic]
        return "\n".join(lines) + "\n"


def parse_presentations(text: str) -> dict[str, Presentation]:
    """Read the line-oriented presentation format.

    ::

        group G0
        gens p q r
        rel p^2
        elliptic p 2
    """
    groups: dict[str, Presentation] = {}
    current: dict | None = None

    def close():
        if current is not None:
            groups[current["name"]] = Presentation(
                current["name"], tuple(current["gens"]),
                tuple(current["rels"]), tuple(current["elliptic"]))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "group":
            close()
            current = {"name": rest, "gens": [], "rels": [], "elliptic": []}
            continue
        if current is None:
            raise WordSyntaxError(f"line {lineno}: {key!r} before any 'group' line")
        if key == "gens":
            current["gens"] = rest.split()
        elif key == "rel":
            current["rels"].append(parse_word(rest, current["gens"]))
        elif key == "elliptic":
            body, _, order = rest.rpartition(" ")
            current["elliptic"].append((parse_word(body, current["gens"]), int(order)))
        else:
            raise WordSyntaxError(f"line {lineno}: unknown declaration {key!r}")
    close()
    return groups


BUILTIN_TEXT = """\
# (2,3,12) triangle group
group G0
gens p q r
rel p^2
rel q^3
rel r^12
rel p*q*r
elliptic p 2
elliptic q 3
elliptic r 12

group G1
gens a b c d
rel a^2
rel b^3
rel c^3
rel d^3
rel a*b*c*d
elliptic a 2
elliptic b 3
elliptic c 3
elliptic d 3

group G2
gens g h
rel [g,h]^2
elliptic [g,h] 2

group G3
gens t1 t2 s1 s2 s3
rel [t1,t2]*(s1*s2*s3)^-1
rel s1^2
rel s2^2
rel s3^2
elliptic s1 2
elliptic s2 2
elliptic s3 2

# abstract genus one group with twelve cone points of order two
group G4
gens x y e1 e2 e3 e4 e5 e6 e7 e8 e9 e10 e11 e12
rel [x,y]*(e1*e2*e3*e4*e5*e6*e7*e8*e9*e10*e11*e12)^-1
rel e1^2
rel e2^2
rel e3^2
rel e4^2
rel e5^2
rel e6^2
rel e7^2
rel e8^2
rel e9^2
rel e10^2
rel e11^2
rel e12^2
elliptic e1 2
elliptic e2 2
elliptic e3 2
elliptic e4 2
elliptic e5 2
elliptic e6 2
elliptic e7 2
elliptic e8 2
elliptic e9 2
elliptic e10 2
elliptic e11 2
elliptic e12 2
"""

BUILTIN = parse_presentations(BUILTIN_TEXT)


# -- substitution and homomorphisms ------------------------------------------

class UnknownGenerator(KeyError):
    def __init__(self, symbol: str):
        super().__init__(symbol)
        self.symbol = symbol

    def __str__(self):
        return f"no image assigned to generator {self.symbol!r}"


def substitute(w: Word, assignment: Mapping[str, Word]) -> Word:
    syllables: list[Syllable] = []
    for g, e in w.syllables:
        try:
            image = assignment[g]
        except KeyError:
            raise UnknownGenerator(g) from None
        syllables.extend((image ** e).syllables)
    return Word(tuple(syllables))


def evaluate(w: Word, images: Mapping[str, T], multiply: Callable[[T, T], T],
             invert: Callable[[T], T], identity: T) -> T:
    """Evaluate ``w`` left to right in a target group given generator images."""
    inverses: dict[str, T] = {}
    acc = identity
    for g, step in w.letters():
        if g not in images:
            raise UnknownGenerator(g)
        if step > 0:
            x = images[g]
        else:
            if g not in inverses:
                inverses[g] = invert(images[g])
            x = inverses[g]
        acc = multiply(acc, x)
    return acc


@dataclass(frozen=True)
class HomReport:
    source: str
    failing: tuple[Word, ...]

    @property
    def ok(self) -> bool:
        return not self.failing

    def __bool__(self) -> bool:
        return self.ok


def check_hom(src: Presentation, images: Mapping[str, T],
              multiply: Callable[[T, T], T], is_identity: Callable[[T], bool],
              invert: Callable[[T], T], identity: T) -> HomReport:
    """Check that the generator images respect every relator of ``src``."""
    missing = [g for g in src.gens if g not in images]
    if missing:
        raise UnknownGenerator(missing[0])
    failing = tuple(
        rel for rel in src.relators
        if not is_identity(evaluate(rel, images, multiply, invert, identity)))
    return HomReport(src.name, failing)
