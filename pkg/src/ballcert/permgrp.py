"""Permutations acting on the right, brute-force finite groups, orbit counts.

Points are stored 0-based internally and printed 1-based in cycle notation,
so ``Perm.parse("(1 3)(2 4)")`` matches the way the construction writes its
permutations.  ``p * q`` means "first p, then q": ``x^(p*q) = (x^p)^q``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence, TypeVar

from .errors import ResourceExhausted
from .fpgroups import Word, evaluate

P = TypeVar("P", bound=Hashable)

ACTION_CONVENTION = "right action: x^(pq) = (x^p)^q"
DEFAULT_CLOSURE_CAP = 1_000_000


@dataclass(frozen=True)
class Perm:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(tuple(range(n)))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Perm":
        """Parse 1-based cycle notation; ``()`` or ``Id`` is the identity."""
        cycles = [[int(x) for x in body.replace(",", " ").split()]
                  for body in re.findall(r"\(([^()]*)\)", text)]
        if not cycles and text.strip() not in ("", "Id", "()"):
            raise ValueError(f"cannot parse permutation {text!r}")
        top = max((x for c in cycles for x in c), default=0)
        n = top if degree is None else degree
        if n < top:
            raise ValueError(f"point {top} exceeds degree {n}")
        img = list(range(n))
        seen: set[int] = set()
        for c in cycles:
            for i, x in enumerate(c):
                if x < 1 or x in seen:
                    raise ValueError(f"bad cycle {c} in {text!r}")
                seen.add(x)
                img[x - 1] = c[(i + 1) % len(c)] - 1
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(tuple(inv))

    def __invert__(self) -> "Perm":
        return self.inverse()

    def __pow__(self, n: int) -> "Perm":
        base = self if n >= 0 else self.inverse()
        out = Perm.identity(self.degree)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """All cycles, fixed points included, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        from math import lcm
        return lcm(*self.cycle_type()) if self.degree else 1

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def __str__(self) -> str:
        parts = ["(" + " ".join(str(x + 1) for x in c) + ")"
                 for c in self.cycles() if len(c) > 1]
        return "".join(parts) or "Id"

    def __repr__(self) -> str:
        return f"Perm({str(self)!r}, degree={self.degree})"


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    qi = q.images
    return Perm(tuple(qi[x] for x in p.images))


def direct_product(p: Perm, q: Perm) -> Perm:
    """``(p, q)`` acting on the disjoint union of the two point sets."""
    n = p.degree
    return Perm(p.images + tuple(n + x for x in q.images))


def split_product(pq: Perm, n: int) -> tuple[Perm, Perm]:
    return Perm(pq.images[:n]), Perm(tuple(x - n for x in pq.images[n:]))


def evaluate_word(w: Word, images: Mapping[str, Perm], degree: int | None = None) -> Perm:
    if degree is None:
        degrees = {p.degree for p in images.values()}
        if len(degrees) != 1:
            raise ValueError(f"images must share one degree, got {sorted(degrees)}")
        (degree,) = degrees
    return evaluate(w, images, compose, Perm.inverse, Perm.identity(degree))


class FiniteGroup:
    """A permutation group stored as its full element list."""

    def __init__(self, elements: Sequence[Perm], gens: Sequence[Perm] = ()):
        self.elements = tuple(elements)
        self.gens = tuple(gens)
        self._index = {g: i for i, g in enumerate(self.elements)}
        self.degree = self.elements[0].degree

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: Perm) -> bool:
        return g in self._index

    def index_of(self, g: Perm) -> int:
        return self._index[g]

    @property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    def subgroup(self, predicate: Callable[[Perm], bool]) -> "FiniteGroup":
        """Elements satisfying ``predicate``; closure is verified, not assumed."""
        sub = [g for g in self.elements if predicate(g)]
        group = FiniteGroup(sub)
        if not group.is_closed():
            raise ValueError("selected elements do not form a subgroup")
        return group

    def is_closed(self) -> bool:
        return (self.identity in self
                and all(g.inverse() in self for g in self.elements)
                and all(g * h in self for g in self.elements for h in self.elements))

    def __repr__(self):
        return f"<FiniteGroup of order {len(self)} on {self.degree} points>"


def closure(gens: Sequence[Perm], cap: int = DEFAULT_CLOSURE_CAP, degree: int | None = None) -> FiniteGroup:
    """Breadth-first closure of ``gens`` under right multiplication."""
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("need a degree for the closure of no generators")
        degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators must share one degree")
    e = Perm.identity(degree)
    seen = {e}
    order = [e]
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x * g
            if y not in seen:
                if len(seen) >= cap:
                    raise ResourceExhausted(f"group closure exceeded {cap} elements")
                seen.add(y)
                order.append(y)
                queue.append(y)
    return FiniteGroup(order, gens)


def cyclic_subgroup(t: Perm) -> list[Perm]:
    out = [Perm.identity(t.degree)]
    x = t
    while not x.is_identity():
        out.append(x)
        x = x * t
    return out


def left_cosets(G: FiniteGroup, H: Iterable[Perm]) -> list[frozenset[Perm]]:
    """The cosets ``gH`` in order of their first element in ``G``."""
    H = list(H)
    seen: set[Perm] = set()
    out = []
    for g in G:
        if g in seen:
            continue
        coset = frozenset(g * h for h in H)
        seen |= coset
        out.append(coset)
    return out


def fiber_fixed_points(G: FiniteGroup, sigma: Perm, t: Perm) -> int:
    """Number of cosets ``g<t>`` of G with ``g^-1 sigma g`` in ``<t>``.

    These are the points over a cone point with stabilizer ``<t>`` that
    ``sigma`` fixes.
    """
    if sigma not in G or t not in G:
        raise ValueError("sigma and t must be elements of G")
    cyc = set(cyclic_subgroup(t))
    count = 0
    for coset in left_cosets(G, cyc):
        g = min(coset, key=G.index_of)
        if g.inverse() * sigma * g in cyc:
            count += 1
    return count


@dataclass(frozen=True)
class OrbitReport:
    count: int
    sizes: tuple[int, ...]

    @property
    def transitive(self) -> bool:
        return self.count == 1


def orbits(G: Iterable[Perm] | FiniteGroup, points: Sequence[P],
           act: Callable[[Perm, P], P]) -> list[list[P]]:
    elements = list(G)
    pts = list(points)
    known = set(pts)
    seen: set[P] = set()
    out = []
    for x in pts:
        if x in seen:
            continue
        orb = [x]
        seen.add(x)
        i = 0
        while i < len(orb):
            y = orb[i]
            i += 1
            for g in elements:
                z = act(g, y)
                if z not in known:
                    raise ValueError(f"action is not closed on the point set: {y!r} -> {z!r}")
                if z not in seen:
                    seen.add(z)
                    orb.append(z)
        out.append(orb)
    return out


def orbit_count(G: Iterable[Perm] | FiniteGroup, points: Sequence[P],
                act: Callable[[Perm, P], P]) -> OrbitReport:
    orbs = orbits(G, points, act)
    return OrbitReport(len(orbs), tuple(sorted(len(o) for o in orbs)))


def burnside_count(G: Iterable[Perm] | FiniteGroup, points: Sequence[P],
                   act: Callable[[Perm, P], P]) -> Fraction:
    """Average number of fixed points, which equals the orbit count."""
    elements = list(G)
    fixed = sum(1 for g in elements for x in points if act(g, x) == x)
    return Fraction(fixed, len(elements))
