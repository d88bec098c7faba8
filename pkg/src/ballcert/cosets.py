"""Todd-Coxeter coset enumeration and the right action of words on cosets.

Columns are numbered ``2*i`` for generator ``i`` and ``2*i + 1`` for its
inverse.  Coset 0 is the subgroup itself.  Finished tables are renumbered in
breadth-first order over (coset, column), so two enumerations of the same
subgroup give identical tables whatever strategy produced them.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Literal, Mapping, Sequence

from .errors import InconsistencyError, ResourceExhausted
from .fpgroups import Presentation, Word, check_hom, substitute
from .permgrp import FiniteGroup, Perm, compose

DEFAULT_MAX_COSETS = 100_000

Strategy = Literal["hlt", "felsch"]


@dataclass(frozen=True)
class CosetTable:
    presentation: Presentation
    subgens: tuple[Word, ...]
    action: tuple[tuple[int, ...], ...]
    transversal: tuple[Word, ...]

    @property
    def size(self) -> int:
        return len(self.action)

    def column(self, gen: str, sign: int = 1) -> int:
        i = self.presentation.gens.index(gen)
        return 2 * i + (0 if sign > 0 else 1)

    def act(self, coset: int, w: Word) -> int:
        for g, step in w.letters():
            coset = self.action[coset][self.column(g, step)]
        return coset

    def validate(self) -> None:
        """Raise if any table invariant fails."""
        n = self.size
        for c, row in enumerate(self.action):
            if len(row) != 2 * len(self.presentation.gens):
                raise InconsistencyError(f"row {c} has wrong width")
            for x, d in enumerate(row):
                if not 0 <= d < n:
                    raise InconsistencyError(f"entry ({c}, {x}) out of range")
                if self.action[d][x ^ 1] != c:
                    raise InconsistencyError(f"entry ({c}, {x}) lacks its inverse")
        for rel in self.presentation.relators:
            for c in range(n):
                if self.act(c, rel) != c:
                    raise InconsistencyError(f"relator {rel} moves coset {c}")
        for s in self.subgens:
            if self.act(0, s) != 0:
                raise InconsistencyError(f"subgroup generator {s} moves coset 0")

    def to_tsv(self) -> str:
        header = ["coset"]
        for g in self.presentation.gens:
            header += [g, f"{g}^-1"]
        lines = ["\t".join(header)]
        for c, row in enumerate(self.action):
            lines.append("\t".join([str(c + 1)] + [str(d + 1) for d in row]))
        return "\n".join(lines) + "\n"


class _Enumeration:
    def __init__(self, pres: Presentation, subgens: Sequence[Word], max_cosets: int):
        self.pres = pres
        self.col = {g: 2 * i for i, g in enumerate(pres.gens)}
        self.ncols = 2 * len(pres.gens)
        self.rels = [self._encode(r) for r in pres.relators]
        self.rels = [r for r in self.rels if r]
        self.subgens = [self._encode(s) for s in subgens]
        self.subgens = [s for s in self.subgens if s]
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.deductions: list[tuple[int, int]] = []

    def _encode(self, w: Word) -> list[int]:
        out = []
        for g, step in w.letters():
            if g not in self.col:
                raise ValueError(f"generator {g!r} not in presentation {self.pres.name}")
            out.append(self.col[g] + (0 if step > 0 else 1))
        return out

    # union-find over cosets; a coset is live iff it is its own parent
    def rep(self, c: int) -> int:
        p = self.parent
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def _merge(self, k: int, l: int, queue: list[int]):
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a: int, b: int):
        t = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f is None:
                    continue
                t[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] is not None:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] is not None:
                    self._merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1
                    self.deductions.append((e1, x))

    def define(self, c: int, x: int) -> int:
        if self.live >= self.max_cosets:
            raise _TableFull
        d = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(d)
        self.live += 1
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.deductions.append((c, x))
        return d

    def scan(self, c: int, w: list[int], fill: bool) -> None:
        """Trace ``w`` forwards and backwards from ``c``, deducing where the gap
        is a single entry; with ``fill`` also define cosets to close bigger gaps."""
        t = self.table
        f, i = c, 0
        b, j = c, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] is not None:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] is not None:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                self.deductions.append((f, w[i]))
                return
            if not fill:
                return
            self.define(f, w[i])

    def lookahead(self) -> None:
        c = 0
        while c < len(self.table):
            for r in self.rels:
                if not self.alive(c):
                    break
                self.scan(c, r, fill=False)
            c += 1

    def _exhausted(self) -> ResourceExhausted:
        return ResourceExhausted(
            f"coset enumeration of {self.pres.name} exceeded {self.max_cosets} cosets")

    def _make_room(self) -> None:
        before = self.live
        self.lookahead()
        if self.live >= before:
            raise self._exhausted()

    def _fill_safely(self, c: int, w: list[int]) -> None:
        while self.alive(c):
            try:
                self.scan(c, w, fill=True)
                return
            except _TableFull:
                self._make_room()

    def hlt(self) -> None:
        for s in self.subgens:
            self._fill_safely(0, s)
        c = 0
        while c < len(self.table):
            for r in self.rels:
                if not self.alive(c):
                    break
                self._fill_safely(c, r)
            for x in range(self.ncols):
                while self.alive(c) and self.table[c][x] is None:
                    try:
                        self.define(c, x)
                    except _TableFull:
                        self._make_room()
            c += 1
        self.deductions.clear()

    def felsch(self) -> None:
        cyclic: dict[int, list[list[int]]] = {x: [] for x in range(self.ncols)}
        for r in self.rels:
            inv = [x ^ 1 for x in reversed(r)]
            for word in (r, inv):
                for k in range(len(word)):
                    rot = word[k:] + word[:k]
                    if rot not in cyclic[rot[0]]:
                        cyclic[rot[0]].append(rot)
        for s in self.subgens:
            self._fill_safely(0, s)
        while True:
            self._process_deductions(cyclic)
            nxt = self._first_gap()
            if nxt is None:
                # full pass catches anything the deduction stack missed
                live = self.live
                self.lookahead()
                for s in self.subgens:
                    self.scan(0, s, fill=False)
                if self.live == live and self._first_gap() is None:
                    self.deductions.clear()
                    return
                continue
            try:
                self.define(*nxt)
            except _TableFull:
                self._make_room()

    def _process_deductions(self, cyclic):
        while self.deductions:
            c, x = self.deductions.pop()
            if not self.alive(c):
                continue
            for w in cyclic[x]:
                if not self.alive(c):
                    break
                self.scan(c, w, fill=False)
            d = self.table[c][x]
            if d is not None and self.alive(d):
                for w in cyclic[x ^ 1]:
                    if not self.alive(d):
                        break
                    self.scan(d, w, fill=False)
            for s in self.subgens:
                self.scan(0, s, fill=False)

    def _first_gap(self):
        for c in range(len(self.table)):
            if self.alive(c):
                row = self.table[c]
                for x in range(self.ncols):
                    if row[x] is None:
                        return c, x
        return None

    def standardized(self) -> tuple[tuple[tuple[int, ...], ...], tuple[list[int], ...]]:
        """Renumber live cosets by breadth-first order from coset 0; return the
        action and, for each coset, the column path reaching it."""
        order = {0: 0}
        paths: list[list[int]] = [[]]
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(self.ncols):
                d = self.table[c][x]
                if d is None:
                    raise InconsistencyError("enumeration finished with an incomplete table")
                d = self.rep(d)
                if d not in order:
                    order[d] = len(order)
                    paths.append(paths[order[c]] + [x])
                    queue.append(d)
        action = [None] * len(order)
        for c, k in order.items():
            action[k] = tuple(order[self.rep(d)] for d in self.table[c])
        return tuple(action), tuple(paths)


class _TableFull(Exception):
    pass


def _path_word(pres: Presentation, path: list[int]) -> Word:
    return Word(tuple((pres.gens[x // 2], -1 if x % 2 else 1) for x in path))


def todd_coxeter(pres: Presentation, subgens: Sequence[Word],
                 max_cosets: int = DEFAULT_MAX_COSETS, strategy: Strategy = "hlt") -> CosetTable:
    """Enumerate the right cosets of ``<subgens>`` in the group ``pres``.

    Raises ResourceExhausted if more than ``max_cosets`` live cosets would be
    needed at once.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    run = _Enumeration(pres, subgens, max_cosets)
    if strategy == "hlt":
        run.hlt()
    elif strategy == "felsch":
        run.felsch()
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    action, paths = run.standardized()
    table = CosetTable(pres, tuple(subgens), action,
                       tuple(_path_word(pres, p) for p in paths))
    table.validate()
    return table


def coset_action(table: CosetTable, w: Word) -> Perm:
    """The permutation ``c -> c^w`` of the cosets (0-based)."""
    perm = Perm.identity(table.size)
    for g, step in w.letters():
        x = table.column(g, step)
        perm = compose(perm, Perm(tuple(row[x] for row in table.action)))
    return perm


def generator_perms(table: CosetTable) -> dict[str, Perm]:
    return {g: Perm(tuple(row[2 * i] for row in table.action))
            for i, g in enumerate(table.presentation.gens)}


def is_normal(table: CosetTable) -> bool:
    for s in table.subgens:
        for g in table.transversal:
            if table.act(0, g * s * g.inverse()) != 0:
                return False
    return True


def kernel_table(pres: Presentation, images: Mapping[str, Perm], G: FiniteGroup) -> CosetTable:
    """Coset table of the kernel of ``gen -> images[gen]`` onto ``G``.

    Cosets are the elements of G, reached breadth first from the identity.
    """
    report = check_hom(pres, images, compose, Perm.is_identity, Perm.inverse, G.identity)
    if not report.ok:
        raise InconsistencyError(
            f"images do not define a homomorphism from {pres.name}; failing relators: "
            + ", ".join(map(str, report.failing)))
    regular = {g: Perm(tuple(G.index_of(x * images[g]) for x in G)) for g in pres.gens}
    table = action_table(pres, regular, root=G.index_of(G.identity))
    if table.size != len(G):
        raise InconsistencyError(f"images generate a group of order {table.size}, not {len(G)}")
    return table


def action_table(pres: Presentation, images: Mapping[str, Perm], root: int = 0) -> CosetTable:
    """Coset table of the stabilizer of ``root`` under a permutation action.

    Only the orbit of ``root`` is kept; the relators must act trivially on it.
    """
    cols = []
    for g in pres.gens:
        cols += [images[g], images[g].inverse()]
    order = {root: 0}
    paths: list[list[int]] = [[]]
    rows: list[list[int]] = []
    queue = deque([root])
    while queue:
        x = queue.popleft()
        row = []
        for k, y in enumerate(cols):
            z = y(x)
            if z not in order:
                order[z] = len(order)
                paths.append(paths[order[x]] + [k])
                queue.append(z)
            row.append(z)
        rows.append(row)
    action = tuple(tuple(order[z] for z in row) for row in rows)
    subgens = _schreier_generators(pres, action, paths)
    table = CosetTable(pres, subgens, action, tuple(_path_word(pres, p) for p in paths))
    table.validate()
    return table


def _schreier_generators(pres: Presentation, action, paths) -> tuple[Word, ...]:
    """Schreier generators of the stabilizer read off the spanning tree."""
    words = [_path_word(pres, p) for p in paths]
    gens = []
    for c, row in enumerate(action):
        for i, g in enumerate(pres.gens):
            d = row[2 * i]
            w = words[c] * Word.gen(g) * words[d].inverse()
            if w and w not in gens:
                gens.append(w)
    return tuple(gens)


def equivalent(t1: CosetTable, t2: CosetTable) -> bool:
    """Same subgroup: the two actions agree after rooted relabeling."""
    if t1.presentation.gens != t2.presentation.gens or t1.size != t2.size:
        return False
    return _canonical(t1) == _canonical(t2)


def _canonical(t: CosetTable) -> tuple[tuple[int, ...], ...]:
    order = {0: 0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for d in t.action[c]:
            if d not in order:
                order[d] = len(order)
                queue.append(d)
    out = [None] * t.size
    for c, k in order.items():
        out[k] = tuple(order[d] for d in t.action[c])
    return tuple(out)


def expand(words: Sequence[Word], assignment: Mapping[str, Word]) -> tuple[Word, ...]:
    return tuple(substitute(w, assignment) for w in words)
