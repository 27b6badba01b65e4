"""Finite groups as multiplication tables, with supplied character tables.

Elements are integer indices into the carrier.  Subgroups (centralizers,
central subgroups) are ordinary :class:`FiniteGroup` objects that remember
their embedding into the parent so values can be moved back and forth.

Character tables for the nonabelian groups are written out by hand below and
checked by orthogonality; abelian groups get their linear characters by
extending along a chain of cyclic steps.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from gmpy2 import mpq

from .exact import Scalar, as_number, as_scalar, format_scalar, root_of_unity

MAX_ORDER = 4096


class GroupError(ValueError):
    pass


class ElementNotInGroup(GroupError):
    pass


class NotCentral(GroupError):
    pass


class CharacterTableMissing(GroupError):
    pass


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``parent``/``embedding`` are set for subgroups: ``embedding[k]`` is the
    parent index of local element ``k``.
    """

    def __init__(self, table: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                 name: str = "G", parent: "FiniteGroup | None" = None,
                 embedding: Sequence[int] | None = None, check: bool = True):
        n = len(table)
        if n == 0 or n > MAX_ORDER:
            raise GroupError(f"group order {n} outside 1..{MAX_ORDER}")
        self.table = tuple(tuple(r) for r in table)
        self.order = n
        self.name = name
        self.names = tuple(names) if names is not None else tuple(f"g{k}" for k in range(n))
        self.parent = parent
        self.embedding = tuple(embedding) if embedding is not None else None
        self._local = ({p: k for k, p in enumerate(self.embedding)}
                       if self.embedding is not None else None)
        ident = [e for e in range(n) if all(self.table[e][g] == g for g in range(n))]
        if len(ident) != 1:
            raise GroupError("no unique identity")
        self.identity = ident[0]
        inv = [None] * n
        for g in range(n):
            for h in range(n):
                if self.table[g][h] == self.identity:
                    inv[g] = h
                    break
        if any(v is None for v in inv):
            raise GroupError("element without inverse")
        self.inverse = tuple(inv)
        self._characters: list[ClassFunction] | None = None
        if check:
            self.check_axioms()

    # -- construction -------------------------------------------------------
    @classmethod
    def from_elements(cls, elements: Sequence[Hashable], mul: Callable, name: str = "G",
                      names: Sequence[str] | None = None) -> "FiniteGroup":
        index = {e: k for k, e in enumerate(elements)}
        if len(index) != len(elements):
            raise GroupError("duplicate elements")
        try:
            table = [[index[mul(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise GroupError(f"product {exc} leaves the carrier") from None
        g = cls(table, names or [str(e) for e in elements], name=name)
        g.elements = tuple(elements)
        return g

    @classmethod
    def generated(cls, gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                  name: str = "G", namer: Callable | None = None) -> "FiniteGroup":
        """Close ``gens`` under ``mul``; carrier order is BFS order from the identity."""
        elems = [identity]
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = mul(a, s)
                    if b not in seen:
                        if len(seen) >= MAX_ORDER:
                            raise GroupError("generated group too large")
                        seen.add(b)
                        elems.append(b)
                        nxt.append(b)
            frontier = nxt
        names = [namer(e) for e in elems] if namer else None
        return cls.from_elements(elems, mul, name=name, names=names)

    def check_axioms(self) -> None:
        n = self.order
        t = self.table
        for r in t:
            if len(r) != n or sorted(r) != list(range(n)):
                raise GroupError("table is not a Latin square")
        if n <= 512:
            for a in range(n):
                ta = t[a]
                for b in range(n):
                    tab = t[ta[b]]
                    tb = t[b]
                    for c in range(n):
                        if tab[c] != ta[tb[c]]:
                            raise GroupError("multiplication is not associative")

    # -- basic operations ---------------------------------------------------
    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, z: int, x: int) -> int:
        """z x z^-1."""
        return self.table[self.table[z][x]][self.inverse[z]]

    def power(self, a: int, k: int) -> int:
        out = self.identity
        base = a if k >= 0 else self.inverse[a]
        for _ in range(abs(k)):
            out = self.table[out][base]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ElementNotInGroup(name) from None

    def commute(self, a: int, b: int) -> bool:
        return self.table[a][b] == self.table[b][a]

    def is_abelian(self) -> bool:
        return all(self.commute(a, b) for a in range(self.order) for b in range(a))

    def center(self) -> list[int]:
        return [z for z in range(self.order) if all(self.commute(z, g) for g in range(self.order))]

    def local(self, parent_index: int) -> int:
        """Local index of a parent element (subgroups only)."""
        if self._local is None:
            return parent_index
        try:
            return self._local[parent_index]
        except KeyError:
            raise ElementNotInGroup(parent_index) from None

    def contains_parent(self, parent_index: int) -> bool:
        return self._local is None or parent_index in self._local

    def to_parent(self, k: int) -> int:
        return k if self.embedding is None else self.embedding[k]

    def subgroup(self, members: Iterable[int], name: str = "sub") -> "FiniteGroup":
        members = sorted(set(members))
        pos = {m: k for k, m in enumerate(members)}
        try:
            table = [[pos[self.table[a][b]] for b in members] for a in members]
        except KeyError:
            raise GroupError("subset is not closed under multiplication") from None
        return FiniteGroup(table, [self.names[m] for m in members], name=name,
                           parent=self, embedding=members, check=False)

    # -- characters ----------------------------------------------------------
    def set_characters(self, chars: Sequence["ClassFunction"]) -> None:
        self._characters = list(chars)

    def irreducible_characters(self) -> list["ClassFunction"]:
        if self._characters is not None:
            return list(self._characters)
        if self.is_abelian():
            self._characters = abelian_characters(self)
            return list(self._characters)
        if self.parent is not None and self.order == self.parent.order:
            return [restrict(ch, self) for ch in self.parent.irreducible_characters()]
        raise CharacterTableMissing(f"no character table supplied for {self.name}")

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        return {"order": self.order, "name": self.name,
                "table": [v for r in self.table for v in r],
                "names": list(self.names)}

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        n = data["order"]
        flat = data["table"]
        if len(flat) != n * n:
            raise GroupError("multiplication table has wrong size")
        table = [flat[k * n:(k + 1) * n] for k in range(n)]
        return cls(table, data.get("names"), name=data.get("name", "G"))

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


@dataclass(frozen=True, eq=False)
class ClassFunction:
    group: FiniteGroup
    values: tuple
    name: str = ""

    def __post_init__(self):
        if len(self.values) != self.group.order:
            raise GroupError("class function has wrong number of values")
        object.__setattr__(self, "values", tuple(as_number(v) for v in self.values))

    def __call__(self, k: int):
        return self.values[k]

    def at_parent(self, parent_index: int):
        return self.values[self.group.local(parent_index)]

    @property
    def degree(self):
        return self.values[self.group.identity]

    def conj(self) -> "ClassFunction":
        return ClassFunction(self.group, tuple(_conj(v) for v in self.values), self.name + "*")

    def to_strings(self) -> list[str]:
        return [format_scalar(v) for v in self.values]


def _conj(v):
    return v.conj() if isinstance(v, Scalar) else v


def restrict(ch: ClassFunction, sub: FiniteGroup) -> ClassFunction:
    return ClassFunction(sub, tuple(ch.values[sub.to_parent(k)] for k in range(sub.order)), ch.name)


def transport(ch: ClassFunction, f: int, target: FiniteGroup) -> ClassFunction:
    """Character of Ad(f)-transported representation on ``target`` (a subgroup of the same parent).

    value at h in target = ch(f^-1 h f).
    """
    src = ch.group
    parent = src.parent if src.parent is not None else src
    finv = parent.inverse[f]
    vals = []
    for k in range(target.order):
        h = target.to_parent(k)
        vals.append(ch.at_parent(parent.conj(finv, h)))
    return ClassFunction(target, tuple(vals), ch.name)


@dataclass(frozen=True, eq=False)
class CentralSubgroup:
    parent: FiniteGroup
    members: tuple

    def __post_init__(self):
        mem = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", mem)
        p = self.parent
        for z in mem:
            if not all(p.commute(z, g) for g in range(p.order)):
                raise NotCentral(f"{p.names[z]} is not central in {p.name}")
        s = set(mem)
        if p.identity not in s or any(p.table[a][b] not in s for a in mem for b in mem):
            raise GroupError("central subset is not a subgroup")

    @property
    def order(self) -> int:
        return len(self.members)

    def as_group(self) -> FiniteGroup:
        return self.parent.subgroup(self.members, name="Lambda")

    def characters(self) -> list[ClassFunction]:
        return self.as_group().irreducible_characters()


def trivial_subgroup(g: FiniteGroup) -> CentralSubgroup:
    return CentralSubgroup(g, (g.identity,))


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def centralizer(g: FiniteGroup, x: int) -> FiniteGroup:
    if not 0 <= x < g.order:
        raise ElementNotInGroup(x)
    members = [z for z in range(g.order) if g.commute(z, x)]
    return g.subgroup(members, name=f"Z({g.names[x]})")


def conjugacy_classes(g: FiniteGroup) -> list[list[int]]:
    """Classes ordered by their minimal element index, each sorted."""
    seen = [False] * g.order
    out = []
    for x in range(g.order):
        if seen[x]:
            continue
        cls = sorted({g.conj(z, x) for z in range(g.order)})
        for y in cls:
            seen[y] = True
        out.append(cls)
    return out


def character_table_failures(g: FiniteGroup, chars: Sequence[ClassFunction],
                             degrees: Sequence | None = None) -> list[str]:
    """Diagnostics for first orthogonality, class constancy and completeness."""
    fails: list[str] = []
    classes = conjugacy_classes(g)
    for k, ch in enumerate(chars):
        if ch.group.order != g.order:
            fails.append(f"{ch.name or k}: defined on a group of order {ch.group.order}")
            continue
        for cls in classes:
            if any(ch(y) != ch(cls[0]) for y in cls):
                fails.append(f"{ch.name or k}: not constant on class of {g.names[cls[0]]}")
                break
        if degrees is not None and ch.degree != as_number(degrees[k]):
            fails.append(f"{ch.name or k}: degree {ch.degree} != declared {degrees[k]}")
    if fails:
        return fails
    n = mpq(g.order)
    for a, b in itertools.combinations_with_replacement(range(len(chars)), 2):
        ca, cb = chars[a], chars[b]
        acc = mpq(0)
        for cls in classes:
            y = cls[0]
            acc = acc + len(cls) * ca(y) * _conj(cb(y))
        ip = acc / n
        want = 1 if a == b else 0
        if ip != want:
            fails.append(f"<{ca.name or a},{cb.name or b}> = {format_scalar(ip)}, expected {want}")
    total = sum((as_scalar(ch.degree) * as_scalar(ch.degree) for ch in chars), Scalar())
    if total != g.order:
        fails.append(f"sum of squared degrees {format_scalar(total)} != |G| = {g.order}")
    return fails


def validate_characters(g: FiniteGroup, chars: Sequence[ClassFunction],
                        degrees: Sequence | None = None) -> bool:
    return not character_table_failures(g, chars, degrees)


def quotient_order(g: FiniteGroup, n: CentralSubgroup | Sequence[int]) -> int:
    if not isinstance(n, CentralSubgroup):
        mem = tuple(n)
        for z in mem:
            if not g.contains_parent(z) and g.parent is not None:
                raise NotCentral(f"{z} not in {g.name}")
        members = [g.local(z) if g.parent is not None else z for z in mem]
        n = CentralSubgroup(g, tuple(members))
    elif n.parent is not g:
        # central subgroup of the ambient group restricted to g
        members = []
        for z in n.members:
            if not g.contains_parent(z):
                raise NotCentral(f"{n.parent.names[z]} not contained in {g.name}")
            members.append(g.local(z))
        n = CentralSubgroup(g, tuple(members))
    return g.order // n.order


# ---------------------------------------------------------------------------
# Abelian characters
# ---------------------------------------------------------------------------

def abelian_characters(g: FiniteGroup) -> list[ClassFunction]:
    """All linear characters of an abelian group of exponent dividing 12."""
    if not g.is_abelian():
        raise CharacterTableMissing(f"{g.name} is not abelian")
    roots = [root_of_unity(12, j) for j in range(12)]
    e = g.identity
    span = [e]
    chars: list[dict] = [{e: Scalar(1)}]
    in_span = {e}
    while len(span) < g.order:
        gen = max((x for x in range(g.order) if x not in in_span),
                  key=lambda x: (g.element_order(x), -x))
        k, y = 1, gen
        while y not in in_span:
            y = g.table[y][gen]
            k += 1
        # y = gen^k lies in the current span
        new_chars = []
        for ch in chars:
            target = ch[y]
            cands = [w for w in roots if w ** k == target]
            if len(cands) != k:
                raise CharacterTableMissing(f"{g.name}: exponent does not divide 12")
            for w in cands:
                ext = {}
                for a in range(k):
                    ga = g.power(gen, a)
                    wa = w ** a
                    for h in span:
                        ext[g.table[h][ga]] = ch[h] * wa
                new_chars.append(ext)
        new_span = []
        for a in range(k):
            ga = g.power(gen, a)
            new_span.extend(g.table[h][ga] for h in span)
        span = new_span
        in_span = set(span)
        chars = new_chars
    out = []
    for idx, ch in enumerate(chars):
        out.append(ClassFunction(g, tuple(ch[x] for x in range(g.order)), f"lin{idx}"))
    # trivial character first
    out.sort(key=lambda c: 0 if all(v == 1 for v in c.values) else 1)
    return out


# ---------------------------------------------------------------------------
# Standard small groups
# ---------------------------------------------------------------------------

def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], ["1"], name="1")


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       [f"a^{k}" if k else "1" for k in range(n)], name=f"Z{n}")


def klein() -> FiniteGroup:
    return FiniteGroup([[a ^ b for b in range(4)] for a in range(4)], ["1", "a", "b", "ab"], name="V4")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; elements r^k s^e as (k, e)."""
    elems = [(k, e) for e in (0, 1) for k in range(n)]

    def mul(a, b):
        (k1, e1), (k2, e2) = a, b
        return ((k1 + (k2 if e1 == 0 else -k2)) % n, e1 ^ e2)

    names = [("r^%d" % k if k else "1") if e == 0 else ("s" if k == 0 else "r^%ds" % k)
             for k, e in elems]
    g = FiniteGroup.from_elements(elems, mul, name=f"D{n}", names=names)
    if n == 4:
        g.set_characters(_dihedral4_characters(g))
    return g


def quaternion() -> FiniteGroup:
    """Q8 = {+-1, +-i, +-j, +-k}; elements (sign, unit) with unit in 1,i,j,k."""
    prod = {("1", u): (1, u) for u in "1ijk"}
    prod.update({(u, "1"): (1, u) for u in "1ijk"})
    prod.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]

    def mul(a, b):
        s, u = prod[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    names = [("" if s == 1 else "-") + u for s, u in elems]
    g = FiniteGroup.from_elements(elems, mul, name="Q8", names=names)
    g.set_characters(_quaternion_characters(g))
    return g


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 4:
        raise GroupError("symmetric groups are provided for n <= 4")
    elems = sorted(itertools.permutations(range(n)))

    def mul(a, b):  # (a*b)(i) = a(b(i))
        return tuple(a[b[i]] for i in range(n))

    g = FiniteGroup.from_elements(elems, mul, name=f"S{n}",
                                  names=["".join(str(v + 1) for v in p) for p in elems])
    if n == 3:
        g.set_characters(_s3_characters(g))
    elif n <= 2:
        g.irreducible_characters()
    return g


def _table_from_classes(g: FiniteGroup, rows: dict[str, Sequence], rep_names: Sequence[str]):
    classes = conjugacy_classes(g)
    reps = [g.index(nm) for nm in rep_names]
    out = []
    for chname, vals in rows.items():
        value_of = {}
        for rep, v in zip(reps, vals):
            cls = next(c for c in classes if rep in c)
            for y in cls:
                value_of[y] = v
        out.append(ClassFunction(g, tuple(value_of[x] for x in range(g.order)), chname))
    return out


def _s3_characters(g: FiniteGroup):
    # classes: identity, transpositions, 3-cycles
    return _table_from_classes(g, {
        "triv": [1, 1, 1],
        "sgn": [1, -1, 1],
        "std": [2, 0, -1],
    }, ["123", "213", "231"])


def _dihedral4_characters(g: FiniteGroup):
    return _table_from_classes(g, {
        "triv": [1, 1, 1, 1, 1],
        "rot": [1, 1, 1, -1, -1],
        "refl_s": [1, 1, -1, 1, -1],
        "refl_rs": [1, 1, -1, -1, 1],
        "std": [2, -2, 0, 0, 0],
    }, ["1", "r^2", "r^1", "s", "r^1s"])


def _quaternion_characters(g: FiniteGroup):
    return _table_from_classes(g, {
        "triv": [1, 1, 1, 1, 1],
        "chi_i": [1, 1, 1, -1, -1],
        "chi_j": [1, 1, -1, 1, -1],
        "chi_k": [1, 1, -1, -1, 1],
        "std": [2, -2, 0, 0, 0],
    }, ["1", "-1", "i", "j", "k"])


STANDARD_GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "trivial": trivial_group,
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "V4": klein,
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "Q8": quaternion,
}


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def characters_to_json(chars: Sequence[ClassFunction]) -> dict:
    return {"names": [c.name for c in chars], "values": [c.to_strings() for c in chars]}


def characters_from_json(g: FiniteGroup, data: dict) -> list[ClassFunction]:
    names = data.get("names") or [f"chi{k}" for k in range(len(data["values"]))]
    return [ClassFunction(g, tuple(as_number(v) for v in vals), nm)
            for nm, vals in zip(names, data["values"])]


def load_group(path) -> tuple[FiniteGroup, list[ClassFunction] | None]:
    with open(path) as fh:
        data = json.load(fh)
    g = FiniteGroup.from_json(data)
    chars = None
    if "characters" in data:
        chars = characters_from_json(g, data["characters"])
        g.set_characters(chars)
    return g, chars


def dump_group(g: FiniteGroup, path, chars: Sequence[ClassFunction] | None = None) -> None:
    data = g.to_json()
    if chars is not None:
        data["characters"] = characters_to_json(chars)
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
