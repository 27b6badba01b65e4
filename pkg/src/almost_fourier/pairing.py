"""The Fourier pairing on (element, character) pairs and the Gram-quotient tools.

Two pathways share one output type:

* finite groups, where the sum runs over every z in H with zxz^-1 in Z(y);
* tabulated continuous families, where each component contributes a short
  list of precomputed z-records weighted by the standard weight function.

A :class:`GramSpace` holds the resulting matrix and answers questions about
the quotient by the radical: coordinates, coincidences, the nonnegative
basis, and the star map.
"""
from __future__ import annotations

import csv
import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from gmpy2 import mpq

from .exact import Mat, Scalar, as_number, format_scalar, kernel_basis, rank, solve_exact
from .groups import (CentralSubgroup, ClassFunction, FiniteGroup, centralizer, characters_from_json,
                     characters_to_json, conjugacy_classes, trivial_subgroup)


class PairingError(ValueError):
    pass


class InvalidCharacter(PairingError):
    pass


class MissingCell(PairingError):
    pass


class InvalidDatum(PairingError):
    pass


class NoPositiveBasis(PairingError):
    pass


class NonUnique(PairingError):
    def __init__(self, msg, candidates):
        super().__init__(msg)
        self.candidates = candidates


class NonRealCone(PairingError):
    pass


def _conj(v):
    return v.conj() if isinstance(v, Scalar) else v


@dataclass(frozen=True, eq=False)
class SigmaPoint:
    """A pair (x, sigma); ``x`` is a group index or a tabulated point label."""
    label: str
    x: object
    sigma: ClassFunction
    sector: int = 0

    def __repr__(self):
        return f"SigmaPoint({self.label})"


def _sector_of(sigma: ClassFunction, lam_image: Sequence[int], lam_chars: Sequence[ClassFunction]) -> int | None:
    """Index of the Lambda-character through which Lambda acts in sigma, or None."""
    deg = sigma.degree
    for k, chi in enumerate(lam_chars):
        if all(sigma(img) == chi(j) * deg for j, img in enumerate(lam_image)):
            return k
    return None


# ---------------------------------------------------------------------------
# Finite pathway
# ---------------------------------------------------------------------------

class FinitePairingDatum:
    def __init__(self, group: FiniteGroup, lam: CentralSubgroup | None = None):
        self.group = group
        self.lam = lam if lam is not None else trivial_subgroup(group)
        if self.lam.parent is not group:
            raise InvalidDatum("Lambda must be a central subgroup of H")
        self._lam_group = self.lam.as_group()
        self.lam_characters = self._lam_group.irreducible_characters()
        n = group.order
        t = group.table
        inv = group.inverse
        # conj[x][z] = z x z^-1
        self._conj = [[t[t[z][x]][inv[z]] for z in range(n)] for x in range(n)]
        self._prep: dict[int, tuple] = {}
        self._centralizers: dict[int, FiniteGroup] = {}

    def centralizer(self, x: int) -> FiniteGroup:
        z = self._centralizers.get(x)
        if z is None:
            z = self._centralizers[x] = centralizer(self.group, x)
        return z

    def translate(self, zeta: int, x: int) -> int:
        if zeta not in self.lam.members:
            raise InvalidDatum(f"{self.group.names[zeta]} is not in Lambda")
        return self.group.table[zeta][x]

    def point(self, x: int, sigma: ClassFunction, label: str | None = None) -> SigmaPoint:
        sector = self._check(x, sigma)
        return SigmaPoint(label or f"({self.group.names[x]},{sigma.name})", x, sigma, sector)

    def _check(self, x: int, sigma: ClassFunction) -> int:
        g = self.group
        zg = sigma.group
        if zg.parent is not g or zg.order != self.centralizer(x).order or \
                any(not g.commute(zg.to_parent(k), x) for k in range(zg.order)):
            raise InvalidCharacter(f"character {sigma.name!r} is not defined on Z({g.names[x]})")
        image = [zg.local(z) for z in self.lam.members]
        sector = _sector_of(sigma, image, self.lam_characters)
        if sector is None:
            raise InvalidCharacter(f"Lambda does not act by a scalar in {sigma.name!r}")
        return sector

    def _prepare(self, p: SigmaPoint):
        key = id(p)
        hit = self._prep.get(key)
        if hit is not None and hit[0] is p:
            return hit
        sector = self._check(p.x, p.sigma)
        if sector != p.sector:
            raise InvalidCharacter(f"{p.label}: declared sector {p.sector}, actual {sector}")
        n = self.group.order
        zg = p.sigma.group
        vals = [None] * n
        cvals = [None] * n
        for k in range(zg.order):
            h = zg.to_parent(k)
            vals[h] = p.sigma(k)
            cvals[h] = _conj(vals[h])
        zbar = zg.order // self.lam.order
        hit = (p, vals, cvals, zbar)
        self._prep[key] = hit
        return hit

    def pair(self, p: SigmaPoint, q: SigmaPoint):
        _, sv, _, zx = self._prepare(p)
        _, _, tc, zy = self._prepare(q)
        cx = self._conj[p.x]
        inv = self.group.inverse
        cy = self._conj[q.x]
        total = mpq(0)
        for z in range(self.group.order):
            a = tc[cx[z]]
            if a is None:
                continue
            total = total + a * sv[cy[inv[z]]]
        return as_number(total / (self.lam.order * zx * zy))

    def points(self, sector: int | None = 0) -> list[SigmaPoint]:
        """(class representative, irreducible character) pairs, one class per Lambda-orbit."""
        g = self.group
        out = []
        covered: set[int] = set()
        for cls in conjugacy_classes(g):
            x = cls[0]
            if x in covered:
                continue
            for zeta in self.lam.members:
                covered.update(g.table[zeta][y] for y in cls)
            for ch in self.centralizer(x).irreducible_characters():
                p = self.point(x, ch)
                if sector is None or p.sector == sector:
                    out.append(p)
        return out


def pair_finite(d: FinitePairingDatum, p: SigmaPoint, q: SigmaPoint):
    return d.pair(p, q)


def transport_point(d: FinitePairingDatum, p: SigmaPoint, f: int) -> SigmaPoint:
    """The point f.(x, sigma) = (f x f^-1, sigma o Ad(f)^-1)."""
    from .groups import transport
    g = d.group
    y = g.conj(f, p.x)
    sig = transport(p.sigma, f, d.centralizer(y))
    return d.point(y, sig, label=f"{p.label}^{g.names[f]}")


def translate_point(d: FinitePairingDatum, p: SigmaPoint, zeta: int) -> SigmaPoint:
    """(zeta x, sigma); the centralizer is unchanged since zeta is central."""
    y = d.translate(zeta, p.x)
    return d.point(y, ClassFunction(d.centralizer(y), p.sigma.values, p.sigma.name),
                   label=f"{d.group.names[zeta]}*{p.label}")


def property_failures(d: FinitePairingDatum, pts=None, pairs=None, conj_elements=None) -> list[str]:
    """Hermitian symmetry, Lambda-equivariance and conjugation invariance.

    ``pairs`` defaults to every pair from ``pts`` (default: all points of
    every sector); ``conj_elements`` defaults to all of H.
    """
    if pairs is None:
        pts = d.points(None) if pts is None else pts
        pairs = [(p, q) for p in pts for q in pts]
    fs = range(d.group.order) if conj_elements is None else conj_elements
    lam = d._lam_group
    bad = []
    for p, q in pairs:
        v = d.pair(p, q)
        if d.pair(q, p) != _conj(v):
            bad.append(f"hermitian {p.label},{q.label}")
        chi, chi_q = d.lam_characters[p.sector], d.lam_characters[q.sector]
        for z in d.lam.members:
            pz = translate_point(d, p, z)
            for z2 in d.lam.members:
                want = chi(lam.local(z2)) * _conj(chi_q(lam.local(z))) * v
                if d.pair(pz, translate_point(d, q, z2)) != want:
                    bad.append(f"equivariance {p.label},{q.label} by {z},{z2}")
        for f in fs:
            if d.pair(transport_point(d, p, f), q) != v:
                bad.append(f"conjugation {p.label},{q.label} by {f}")
    return bad


def sampled_pairs(d: FinitePairingDatum, samples: int, rng, pts=None) -> tuple[list, list]:
    """Random point pairs across all sectors plus one random H element per pair."""
    pts = d.points(None) if pts is None else pts
    pairs = [(rng.choice(pts), rng.choice(pts)) for _ in range(samples)]
    fs = [rng.randrange(d.group.order) for _ in range(samples)]
    return pairs, fs


# ---------------------------------------------------------------------------
# Tabulated pathway
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class TabPoint:
    label: str
    group: FiniteGroup           # component group D_x
    lam_image: tuple             # image in D_x of each Lambda element, in Lambda order
    zbar: int
    irreps: list                 # ClassFunctions on group

    def irrep(self, name: str) -> ClassFunction:
        for ch in self.irreps:
            if ch.name == name:
                return ch
        raise InvalidCharacter(f"{self.label} has no irrep {name!r}")


class TabulatedDatum:
    """Finite description of a family with positive-dimensional H."""

    def __init__(self, name: str, components: Sequence[str], identity_component: str,
                 component_inverse: dict, prefactor: int, lam: FiniteGroup,
                 points: Sequence[TabPoint], cells: dict):
        self.name = name
        self.components = list(components)
        self.identity_component = identity_component
        self.component_inverse = dict(component_inverse)
        self.prefactor = prefactor
        self.lam = lam
        self.lam_characters = lam.irreducible_characters()
        self.points = {p.label: p for p in points}
        self.point_order = [p.label for p in points]
        self.cells = {k: [tuple(r) for r in v] for k, v in cells.items()}
        self.validate()

    def validate(self) -> None:
        if self.identity_component not in self.components:
            raise InvalidDatum("identity component not listed")
        for p in self.points.values():
            if len(p.lam_image) != self.lam.order:
                raise InvalidDatum(f"{p.label}: Lambda image has wrong length")
            img = set(p.lam_image)
            if p.group.order % len(img) or p.zbar != p.group.order // len(img):
                raise InvalidDatum(f"{p.label}: |Zbar| = {p.zbar} inconsistent with |D|/|image of Lambda|")
            for ch in p.irreps:
                if _sector_of(ch, p.lam_image, self.lam_characters) is None:
                    raise InvalidDatum(f"{p.label}: Lambda is not scalar on {ch.name}")
        for (x, y, h), recs in self.cells.items():
            if x not in self.points or y not in self.points or h not in self.components:
                raise InvalidDatum(f"cell {x}|{y}|{h} refers to unknown data")
            dx, dy = self.points[x].group, self.points[y].group
            for a, b, _ in recs:
                if not (0 <= a < dy.order and 0 <= b < dx.order):
                    raise InvalidDatum(f"cell {x}|{y}|{h}: record index out of range")
            mirror = self.cells.get((y, x, self.component_inverse[h]))
            if mirror is None:
                raise InvalidDatum(f"cell {x}|{y}|{h} has no mirror cell")
            swapped = sorted((b, a, ad) for a, b, ad in recs)
            if sorted(mirror) != swapped:
                raise InvalidDatum(f"cell {x}|{y}|{h} is not the mirror of {y}|{x}|{self.component_inverse[h]}")

    def kappa(self, x: str, y: str, h: str):
        recs = self._cell(x, y, h)
        adapted = sum(1 for r in recs if r[2])
        return mpq(1, adapted) if adapted else mpq(0)

    def _cell(self, x, y, h):
        try:
            return self.cells[(x, y, h)]
        except KeyError:
            raise MissingCell(f"no cell for {x}|{y}|{h}") from None

    def point(self, label: str, irrep: str) -> SigmaPoint:
        tp = self.points[label]
        ch = tp.irrep(irrep)
        sector = _sector_of(ch, tp.lam_image, self.lam_characters)
        return SigmaPoint(f"({label},{irrep})", label, ch, sector)

    def sigma_points(self, sector: int | None = 0) -> list[SigmaPoint]:
        out = []
        for label in self.point_order:
            for ch in self.points[label].irreps:
                p = self.point(label, ch.name)
                if sector is None or p.sector == sector:
                    out.append(p)
        return out

    def pair(self, p: SigmaPoint, q: SigmaPoint):
        x, y = p.x, q.x
        sig, tau = p.sigma, q.sigma
        total = mpq(0)
        for h in self.components:
            recs = self._cell(x, y, h)
            k = self.kappa(x, y, h)
            if not k:
                continue
            part = mpq(0)
            for a, b, _ in recs:
                part = part + _conj(tau(a)) * sig(b)
            total = total + k * part
        zx, zy = self.points[x].zbar, self.points[y].zbar
        return as_number(total / (self.prefactor * zx * zy))

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        pts = []
        for label in self.point_order:
            p = self.points[label]
            pts.append({"label": label, "group": p.group.to_json(), "lambda_image": list(p.lam_image),
                        "zbar": p.zbar, "characters": characters_to_json(p.irreps)})
        return {
            "name": self.name,
            "components": self.components,
            "identity_component": self.identity_component,
            "component_inverse": self.component_inverse,
            "prefactor": self.prefactor,
            "lambda": self.lam.to_json(),
            "points": pts,
            "cells": {f"{x}|{y}|{h}": [[a, b, bool(ad)] for a, b, ad in recs]
                      for (x, y, h), recs in sorted(self.cells.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "TabulatedDatum":
        points = []
        for pd in data["points"]:
            g = FiniteGroup.from_json(pd["group"])
            chars = characters_from_json(g, pd["characters"])
            g.set_characters(chars)
            points.append(TabPoint(pd["label"], g, tuple(pd["lambda_image"]), pd["zbar"], chars))
        cells = {}
        for key, recs in data["cells"].items():
            x, y, h = key.split("|")
            cells[(x, y, h)] = [(a, b, bool(ad)) for a, b, ad in recs]
        return cls(data["name"], data["components"], data["identity_component"],
                   data["component_inverse"], data["prefactor"], FiniteGroup.from_json(data["lambda"]),
                   points, cells)


def pair_tabulated(d: TabulatedDatum, p: SigmaPoint, q: SigmaPoint):
    return d.pair(p, q)


def translated_pair(d, p: SigmaPoint, zeta: int, q: SigmaPoint, zeta_q: int):
    """Pairing of Lambda-translates (zeta x, sigma), (zeta' y, tau) via equivariance.

    ``zeta`` and ``zeta_q`` index elements of Lambda (local indices).
    """
    chi = d.lam_characters[p.sector]
    chi_q = d.lam_characters[q.sector]
    return as_number(chi(zeta_q) * _conj(chi_q(zeta)) * d.pair(p, q))


# ---------------------------------------------------------------------------
# Gram spaces
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class GramSpace:
    rows: list
    cols: list
    matrix: Mat

    @property
    def labels(self) -> list[str]:
        return [p.label for p in self.rows]

    @property
    def col_labels(self) -> list[str]:
        return [p.label for p in self.cols]

    @property
    def square(self) -> bool:
        return self.rows is self.cols or [id(p) for p in self.rows] == [id(p) for p in self.cols]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def value(self, a: str, b: str):
        return self.matrix[self.index(a), self.col_labels.index(b)]

    def is_hermitian(self) -> bool:
        return self.matrix.is_hermitian()

    @cached_property
    def radical(self) -> list[tuple]:
        # v pairs to zero with every column point: sum_p v_p M[p][q] = 0
        return kernel_basis(self.matrix.transpose())

    @property
    def quotient_dimension(self) -> int:
        return len(self.rows) - len(self.radical)

    def submatrix(self, labels: Sequence[str]) -> Mat:
        idx = [self.index(l) for l in labels]
        cidx = [self.col_labels.index(l) for l in labels]
        return self.matrix.submatrix(idx, cidx)

    def same_image(self, lhs: dict, rhs: dict) -> bool:
        """Do two formal combinations {label: coeff} have the same image in the quotient?"""
        ncols = len(self.cols)
        acc = [mpq(0)] * ncols
        for combo, sign in ((lhs, 1), (rhs, -1)):
            for label, c in combo.items():
                r = self.matrix.row(self.index(label))
                for j in range(ncols):
                    acc[j] = acc[j] + sign * as_number(c) * r[j]
        return all(v == 0 for v in acc)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([""] + self.col_labels)
            for label, row in zip(self.labels, self.matrix.to_strings()):
                w.writerow([label] + row)


def pairing_matrix(d, sector: int = 0, sector_q: int | None = None,
                   points: Sequence[SigmaPoint] | None = None,
                   points_q: Sequence[SigmaPoint] | None = None) -> GramSpace:
    if sector_q is None:
        sector_q = sector
    if points is None:
        points = d.points(sector) if isinstance(d, FinitePairingDatum) else d.sigma_points(sector)
    if points_q is None:
        if sector_q == sector:
            points_q = points
        else:
            points_q = d.points(sector_q) if isinstance(d, FinitePairingDatum) else d.sigma_points(sector_q)
    if not points or not points_q:
        raise PairingError("empty sector")
    rows = [[d.pair(p, q) for q in points_q] for p in points]
    return GramSpace(list(points), list(points_q) if points_q is not points else list(points), Mat(rows))


def classical_fourier(g: FiniteGroup) -> GramSpace:
    d = FinitePairingDatum(g)
    pts = d.points(0)
    gs = pairing_matrix(d, 0, points=pts)
    gs.rows = gs.cols = pts
    return gs


def radical(gs: GramSpace) -> list[tuple]:
    return gs.radical


@dataclass
class ImageSet:
    space: GramSpace
    pivots: list            # column indices used as coordinates
    coords: list            # one tuple per distinct image
    classes: list           # row indices per distinct image

    @property
    def labels(self) -> list[list[str]]:
        return [[self.space.rows[k].label for k in cls] for cls in self.classes]

    def representative(self, k: int) -> str:
        return self.space.rows[self.classes[k][0]].label

    def coord_of(self, label: str) -> tuple:
        r = self.space.index(label)
        for cls, c in zip(self.classes, self.coords):
            if r in cls:
                return c
        raise KeyError(label)

    def __len__(self):
        return len(self.coords)


def _pivot_columns(m: Mat) -> list[int]:
    piv: list[int] = []
    for j in range(m.shape[1]):
        trial = piv + [j]
        if rank(m.submatrix(range(m.shape[0]), trial)) == len(trial):
            piv = trial
    return piv


def image_set(gs: GramSpace) -> ImageSet:
    m = gs.matrix
    if m.shape[0] * m.shape[1] > 400:
        from .exact import _echelon
        _, piv, _, _ = _echelon(m)
        pivots = list(piv)
    else:
        pivots = _pivot_columns(m)
    coords: list[tuple] = []
    classes: list[list[int]] = []
    where: dict[tuple, int] = {}
    for i in range(m.shape[0]):
        full = m.row(i)
        c = tuple(full[j] for j in pivots)
        k = where.get(full)
        if k is None:
            where[full] = len(coords)
            coords.append(c)
            classes.append([i])
        else:
            classes[k].append(i)
    return ImageSet(gs, pivots, coords, classes)


@dataclass
class PositiveBasis:
    images: ImageSet
    members: list                   # indices into images
    expansions: list                # coefficient tuple per image, over members

    @property
    def labels(self) -> list[str]:
        return [self.images.representative(k) for k in self.members]

    def expansion(self, label: str) -> dict:
        c = self.images.coord_of(label)
        k = self.images.coords.index(c)
        return dict(zip(self.labels, self.expansions[k]))


def _real(v):
    if isinstance(v, Scalar):
        if not v.is_real:
            raise NonRealCone(f"coordinate {format_scalar(v)} is not real")
        return v.re
    return v


def positive_basis(images: ImageSet) -> PositiveBasis:
    coords = [tuple(_real(v) for v in c) for c in images.coords]
    dim = len(images.pivots)
    hits = []
    for subset in itertools.combinations(range(len(coords)), dim):
        b = Mat([coords[k] for k in subset]).transpose() if dim else None
        if dim and rank(b) != dim:
            continue
        exps = []
        for c in coords:
            sol = solve_exact(b, c) if dim else ()
            if sol is None or any(as_number(v) < 0 for v in sol):
                break
            exps.append(tuple(as_number(v) for v in sol))
        else:
            hits.append((list(subset), exps))
    if not hits:
        raise NoPositiveBasis("no basis of the quotient spans the images with nonnegative coefficients")
    if len(hits) > 1:
        raise NonUnique(f"{len(hits)} subsets qualify", [h[0] for h in hits])
    return PositiveBasis(images, hits[0][0], hits[0][1])


@dataclass
class StarVector:
    coefficients: dict        # basis label -> (b, p)
    coords: tuple             # quotient coordinates of sum_b (b,p) b


def star(p, basis: PositiveBasis, gs: GramSpace) -> StarVector:
    label = p.label if isinstance(p, SigmaPoint) else p
    col = gs.col_labels.index(label)
    coeffs = {}
    ncoord = len(basis.images.pivots)
    acc = [mpq(0)] * ncoord
    for k, b in zip(basis.members, basis.labels):
        c = gs.matrix[gs.index(b), col]
        coeffs[b] = c
        bc = basis.images.coords[k]
        for j in range(ncoord):
            acc[j] = acc[j] + c * bc[j]
    return StarVector(coeffs, tuple(as_number(v) for v in acc))


def gram_to_json(gs: GramSpace) -> dict:
    return {"rows": gs.labels, "cols": gs.col_labels, "matrix": gs.matrix.to_strings()}
