"""Frozen tabulated families and their reports against the printed matrices."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path

from gmpy2 import mpq

from ..exact import Mat, format_scalar
from ..pairing import (GramSpace, NonUnique, NoPositiveBasis, TabulatedDatum, image_set, pairing_matrix,
                       positive_basis, star)

DATA = Path(__file__).with_name("data")


class FamilyId(str, Enum):
    F14 = "F14"
    F15_rsq1 = "F15_rsq1"
    F15_rsqm1 = "F15_rsqm1"
    F112 = "F112"


ALIASES = {"F14": FamilyId.F14, "F15a": FamilyId.F15_rsq1, "F15b": FamilyId.F15_rsqm1,
           "F112": FamilyId.F112, "F15_rsq1": FamilyId.F15_rsq1, "F15_rsqm1": FamilyId.F15_rsqm1}

H = mpq(1, 2)

# printed values; rows and columns in the listed point order
GOLDEN = {
    "F15": (["(1,1)", "(1,eps)", "(r,1)", "(r,eps)", "(g_lambda,1)"],
            [[H, H, H, H, 1], [H, H, -H, -H, 1], [H, -H, H, -H, 0], [H, -H, -H, H, 0], [1, 1, 0, 0, 2]]),
    "F15_reduced": (["(1,1)", "(1,eps)", "(r,1)", "(r,eps)"],
                    [[H, H, H, H], [H, H, -H, -H], [H, -H, H, -H], [H, -H, -H, H]]),
    "F112": (["(1,1)", "(g_-1,1)", "(g_-1,eps)", "(g_lambda,1)"],
             [[1, H, H, 1], [H, H, 0, H], [H, 0, H, H], [1, H, H, 1]]),
    "F112_reduced": (["(g_-1,1)", "(g_-1,eps)"], [[H, 0], [0, H]]),
}


def resolve(fid) -> FamilyId:
    if isinstance(fid, FamilyId):
        return fid
    try:
        return ALIASES[str(fid)]
    except KeyError:
        raise ValueError(f"unknown family {fid!r}; expected one of {sorted(ALIASES)}") from None


@lru_cache(maxsize=None)
def datum(fid) -> TabulatedDatum:
    fid = resolve(fid)
    with open(DATA / f"{fid.value}.json") as fh:
        return TabulatedDatum.from_json(json.load(fh))


@dataclass
class Check:
    name: str
    ok: bool
    expected: str = ""
    actual: str = ""


@dataclass
class FamilyReport:
    family: FamilyId
    space: GramSpace
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    images: object = None
    basis: object = None

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, ok, expected="", actual=""):
        self.checks.append(Check(name, bool(ok), str(expected), str(actual)))

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "rows": self.space.labels,
            "matrix": self.space.matrix.to_strings(),
            "radical": [[format_scalar(v) for v in vec] for vec in self.space.radical],
            "images": self.images.labels if self.images else None,
            "basis": self.basis.labels if self.basis else None,
            "checks": [c.__dict__ for c in self.checks],
            "notes": self.notes,
        }


def _fmt(m: Mat) -> str:
    return str(m.to_strings())


def _golden(key) -> tuple[list, Mat]:
    labels, rows = GOLDEN[key]
    return labels, Mat(rows)


def family_report(fid) -> FamilyReport:
    fid = resolve(fid)
    d = datum(fid)
    gs = pairing_matrix(d, 0)
    rep = FamilyReport(fid, gs)
    rep.add("hermitian", gs.is_hermitian())
    imgs = image_set(gs)
    rep.images = imgs
    try:
        rep.basis = positive_basis(imgs)
    except (NoPositiveBasis, NonUnique) as exc:
        rep.add("positive basis exists and is unique", False, "unique", repr(exc))
    if fid is FamilyId.F14:
        ones = all(v == 1 for row in gs.matrix for v in row)
        rep.add("pairing constantly 1", ones, "all 1", _fmt(gs.matrix))
        rep.add("quotient dimension", gs.quotient_dimension == 1, 1, gs.quotient_dimension)
        rep.add("single image", len(imgs) == 1, 1, len(imgs))
    elif fid in (FamilyId.F15_rsq1, FamilyId.F15_rsqm1):
        _report_f15(rep, gs, imgs)
    else:
        _report_f112(rep, d, gs, imgs)
    return rep


def _report_f15(rep, gs, imgs):
    labels, gold = _golden("F15")
    rep.add("labels", gs.labels == labels, labels, gs.labels)
    rep.add("5x5 matrix", gs.matrix == gold, _fmt(gold), _fmt(gs.matrix))
    rad = gs.radical
    rep.add("radical dimension", len(rad) == 1, 1, len(rad))
    if len(rad) == 1:
        v = rad[0]
        ratio = [x / v[0] for x in v] if v[0] else v
        rep.add("radical spanned by e1+e2-e5", list(ratio) == [1, 1, 0, 0, -1], "[1,1,0,0,-1]",
                [format_scalar(x) for x in ratio])
    rep.add("(g_lambda,1) = (1,1)+(1,eps)",
            gs.same_image({"(g_lambda,1)": 1}, {"(1,1)": 1, "(1,eps)": 1}))
    rl, red = _golden("F15_reduced")
    sub = gs.submatrix(rl)
    rep.add("reduced 4x4 Gram", sub == red, _fmt(red), _fmt(sub))
    rep.add("image count", len(imgs) == 5, 5, len(imgs))
    if rep.basis is not None:
        rep.add("positive basis", sorted(rep.basis.labels) == sorted(rl), rl, rep.basis.labels)
        exp = rep.basis.expansion("(g_lambda,1)")
        got = [exp.get(l) for l in rl]
        rep.add("(g_lambda,1) coefficients", got == [1, 1, 0, 0], "[1,1,0,0]", [format_scalar(v) for v in got])
        st = star("(1,1)", rep.basis, gs)
        got = [st.coefficients[l] for l in rl]
        rep.add("star (1,1)", got == [H] * 4, "[1/2]*4", [format_scalar(v) for v in got])


def _report_f112(rep, d, gs, imgs):
    labels, gold = _golden("F112")
    rep.add("labels", gs.labels == labels, labels, gs.labels)
    rep.add("4x4 matrix", gs.matrix == gold, _fmt(gold), _fmt(gs.matrix))
    rep.add("(g_lambda,1) = (1,1)", gs.same_image({"(g_lambda,1)": 1}, {"(1,1)": 1}))
    rep.add("(1,1) = (g_-1,1)+(g_-1,eps)", gs.same_image({"(1,1)": 1}, {"(g_-1,1)": 1, "(g_-1,eps)": 1}))
    rl, red = _golden("F112_reduced")
    sub = gs.submatrix(rl)
    rep.add("reduced Gram diag(1/2,1/2)", sub == red, _fmt(red), _fmt(sub))
    rep.add("quotient dimension", gs.quotient_dimension == 2, 2, gs.quotient_dimension)
    k = d.kappa("g_-1", "g_-1", "H")
    rep.add("kappa(g_-1,g_-1) from adapted flags", k == H, "1/2", format_scalar(k))
    rep.add("image count by definition", len(imgs) == 3, 3, len(imgs))
    rep.notes.append(
        "the image set has 3 elements: (g_-1,1), (g_-1,eps) and the common image of (1,1) and "
        "(g_lambda,1), which equals (g_-1,1)+(g_-1,eps) but is a distinct vector; a 2-element "
        "image set would require discarding it")
    if rep.basis is not None:
        rep.add("positive basis", sorted(rep.basis.labels) == sorted(rl), rl, rep.basis.labels)
        exp = rep.basis.expansion("(1,1)")
        got = [exp.get(l) for l in rl]
        rep.add("(1,1) coefficients", got == [1, 1], "[1,1]", [format_scalar(v) for v in got])
        for p, want in (("(1,1)", [H, H]), ("(g_-1,1)", [H, 0])):
            st = star(p, rep.basis, gs)
            got = [st.coefficients[l] for l in rl]
            rep.add(f"star {p}", got == want, [format_scalar(v) for v in want], [format_scalar(v) for v in got])
