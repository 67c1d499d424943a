"""Line families over refined bisplit classes and the checks made on them.

A family F_AB is the set of lines generated by pairs (a, b) with a in class A
and b in class B. Each table below lists families together with how their lines
must meet every class (a signature) and how many distinct lines they hold; the
verifiers build the families by brute force and compare.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .bisplit import RefinedPartition
from .graph import DistanceMatrix, Graph, GraphError, all_pairs_distances, bits, popcount
from .lemmas import ceil_div
from .lines import line_mask


# ----------------------------------------------------------------------
# Report plumbing
# ----------------------------------------------------------------------

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


@dataclass
class Check:
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


def check(name: str, ok: bool, **detail) -> Check:
    return Check(name, PASS if ok else FAIL, detail)


def vacuous(name: str, reason: str, **detail) -> Check:
    return Check(name, VACUOUS, {"reason": reason, **detail})


def _set(mask: int) -> list[int]:
    return bits(mask)


# ----------------------------------------------------------------------
# Families
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    """Generators a in class A and b in class B; ``pinned`` narrows A to one vertex."""

    name: str
    A: str
    B: str
    pinned: Optional[int] = None


@dataclass
class LineFamily:
    spec: FamilySpec
    lines: dict[tuple[int, int], int]

    @cached_property
    def distinct(self) -> frozenset[int]:
        return frozenset(self.lines.values())

    def __len__(self) -> int:
        return len(self.distinct)

    def member_sets(self) -> list[frozenset[int]]:
        return sorted((frozenset(bits(m)) for m in self.distinct), key=sorted)


def class_mask(r: RefinedPartition, name: str, extra: Optional[dict[str, int]] = None) -> int:
    if extra and name in extra:
        return extra[name]
    try:
        return r.masks[name]
    except KeyError:
        raise GraphError(f"unknown vertex class {name!r}") from None


def _family(d: DistanceMatrix, spec: FamilySpec, A: int, B: int) -> LineFamily:
    lines: dict[tuple[int, int], int] = {}
    seen: set[tuple[int, int]] = set()
    for a in bits(A):
        for b in bits(B):
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            if key in seen:
                continue
            seen.add(key)
            lines[(a, b)] = line_mask(d, a, b)
    return LineFamily(spec, lines)


def build_family(
    g: Graph,
    r: RefinedPartition,
    spec: FamilySpec,
    d: Optional[DistanceMatrix] = None,
    extra: Optional[dict[str, int]] = None,
) -> LineFamily:
    """Compute every line of the family by brute force.

    Raises GraphError when a generator class is empty or the pinned vertex is
    outside its class.
    """
    if d is None:
        d = all_pairs_distances(g)
    A, B = class_mask(r, spec.A, extra), class_mask(r, spec.B, extra)
    if spec.pinned is not None:
        if not A >> spec.pinned & 1:
            raise GraphError(f"{spec.name}: pinned vertex {spec.pinned} is not in {spec.A}")
        A = 1 << spec.pinned
    for cname, m in ((spec.A, A), (spec.B, B)):
        if not m:
            raise GraphError(f"{spec.name}: class {cname} is empty")
    return _family(d, spec, A, B)


# ----------------------------------------------------------------------
# Signatures
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    """How a line generated by (a, b) may meet one class."""

    kind: str  # gens | gen_a | gen_b | all | empty | at_least
    k: int = 0

    def holds(self, line: int, cls: int, a: int, b: int) -> bool:
        part = line & cls
        if self.kind == "gens":
            return part == ((1 << a) | (1 << b)) & cls
        if self.kind == "gen_a":
            return part == 1 << a
        if self.kind == "gen_b":
            return part == 1 << b
        if self.kind == "all":
            return part == cls
        if self.kind == "empty":
            return part == 0
        if self.kind == "at_least":
            return popcount(part) >= self.k
        raise ValueError(self.kind)

    def __str__(self) -> str:
        return f">={self.k}" if self.kind == "at_least" else self.kind


GENS, GEN_A, GEN_B = Constraint("gens"), Constraint("gen_a"), Constraint("gen_b")
ALL, EMPTY = Constraint("all"), Constraint("empty")


def at_least(k: int) -> Constraint:
    return Constraint("at_least", k)


def signature_violations(
    family: LineFamily, signature: dict[str, Constraint], masks: dict[str, int], limit: int = 5
) -> list[dict]:
    out = []
    for (a, b), line in family.lines.items():
        for cname, con in signature.items():
            if not con.holds(line, masks[cname], a, b):
                out.append({"generators": [a, b], "class": cname, "expected": str(con),
                            "found": _set(line & masks[cname])})
                if len(out) >= limit:
                    return out
    return out


# ----------------------------------------------------------------------
# Case classification
# ----------------------------------------------------------------------

class Case(str, Enum):
    BOTH_EMPTY = "BOTH_EMPTY"
    BOTH_NONEMPTY = "BOTH_NONEMPTY"
    XZ_EMPTY_Y2_BIG = "XZ_EMPTY_Y2_BIG"
    XZ_EMPTY_Y2_SINGLETON = "XZ_EMPTY_Y2_SINGLETON"
    XZ_EMPTY_Y2_EMPTY = "XZ_EMPTY_Y2_EMPTY"


@dataclass(frozen=True)
class CaseTag:
    case: Case
    z_singleton: bool
    xy_singleton: bool
    mirrored: bool = False

    def to_json(self) -> dict:
        return {"tag": self.case.value, "z_singleton": self.z_singleton,
                "xy_singleton": self.xy_singleton, "mirrored": self.mirrored}


def normalize(r: RefinedPartition) -> tuple[RefinedPartition, bool]:
    """Swap Y and Z when only X_Z is nonempty, so a one-sided X part is always X_Y."""
    if not r.XY and r.XZ:
        return r.mirrored(), True
    return r, False


def classify_case(r: RefinedPartition) -> CaseTag:
    r, mirrored = normalize(r)
    flags = dict(z_singleton=len(r.Z) == 1, xy_singleton=len(r.XY) == 1, mirrored=mirrored)
    if not r.XY:
        return CaseTag(Case.BOTH_EMPTY, **flags)
    if r.XZ:
        return CaseTag(Case.BOTH_NONEMPTY, **flags)
    if len(r.Y2) >= 2:
        return CaseTag(Case.XZ_EMPTY_Y2_BIG, **flags)
    if len(r.Y2) == 1:
        return CaseTag(Case.XZ_EMPTY_Y2_SINGLETON, **flags)
    return CaseTag(Case.XZ_EMPTY_Y2_EMPTY, **flags)


# ----------------------------------------------------------------------
# Closed forms when every X vertex sees both sides
# ----------------------------------------------------------------------

LX, LY, LYP = "LX", "LY", "LYp"


def _require_two_sided(g: Graph, r: RefinedPartition, d: DistanceMatrix, a: int) -> None:
    if r.XY or r.XZ:
        raise GraphError("closed forms need X_Y and X_Z empty")
    if not r.Y or not r.Z:
        raise GraphError("closed forms need Y and Z nonempty")
    if a not in r.X:
        raise GraphError(f"vertex {a} is not in X")
    if not d.sphere(a, 3):
        raise GraphError(f"vertex {a} has no vertex at distance 3")


def closed_form_line(
    g: Graph,
    r: RefinedPartition,
    kind: str,
    a: int,
    *,
    x: Optional[int] = None,
    y: Optional[int] = None,
    y_prime: Optional[int] = None,
    d: Optional[DistanceMatrix] = None,
) -> frozenset[int]:
    """The line predicted by neighbourhood formulas, with a in X having an antipode.

    LX: line(a, x), x in X - {a}; LY: line(a, y), y in Y not adjacent to a;
    LYp: line(y, y'), y and y' both in Y and adjacent to a.
    """
    if d is None:
        d = all_pairs_distances(g)
    _require_two_sided(g, r, d, a)
    adj, X, Z = g.adj, r.masks["X"], r.masks["Z"]
    if kind == LX:
        if x is None or x == a or x not in r.X:
            raise GraphError("LX needs x in X other than a")
        k = d(a, x)
        if k == 2:
            core = adj[a] & adj[x]
        elif k == 3:
            core = adj[a] | adj[x]
        else:
            raise GraphError(f"LX: d(a, x) = {k}, expected 2 or 3")
        return frozenset(bits(core | 1 << a | 1 << x))
    if kind == LY:
        if y is None or y not in r.Y or adj[a] >> y & 1:
            raise GraphError("LY needs y in Y not adjacent to a")
        members = 1 << a | 1 << y | (d.sphere(a, 3) & X & adj[y]) | (adj[a] & Z)
        return frozenset(bits(members))
    if kind == LYP:
        if y is None or y_prime is None or y == y_prime:
            raise GraphError("LYp needs two distinct vertices y, y'")
        for v in (y, y_prime):
            if v not in r.Y or not adj[a] >> v & 1:
                raise GraphError(f"LYp: {v} is not a Y-neighbour of a")
        members = (adj[y] & adj[y_prime] & X) | 1 << y | 1 << y_prime | Z
        return frozenset(bits(members))
    raise GraphError(f"unknown closed form {kind!r}")


def closed_form_sweep(g: Graph, r: RefinedPartition, d: DistanceMatrix) -> tuple[int, list[dict]]:
    """Compare every closed form with the brute-force line.

    Covers every a in X with an antipode, both orientations (Y and Z swapped)
    and every admissible parameter. Returns (comparisons made, mismatches).
    """
    compared, bad = 0, []
    for side, rr in (("Y", r), ("Z", r.mirrored())):
        Y = rr.masks["Y"]
        for a in sorted(rr.X):
            if not d.sphere(a, 3):
                continue
            cases: list[tuple[str, dict]] = [(LX, {"x": x}) for x in sorted(rr.X) if x != a]
            cases += [(LY, {"y": y}) for y in bits(Y & ~g.adj[a])]
            cases += [(LYP, {"y": u, "y_prime": v}) for u, v in combinations(bits(Y & g.adj[a]), 2)]
            for kind, params in cases:
                predicted = closed_form_line(g, rr, kind, a, d=d, **params)
                gens = (a, params.get("x", params.get("y"))) if kind != LYP else (params["y"], params["y_prime"])
                actual = frozenset(bits(line_mask(d, *gens)))
                compared += 1
                if predicted != actual:
                    bad.append({"side": side, "kind": kind, "a": a, **params,
                                "predicted": sorted(predicted), "actual": sorted(actual)})
    return compared, bad


# ----------------------------------------------------------------------
# Facts on the refined classes
# ----------------------------------------------------------------------

@dataclass
class FactReport:
    id: int
    side: str
    status: str
    counts: dict
    checks: list[Check]

    def to_json(self) -> dict:
        return {"id": self.id, "side": self.side, "status": self.status, "counts": self.counts,
                "checks": [c.to_json() for c in self.checks]}


def _rollup(checks: list[Check]) -> str:
    if any(c.failed for c in checks):
        return FAIL
    if checks and all(c.status == VACUOUS for c in checks):
        return VACUOUS
    return PASS if checks else VACUOUS


def _family_or_empty(d: DistanceMatrix, r: RefinedPartition, spec: FamilySpec,
                     extra: Optional[dict[str, int]] = None) -> LineFamily:
    A, B = class_mask(r, spec.A, extra), class_mask(r, spec.B, extra)
    if spec.pinned is not None:
        A &= 1 << spec.pinned
    return _family(d, spec, A, B)


def verify_fact(
    g: Graph,
    r: RefinedPartition,
    fact_id: int,
    d: Optional[DistanceMatrix] = None,
    universal: Optional[bool] = None,
    side: str = "Y",
) -> FactReport:
    """Check one of the four family facts on r (read with Y and Z swapped when side='Z').

    ``universal`` says whether g has a universal line; computed when omitted.
    """
    if fact_id not in (1, 2, 3, 4):
        raise ValueError(f"unknown fact {fact_id}")
    if d is None:
        d = all_pairs_distances(g)
    if side == "Z":
        r = r.mirrored()
    m = r.masks
    checks: list[Check] = []
    counts: dict = {}

    if not r.Y or not r.Z:
        return FactReport(fact_id, side, VACUOUS, {}, [vacuous(f"fact{fact_id}", "Y or Z empty")])

    fxx = _family_or_empty(d, r, FamilySpec("F_X'X'", "Xp", "Xp"))
    if fact_id == 1:
        if len(r.Xp) < 2:
            checks.append(vacuous("fact1", "|X'| < 2"))
        else:
            counts = {"lines": len(fxx), "expected": comb(len(r.Xp), 2)}
            checks.append(check("fact1.count", len(fxx) == comb(len(r.Xp), 2), **counts))
            viol = signature_violations(fxx, {"Xp": GENS, "XY": EMPTY, "XZ": EMPTY}, m)
            checks.append(check("fact1.signature", not viol, violations=viol))
        return FactReport(1, side, _rollup(checks), counts, checks)

    if not r.XY:
        return FactReport(fact_id, side, VACUOUS, {}, [vacuous(f"fact{fact_id}", "X_Y empty")])

    fy1y = _family_or_empty(d, r, FamilySpec("F_Y1Y", "Y1", "Y"))
    if fact_id == 2:
        expected = comb(len(r.Y1), 2) + len(r.Y1) * len(r.Y2)
        counts = {"lines": len(fy1y), "expected": expected}
        checks.append(check("fact2.count", len(fy1y) == expected, **counts))
        viol = signature_violations(fy1y, {"Y": GENS, "XY": at_least(1), "XZ": EMPTY}, m)
        checks.append(check("fact2.signature", not viol, violations=viol))
        shared = fxx.distinct & fy1y.distinct
        checks.append(check("fact2.disjoint_from_F_X'X'", not shared, shared=[_set(s) for s in shared]))
        return FactReport(2, side, _rollup(checks), counts, checks)

    if fact_id == 3:
        pinned = min(r.XY)
        f3 = _family_or_empty(d, r, FamilySpec("F_XYZ(pinned)", "XY", "Z", pinned=pinned))
        counts = {"lines": len(f3), "expected_at_least": len(r.Z), "pinned": pinned}
        checks.append(check("fact3.count", len(f3) >= len(r.Z), **counts))
        viol = signature_violations(f3, {"Z": GEN_B, "Y": ALL, "XY": at_least(1)}, m)
        checks.append(check("fact3.signature", not viol, violations=viol))
        shared = fxx.distinct & f3.distinct
        checks.append(check("fact3.disjoint_from_F_X'X'", not shared, shared=[_set(s) for s in shared]))
        if len(r.Y) >= 3:
            shared = fy1y.distinct & f3.distinct
            checks.append(check("fact3.disjoint_from_F_Y1Y", not shared, shared=[_set(s) for s in shared]))
        else:
            checks.append(vacuous("fact3.disjoint_from_F_Y1Y", "|Y| < 3"))
        return FactReport(3, side, _rollup(checks), counts, checks)

    # fact 4
    if universal is None:
        full = g.full_mask
        universal = any(line_mask(d, u, v) == full for u, v in combinations(range(g.n), 2))
    if universal:
        return FactReport(4, side, VACUOUS, {}, [vacuous("fact4", "g has a universal line")])
    fyz = _family_or_empty(d, r, FamilySpec("F_YZ", "Y", "Z"))
    counts = {"lines": len(fyz), "expected_at_least": 2}
    checks.append(check("fact4.count", len(fyz) >= 2, **counts))
    viol = signature_violations(fyz, {"XY": ALL, "Y": ALL, "Z": ALL}, m)
    checks.append(check("fact4.signature", not viol, violations=viol))
    return FactReport(4, side, _rollup(checks), counts, checks)


# ----------------------------------------------------------------------
# X_0: a largest part of X_Y at mutual distance 2
# ----------------------------------------------------------------------

def compute_X0(g: Graph, r: RefinedPartition, d: Optional[DistanceMatrix] = None) -> frozenset[int]:
    """Largest subset of X_Y with all pairwise distances 2; ties to the smallest mask."""
    if not r.XY:
        raise GraphError("compute_X0 needs X_Y nonempty")
    if d is None:
        d = all_pairs_distances(g)
    xs = sorted(r.XY)
    best: tuple[int, int] = (0, 0)  # (-size, mask)
    for k in range(len(xs), 0, -1):
        for subset in combinations(xs, k):
            if all(d(u, v) == 2 for u, v in combinations(subset, 2)):
                mask = sum(1 << v for v in subset)
                if best == (0, 0) or (-k, mask) < best:
                    best = (-k, mask)
        if best != (0, 0):
            break
    return frozenset(bits(best[1]))


def check_X0_bound(g: Graph, r: RefinedPartition, d: Optional[DistanceMatrix] = None) -> bool:
    """|X0| >= ceil(2|X_Y|/|Y|) and C(|X0|,2) + C(|Y|,2) >= |X_Y| + |Y| - 1.

    When |X_Y| = |Y| = 3 the argument forces |X0| = 3, which is asserted too.
    """
    if r.XZ or r.Y2 or not r.XY:
        raise GraphError("check_X0_bound needs X_Z and Y2 empty and X_Y nonempty")
    return x0_bound_holds(len(compute_X0(g, r, d)), len(r.XY), len(r.Y))


def x0_bound_holds(x0: int, nxy: int, ny: int) -> bool:
    """The counting part of check_X0_bound, on sizes only."""
    if nxy == 3 and ny == 3 and x0 != 3:
        return False
    return x0 >= ceil_div(2 * nxy, ny) and comb(x0, 2) + comb(ny, 2) >= nxy + ny - 1


# ----------------------------------------------------------------------
# Tables of families
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    spec: FamilySpec
    signature: dict
    bound: int
    exact: bool = False
    bound_needs_no_universal: bool = False


def table1_rows(r: RefinedPartition) -> list[TableRow]:
    s = {k: len(getattr(r, k)) for k in ("Xp", "XY", "XZ", "Y1", "Y2", "Z1", "Z2", "Y", "Z")}
    return [
        TableRow(FamilySpec("F_X'X'", "Xp", "Xp"), {"Xp": GENS, "XY": EMPTY, "XZ": EMPTY},
                 comb(s["Xp"], 2), exact=True),
        TableRow(FamilySpec("F_Y1Y", "Y1", "Y"), {"XY": at_least(1), "Y": GENS, "Z": ALL, "XZ": EMPTY},
                 comb(s["Y1"], 2) + s["Y1"] * s["Y2"], exact=True),
        TableRow(FamilySpec("F_XYZ", "XY", "Z"), {"XY": at_least(1), "Y": ALL, "Z": GEN_B}, s["Z"]),
        TableRow(FamilySpec("F_Z1Z", "Z1", "Z"), {"XY": EMPTY, "Y": ALL, "Z": GENS, "XZ": at_least(1)},
                 comb(s["Z1"], 2) + s["Z1"] * s["Z2"], exact=True),
        TableRow(FamilySpec("F_XZY", "XZ", "Y"), {"Y": GEN_B, "Z": ALL, "XZ": at_least(1)}, s["Y"]),
        TableRow(FamilySpec("F_XYXZ", "XY", "XZ"),
                 {"XY": GEN_A, "Y": at_least(2), "Z": at_least(2), "XZ": GEN_B},
                 s["XY"] * s["XZ"]),
    ]


def table2_rows(r: RefinedPartition) -> list[TableRow]:
    s = {k: len(getattr(r, k)) for k in ("Xp", "XY", "Y1", "Y2", "Z")}
    return [
        TableRow(FamilySpec("F_X'X'", "Xp", "Xp"), {"Xp": GENS, "XY": EMPTY}, comb(s["Xp"], 2), exact=True),
        TableRow(FamilySpec("F_Y1Y", "Y1", "Y"), {"XY": at_least(1), "Y": GENS, "Z": ALL},
                 comb(s["Y1"], 2) + s["Y1"] * s["Y2"], exact=True),
        TableRow(FamilySpec("F_XYZ", "XY", "Z"), {"XY": at_least(1), "Y": ALL, "Z": GEN_B}, s["Z"]),
        TableRow(FamilySpec("F_XYY2", "XY", "Y2"), {"XY": GEN_A, "Y1": at_least(2), "Y2": GEN_B, "Z": ALL},
                 s["XY"] * s["Y2"], exact=True),
    ]


def table3_rows(r: RefinedPartition, x0_size: int) -> list[TableRow]:
    # The middle row's generators are pairs inside X_0 (its printed label names
    # an undefined class; its count C(|X_0|, 2) and the text fix the meaning).
    s = {k: len(getattr(r, k)) for k in ("Xp", "Y", "Z")}
    return [
        TableRow(FamilySpec("F_X'X'", "Xp", "Xp"), {"Xp": GENS, "X0": EMPTY, "XY": EMPTY},
                 comb(s["Xp"], 2), exact=True),
        TableRow(FamilySpec("F_YY", "Y", "Y"), {"XY": at_least(1), "Y": GENS, "Z": ALL}, comb(s["Y"], 2),
                 exact=True),
        TableRow(FamilySpec("F_X0X0", "X0", "X0"), {"X0": GENS, "Y": at_least(1), "Z": EMPTY},
                 comb(x0_size, 2), exact=True),
        TableRow(FamilySpec("F_YZ", "Y", "Z"), {"XY": ALL, "Y": ALL, "Z": ALL}, 2,
                 bound_needs_no_universal=True),
        TableRow(FamilySpec("F_XYZ", "XY", "Z"), {"XY": at_least(1), "Y": ALL, "Z": GEN_B}, s["Z"]),
    ]


@dataclass
class RowResult:
    row: str
    signature_ok: bool
    count: int
    bound: int
    exact: bool
    bound_ok: Optional[bool]
    violations: list

    def to_json(self) -> dict:
        return {"row": self.row, "signature_ok": self.signature_ok, "count": self.count,
                "bound": self.bound, "exact": self.exact, "bound_ok": self.bound_ok,
                "violations": self.violations}


@dataclass
class TableReport:
    table: int
    case: str
    status: str
    hypotheses: dict
    rows: list[RowResult]
    checks: list[Check]
    counted: int = 0
    exhibited: int = 0
    universal: Optional[tuple[int, int]] = None

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict:
        return {"table": self.table, "case": self.case, "status": self.status,
                "hypotheses": self.hypotheses, "rows": [r.to_json() for r in self.rows],
                "checks": [c.to_json() for c in self.checks], "counted": self.counted,
                "exhibited": self.exhibited,
                "universal": list(self.universal) if self.universal else None}


def one_sided_hypotheses(g: Graph, r: RefinedPartition) -> dict[str, bool]:
    """Standing assumptions once X_Y is nonempty (Y side only)."""
    y = r.masks["Y"]
    return {
        "nofull_XY": all(g.adj[v] & y != y for v in r.XY),
        "Y1_at_least_2": len(r.Y1) >= 2,
        "XY_min_degree_2": all(g.degree(v) >= 2 for v in r.XY),
        "Y_at_least_3": len(r.Y) >= 3,
    }


def table_hypotheses(g: Graph, r: RefinedPartition, table: int) -> dict[str, bool]:
    hyps = {"Xp_Y_Z_nonempty": bool(r.Xp and r.Y and r.Z)}
    hyps.update(one_sided_hypotheses(g, r))
    if table == 1:
        mirror = one_sided_hypotheses(g, r.mirrored())
        hyps.update({k.replace("XY", "XZ").replace("Y1", "Z1").replace("Y_", "Z_"): v
                     for k, v in mirror.items()})
    return hyps


_TABLE_CASES = {
    1: {Case.BOTH_NONEMPTY},
    2: {Case.XZ_EMPTY_Y2_BIG, Case.XZ_EMPTY_Y2_SINGLETON},
    3: {Case.XZ_EMPTY_Y2_EMPTY},
}


def _union(families: Iterable[LineFamily]) -> set[int]:
    out: set[int] = set()
    for f in families:
        out |= f.distinct
    return out


def verify_case_table(
    g: Graph,
    r: RefinedPartition,
    table: int,
    d: Optional[DistanceMatrix] = None,
    lines: Optional[dict[tuple[int, int], int]] = None,
) -> TableReport:
    """Build each row's family, check signatures, counts, pairwise disjointness and
    that the lines found reach n (with the extra lines each subcase supplies).

    r must already be normalized (X_Y nonempty whenever some one-sided X part is).
    ``lines`` maps all generator pairs to member masks; computed when omitted.
    """
    tag = classify_case(r)
    if tag.mirrored:
        raise GraphError("verify_case_table expects a normalized partition (X_Y nonempty)")
    if tag.case not in _TABLE_CASES.get(table, ()):
        raise GraphError(f"case {tag.case.value} does not match table {table}")
    if d is None:
        d = all_pairs_distances(g)
    if lines is None:
        lines = {(u, v): line_mask(d, u, v) for u, v in combinations(range(g.n), 2)}
    full = g.full_mask
    universal_pairs = sorted(p for p, m in lines.items() if m == full)
    universal = universal_pairs[0] if universal_pairs else None
    n = g.n

    hyps = table_hypotheses(g, r, table)
    report = TableReport(table, tag.case.value, VACUOUS, hyps, [], [])
    if not all(hyps.values()):
        report.checks.append(vacuous("table", "standing hypotheses unmet",
                                     unmet=sorted(k for k, v in hyps.items() if not v)))
        return report

    masks = dict(r.masks)
    extra: dict[str, int] = {}
    if table == 3:
        x0 = compute_X0(g, r, d)
        extra["X0"] = masks["X0"] = sum(1 << v for v in x0)
        report.checks.append(check("X0_bound", check_X0_bound(g, r, d), X0=sorted(x0),
                                   ceil=ceil_div(2 * len(r.XY), len(r.Y))))
        rows = table3_rows(r, len(x0))
    else:
        rows = table1_rows(r) if table == 1 else table2_rows(r)

    families: dict[str, LineFamily] = {}
    for row in rows:
        fam = _family_or_empty(d, r, row.spec, extra)
        families[row.spec.name] = fam
        viol = signature_violations(fam, row.signature, masks)
        if row.bound_needs_no_universal and universal:
            bound_ok = None
        elif row.exact:
            bound_ok = len(fam) == row.bound
        else:
            bound_ok = len(fam) >= row.bound
        report.rows.append(RowResult(row.spec.name, not viol, len(fam), row.bound, row.exact,
                                     bound_ok, viol))

    # Pairwise disjointness; collisions the argument tolerates are skipped.
    tolerated: set[frozenset[str]] = set()
    z_single = len(r.Z) == 1
    if table == 3 and z_single:
        tolerated.add(frozenset({"F_YZ", "F_XYZ"}))
    bad_degree_y2 = [b for b in sorted(r.Y2) if g.degree(b) < 2]
    if table == 2 and bad_degree_y2:
        tolerated.add(frozenset({"F_XYY2", "F_XYZ"}))
        report.checks.append(vacuous("disjoint:F_XYY2/F_XYZ", "a Y2 vertex has degree 1",
                                     vertices=bad_degree_y2))
        # its edge is a bridge, whose line is universal
        report.checks.append(check("Y2_leaf_gives_universal", universal is not None))
    names = list(families)
    for p, q in combinations(names, 2):
        if frozenset({p, q}) in tolerated:
            continue
        shared = families[p].distinct & families[q].distinct
        report.checks.append(check(f"disjoint:{p}/{q}", not shared, shared=[_set(s) for s in shared]))

    if table == 1:
        counted = sum(row.bound for row in rows)
        exhibited, relies = _union(families.values()), False
    elif table == 2:
        counted, exhibited, relies = _table2_completion(g, r, d, lines, rows, families, universal, report)
    else:
        counted, exhibited, relies = _table3_completion(g, r, d, lines, rows, families, universal, report)

    report.counted = counted
    report.exhibited = len(exhibited)
    report.universal = universal
    if relies and universal:
        report.checks.append(Check("reaches_n", PASS, {"universal": list(universal)}))
    else:
        report.checks.append(check("counted>=n", counted >= n, counted=counted, n=n))
        report.checks.append(check("exhibited>=n", len(exhibited) >= n, exhibited=len(exhibited), n=n))
    row_fail = any(not rr.signature_ok or rr.bound_ok is False for rr in report.rows)
    report.status = FAIL if row_fail or any(c.failed for c in report.checks) else PASS
    return report


def _table2_completion(g, r, d, lines, rows, families, universal, report):
    n = g.n
    nXp, nY1, nY2, nXY, nZ = len(r.Xp), len(r.Y1), len(r.Y2), len(r.XY), len(r.Z)
    base = nXp + nY1 + nY2 + nXY + nZ
    bound_sum = sum(row.bound for row in rows)
    four = _union(families.values())
    if nY2 >= 2:
        closed = base + (nY1 + nY2 - 3)
        report.checks.append(check("bound_sum>=closed_form", bound_sum >= closed,
                                   bound_sum=bound_sum, closed_form=closed))
        report.checks.append(check("closed_form>=n", closed >= n, closed_form=closed, n=n))
        return bound_sum, four, False
    # |Y2| = 1: the families fall at most one line short
    closed = base + (nY1 + nY2 - 4)
    report.checks.append(check("bound_sum>=closed_form", bound_sum >= closed,
                               bound_sum=bound_sum, closed_form=closed))
    report.checks.append(check("closed_form>=n-1", closed >= n - 1, closed_form=closed, n=n))
    if nZ == 1:
        z = min(r.Z)
        all_through_z = all(m >> z & 1 for m in four)
        report.checks.append(check("Z_singleton:families_contain_z", all_through_z, z=z))
        if universal:
            report.checks.append(vacuous("Z_singleton:extra_line", "g has a universal line"))
            return bound_sum, four, True
        avoiding = sorted((p for p, m in lines.items() if not m >> z & 1))
        report.checks.append(check("Z_singleton:extra_line", bool(avoiding),
                                   pair=list(avoiding[0]) if avoiding else None))
        extra = {lines[avoiding[0]]} if avoiding else set()
        return bound_sum + len(extra), four | extra, True
    need = r.masks["XY"] | r.masks["Y"] | r.masks["Z"]
    if nXY >= 2:
        none_full = not any(m & need == need for m in four)
        report.checks.append(check("XY_big:no_family_line_contains_XY_Y_Z", none_full))
        y, z = min(r.Y), min(r.Z)
        yz = lines[(min(y, z), max(y, z))]
        report.checks.append(check("XY_big:edge_line_contains_XY_Y_Z", yz & need == need, pair=[y, z]))
        return bound_sum + 1, four | {yz}, False
    # |X_Y| = 1, |Z| >= 2: three families plus two lines through a Y-Z edge
    three = _union(rows_of(families, "F_X'X'", "F_Y1Y", "F_XYZ"))
    three_sum = sum(row.bound for row in rows if row.spec.name != "F_XYY2")
    closed3 = nXp + nY1 + nZ + (nY1 - 2)
    report.checks.append(check("XY_single:three_sum>=closed_form", three_sum >= closed3,
                               three_sum=three_sum, closed_form=closed3))
    report.checks.append(check("XY_single:closed_form>=n-2", closed3 >= n - 2, closed_form=closed3, n=n))
    report.checks.append(check("XY_single:no_family_line_contains_XY_Y_Z",
                               not any(m & need == need for m in three)))
    if universal:
        report.checks.append(vacuous("XY_single:two_YZ_lines", "g has a universal line"))
        return three_sum, three, True
    fyz = _family(d, FamilySpec("F_YZ", "Y", "Z"), r.masks["Y"], r.masks["Z"])
    report.checks.append(check("XY_single:two_YZ_lines", len(fyz) >= 2, lines=len(fyz)))
    return three_sum + 2, three | fyz.distinct, True


def rows_of(families: dict[str, LineFamily], *names: str) -> list[LineFamily]:
    return [families[k] for k in names]


def _table3_completion(g, r, d, lines, rows, families, universal, report):
    nXY, nY, nZ = len(r.XY), len(r.Y), len(r.Z)
    x0 = report.checks[0].detail["X0"]
    smart = comb(len(x0), 2) + comb(nY, 2) >= nXY + nY - 1
    report.checks.append(check("X0_inequality", smart, X0=len(x0), XY=nXY, Y=nY))
    if nXY == 3 and nY == 3:
        report.checks.append(check("XY=Y=3:X0_is_XY", len(x0) == 3, X0=x0))
    if nZ >= 2:
        return sum(row.bound for row in rows), _union(families.values()), True
    # |Z| = 1: drop the last row and add one line through X' and X_Y
    first4 = rows_of(families, "F_X'X'", "F_YY", "F_X0X0", "F_YZ")
    counted = sum(row.bound for row in rows[:4])
    if universal:
        report.checks.append(vacuous("Z_singleton:extra_line", "g has a universal line"))
        return counted, _union(first4), True
    found = None
    x0_mask = sum(1 << v for v in x0)
    seen = _union(first4)
    for xp in sorted(r.Xp):
        for x in sorted(r.XY):
            if d(x, xp) != 2:
                continue
            m = lines[(min(x, xp), max(x, xp))]
            if (m & r.masks["Xp"] == 1 << xp and popcount(m & x0_mask) <= 1
                    and not m & r.masks["Z"] and m not in seen):
                found = (x, xp, m)
                break
        if found:
            break
    report.checks.append(check("Z_singleton:extra_line", found is not None,
                               pair=[found[0], found[1]] if found else None))
    exhibited = seen | ({found[2]} if found else set())
    return counted + (1 if found else 0), exhibited, True
