"""Marked points, incidence, integer homology, and the QHD verdict.

An arrangement is a wiring diagram plus free marked points per component;
every intersection element (multipoint) is a marked point as well.  The
incidence matrix records, for each component and marked point, how many of
the component's strands pass through the point; a component meets its own
node twice.  Over the integers:

    b2 = #points - rank(incidence)      (kernel)
    H1 torsion = invariant factors > 1  (cokernel)
    b1 = 0 by hypothesis (rational singularity), recorded not computed

The arrangement certifies as a rational homology disk when the marked
point count equals the component count, weights and pairwise linking match
the reference germ, and b2 = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import wiring
from .boundary import boundary_data
from .wiring import WiringDiagram, check, expand_macros


@dataclass(frozen=True)
class Arrangement:
    diagram: WiringDiagram
    free_points: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "free_points", tuple(sorted((str(c), int(f)) for c, f in dict(self.free_points).items()))
        )

    def free_map(self) -> dict[str, int]:
        return dict(self.free_points)


def arrangement(d: WiringDiagram, free_points: Mapping[str, int] | None = None) -> Arrangement:
    free = dict(free_points or {})
    names = {name for name, _ in d.comps}
    for c, f in free.items():
        if c not in names:
            raise ValueError(f"free points on unknown component {c!r}")
        if f < 0:
            raise ValueError(f"negative free point count on {c}")
    for name in names:
        free.setdefault(name, 0)
    return Arrangement(d, tuple(free.items()))


def arrangement_to_json(a: Arrangement) -> dict:
    return {
        "diagram": wiring.diagram_to_json(a.diagram),
        "free_points": {c: f for c, f in a.free_points},
    }


def arrangement_from_json(data: Mapping) -> Arrangement:
    try:
        d = wiring.diagram_from_json(data["diagram"])
        free = {str(c): int(f) for c, f in data.get("free_points", {}).items()}
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"bad arrangement payload: {exc}") from exc
    return arrangement(d, free)


# ---------------------------------------------------------------------------
# incidence


def intersection_profiles(d: WiringDiagram) -> list[dict[str, int]]:
    """Component multiplicities at each multipoint, in expanded order."""
    check(d)
    chart = d.chart()
    out = []
    expanded = expand_macros(d)
    state = tuple(range(1, d.strands + 1))
    for e in expanded.elements:
        if isinstance(e, wiring.I):
            profile: dict[str, int] = {}
            for p in range(e.i, e.j + 1):
                c = chart[state[p - 1]]
                profile[c] = profile.get(c, 0) + 1
            out.append(profile)
        state = wiring.element_permute(state, e)
    return out


@dataclass(frozen=True)
class IncidenceMatrix:
    components: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    point_count: int

    def weight(self, name: str) -> int:
        return sum(self.rows[self.components.index(name)])


def incidence(a: Arrangement) -> IncidenceMatrix:
    """Rows by component (sorted), intersection columns in diagram order,
    then one unit column per free point grouped by component name."""
    names = tuple(sorted(name for name, _ in a.diagram.comps))
    profiles = intersection_profiles(a.diagram)
    free = a.free_map()
    columns: list[dict[str, int]] = list(profiles)
    for c in sorted(free):
        columns.extend({c: 1} for _ in range(free[c]))
    rows = tuple(
        tuple(col.get(name, 0) for col in columns) for name in names
    )
    return IncidenceMatrix(names, rows, len(columns))


def weights(a: Arrangement) -> dict[str, int]:
    """Marked points on each component, counted with multiplicity."""
    m = incidence(a)
    return {name: sum(row) for name, row in zip(m.components, m.rows)}


# ---------------------------------------------------------------------------
# exact integer Smith normal form


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _mat_mul(a, b):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    cols = len(b[0])
    return [
        [sum(a[i][t] * b[t][j] for t in range(len(b))) for j in range(cols)]
        for i in range(len(a))
    ]


def determinant(m) -> int:
    """Exact integer determinant by fraction-free elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for r in range(t + 1, n):
                if a[r][t] != 0:
                    a[t], a[r] = a[r], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(t + 1, n):
            for c in range(t + 1, n):
                a[r][c] = (a[r][c] * a[t][t] - a[r][t] * a[t][c]) // prev
            a[r][t] = 0
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


class SmithVerificationError(RuntimeError):
    """The factorization self-check failed; indicates a library bug."""


def smith_normal_form(matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """U, D, V with U*M*V = D, U and V unimodular, D diagonal with the
    divisibility chain d1 | d2 | ...; verified before returning."""
    rows = [list(map(int, r)) for r in matrix]
    r = len(rows)
    c = len(rows[0]) if rows else 0
    for row in rows:
        if len(row) != c:
            raise ValueError("ragged matrix")
    m = [row[:] for row in rows]
    u = _identity(r)
    v = _identity(c)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        m[dst] = [x + q * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, q):
        for row in m:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(r, c):
        # smallest nonzero entry in the remaining block becomes the pivot
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        if m[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, r):
            if m[i][t]:
                q = m[i][t] // m[t][t]
                add_row(t, i, -q)
                if m[i][t]:
                    dirty = True
        for j in range(t + 1, c):
            if m[t][j]:
                q = m[t][j] // m[t][t]
                add_col(t, j, -q)
                if m[t][j]:
                    dirty = True
        if dirty:
            continue  # remainders became new smaller entries; repick pivot
        # divisibility: pivot must divide everything below-right
        fixed = True
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if m[i][j] % m[t][t]:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            t += 1

    diag = [m[i][i] for i in range(min(r, c))]
    product = _mat_mul(_mat_mul(u, rows), v)
    if product != m:
        raise SmithVerificationError("U*M*V mismatch")
    for i in range(r):
        for j in range(c):
            if i != j and m[i][j]:
                raise SmithVerificationError("result not diagonal")
    for a_, b_ in zip(diag, diag[1:]):
        if b_ and (a_ == 0 or b_ % a_):
            raise SmithVerificationError("divisibility chain broken")
        if a_ < 0 or b_ < 0:
            raise SmithVerificationError("negative diagonal")
    if abs(determinant(u)) != 1 or abs(determinant(v)) != 1:
        raise SmithVerificationError("transforms not unimodular")
    return u, m, v


def invariant_factors(matrix) -> list[int]:
    _, d, _ = smith_normal_form(matrix)
    out = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    return [x for x in out if x]


# ---------------------------------------------------------------------------
# homology and the QHD verdict


@dataclass(frozen=True)
class HomologyReport:
    b1: int
    b1_note: str
    b2: int
    h1_torsion: tuple[int, ...]
    points: int
    disks: int
    rank: int
    weights: tuple[tuple[str, int], ...]

    def to_json(self) -> dict:
        return {
            "b1": self.b1,
            "b1_note": self.b1_note,
            "b2": self.b2,
            "torsion": list(self.h1_torsion),
            "points": self.points,
            "disks": self.disks,
            "rank": self.rank,
            "weights": dict(self.weights),
        }


def homology(a: Arrangement) -> HomologyReport:
    m = incidence(a)
    factors = invariant_factors(m.rows) if m.rows else []
    rank = len(factors)
    return HomologyReport(
        b1=0,
        b1_note="by hypothesis (rational singularity)",
        b2=m.point_count - rank,
        h1_torsion=tuple(f for f in factors if f > 1),
        points=m.point_count,
        disks=len(m.components),
        rank=rank,
        weights=tuple((name, sum(row)) for name, row in zip(m.components, m.rows)),
    )


@dataclass(frozen=True)
class QhdVerdict:
    ok: bool
    reasons: tuple[str, ...]
    report: HomologyReport

    def to_json(self) -> dict:
        data = self.report.to_json()
        data["verdict"] = self.ok
        data["reasons"] = list(self.reasons)
        return data


def qhd_check(a: Arrangement, germ) -> QhdVerdict:
    """Certify ``a`` against a germ carrying .weights and .pairwise dicts.

    The verdict is true when the marked point count equals the disk count,
    weights and pairwise linking match the germ, and b2 = 0.  A rank drop
    on a weight-matching arrangement is an error, not a false verdict.
    """
    names = sorted(name for name, _ in a.diagram.comps)
    germ_weights = dict(germ.weights)
    if sorted(germ_weights) != names:
        raise ValueError(
            f"component names {names} do not match germ {sorted(germ_weights)}"
        )
    report = homology(a)
    reasons = []
    if report.points != report.disks:
        reasons.append(f"marked points {report.points} != disks {report.disks}")
    got_weights = dict(report.weights)
    weights_ok = True
    for name in names:
        if got_weights[name] != germ_weights[name]:
            reasons.append(
                f"weight of {name}: {got_weights[name]} != germ {germ_weights[name]}"
            )
            weights_ok = False
    data = boundary_data(a.diagram)
    pairwise = dict(germ.pairwise)
    for (x, y), want in sorted(pairwise.items()):
        got = data.linking.entry(x, y)
        if got != want:
            reasons.append(f"linking {x}-{y}: {got} != germ {want}")
    if report.b2 != 0:
        reasons.append(f"b2 = {report.b2} != 0")
    if weights_ok and report.rank < report.disks:
        raise ValueError(
            f"incidence rank {report.rank} below disk count {report.disks} "
            "on a weight-matching arrangement"
        )
    return QhdVerdict(not reasons, tuple(reasons), report)
