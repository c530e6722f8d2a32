"""Generators for a two-parameter family of disk arrangements.

The family is indexed by integers k >= -1 and n >= 1.  Its reference data
(``germ_data``) lists k+6 branches of weight 7+k, n branches of weight
7+k+n, and the pairwise intersection multiplicities between them.  For
n = 1 two diagram generators are provided: ``scott_diagram`` builds the
initial deformation with 2m marked points (m = k+7), and ``qhd_diagram``
builds the target arrangement with m marked points, whose certificate is
``homology.qhd_check``.  ``qhd_script`` emits the move sequence
connecting them; replaying it with ``moves.run_script`` re-verifies every
step.

Every generator is self-certifying: its output must pass the weight and
linking gates against the germ table or generation fails loudly."""

from __future__ import annotations

from dataclasses import dataclass

from . import homology, wiring
from .boundary import boundary_data
from .homology import Arrangement, arrangement, intersection_profiles, qhd_check
from .moves import MoveInstance, apply
from .wiring import I, S, T, TN, WiringDiagram, X


class FamilyError(ValueError):
    """Bad family parameters or an unsupported generator branch."""


class FamilyGateError(RuntimeError):
    """A generated diagram failed its own weight or linking gates."""


# ---------------------------------------------------------------------------
# germ reference data


@dataclass(frozen=True)
class GermData:
    """Branch weights and pairwise multiplicities for parameters (k, n)."""

    k: int
    n: int
    blues: tuple[str, ...]
    reds: tuple[str, ...]
    weights: tuple[tuple[str, int], ...]
    pairwise: tuple[tuple[tuple[str, str], int], ...]

    def weight_map(self) -> dict[str, int]:
        return dict(self.weights)

    def pairwise_map(self) -> dict[tuple[str, str], int]:
        return dict(self.pairwise)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "blues": list(self.blues),
            "reds": list(self.reds),
            "weights": dict(self.weights),
            "pairwise": [[list(pair), mult] for pair, mult in self.pairwise],
        }


def germ_data(k: int, n: int = 1) -> GermData:
    """Reference table: k+6 blue branches, n red branches.

    Blue weight 7+k, red weight 7+k+n; multiplicities blue-blue 8+k,
    red-red 8+k+n, red-blue 7+k."""
    if k < -1:
        raise FamilyError(f"k must be >= -1, got {k}")
    if n < 1:
        raise FamilyError(f"n must be >= 1, got {n}")
    blues = tuple(f"C{i}" for i in range(1, k + 7))
    reds = tuple(f"D{i}" for i in range(1, n + 1))
    weights = tuple((c, 7 + k) for c in blues) + tuple((c, 7 + k + n) for c in reds)
    pairwise = []
    names = blues + reds
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            x, y = names[a], names[b]
            if x in blues and y in blues:
                mult = 8 + k
            elif x in reds and y in reds:
                mult = 8 + k + n
            else:
                mult = 7 + k
            pairwise.append(((x, y), mult))
    return GermData(k, n, blues, reds, weights, tuple(pairwise))


# ---------------------------------------------------------------------------
# generated arrangements


@dataclass(frozen=True)
class FamilyDiagram:
    """A generated arrangement together with the germ it certifies against."""

    germ: GermData
    arrangement: Arrangement
    origin: str  # "scott" | "qhd" | "user"

    @property
    def diagram(self) -> WiringDiagram:
        return self.arrangement.diagram

    def to_json(self) -> dict:
        return {
            "origin": self.origin,
            "germ": self.germ.to_json(),
            "arrangement": homology.arrangement_to_json(self.arrangement),
        }


def check_gates(fam: FamilyDiagram) -> list[str]:
    """Weight and pairwise-linking mismatches against the germ, if any."""
    wiring.check(fam.diagram)
    problems = []
    got_weights = homology.weights(fam.arrangement)
    want_weights = fam.germ.weight_map()
    if sorted(got_weights) != sorted(want_weights):
        return [
            f"component names {sorted(got_weights)} != germ {sorted(want_weights)}"
        ]
    for name in sorted(want_weights):
        if got_weights[name] != want_weights[name]:
            problems.append(
                f"weight of {name}: {got_weights[name]} != {want_weights[name]}"
            )
    data = boundary_data(fam.diagram)
    for (x, y), want in fam.germ.pairwise:
        got = data.linking.entry(x, y)
        if got != want:
            problems.append(f"linking {x}-{y}: {got} != {want}")
    return problems


def _gate(fam: FamilyDiagram) -> FamilyDiagram:
    problems = check_gates(fam)
    if problems:
        raise FamilyGateError(
            f"{fam.origin} generator k={fam.germ.k}: " + "; ".join(problems)
        )
    return fam


def _scott_comps(m: int) -> tuple[tuple[str, tuple[int, int]], ...]:
    # nested strand pairs (j, 2m+1-j); the red branch owns the pair whose
    # top strand stays out of the small multipoint, which depends on parity
    red_j = m if m % 2 == 0 else 1
    comps = [("D1", (red_j, 2 * m + 1 - red_j))]
    blue = 0
    for j in range(1, m + 1):
        if j == red_j:
            continue
        blue += 1
        comps.append((f"C{blue}", (j, 2 * m + 1 - j)))
    return tuple(comps)


def _qhd_comps(m: int) -> tuple[tuple[str, tuple[int, int]], ...]:
    # the move script ends by straightening the edge braiding, which
    # reverses the seating of each half; the red branch ends up outermost
    comps = [("D1", (1, 2 * m))]
    for j in range(2, m + 1):
        comps.append((f"C{m + 1 - j}", (j, 2 * m + 1 - j)))
    return tuple(comps)


def scott_diagram(k: int) -> FamilyDiagram:
    """Initial deformation for (k, 1): one nest, 2m marked points.

    Free points: one per blue branch, three on the red branch."""
    germ = germ_data(k, 1)
    m = k + 7
    eps = m % 2
    elements = (
        [TN(1, 2 * m), I(m + 1 + eps, 2 * m - 1 + eps)]
        + [I(m + 1, 2 * m)] * (m - 4)
        + [I(1, 2 * m)]
    )
    d = WiringDiagram(2 * m, _scott_comps(m), tuple(elements))
    free = {c: 1 for c in germ.blues}
    free["D1"] = 3
    fam = FamilyDiagram(germ, arrangement(d, free), "scott")
    return _gate(fam)


def qhd_diagram(k: int, allow_experimental: bool = False) -> FamilyDiagram:
    """Target arrangement for (k, 1): m marked points, no free points.

    The red branch carries an isolated node I(m, m+1); every other marked
    point joins m strands.  For odd m the generator is a conjectural
    pattern and is refused unless ``allow_experimental`` is set."""
    germ = germ_data(k, 1)
    m = k + 7
    if m % 2 == 1:
        if not allow_experimental:
            raise FamilyError(
                f"generator for k={k} (odd pattern) is experimental; "
                "pass allow_experimental to emit it anyway"
            )
        elements = (
            [TN(2, 2 * m - 1)]
            + [S(t, -1) for t in range(1, m)]
            + [S(t, -1) for t in range(2 * m - 1, m, -1)]
            + [I(m, m + 1), S(m, 1), S(m - 1, -1), T(m + 1)]
            + [I(c, c + m) for c in range(1, m - 1)]
            + [I(m, 2 * m)]
        )
    else:
        elements = (
            [TN(2, 2 * m - 1)]
            + [S(t, -1) for t in range(2 * m - 1, m, -1)]
            + [S(t, -1) for t in range(1, m)]
            + [I(m, m + 1), S(m - 1, 1), S(m, -1), T(m - 1), I(m, 2 * m)]
            + [I(c, c + m) for c in range(m - 2, 0, -1)]
        )
    d = WiringDiagram(2 * m, _qhd_comps(m), tuple(elements))
    fam = FamilyDiagram(germ, arrangement(d, {}), "qhd")
    _gate(fam)
    profiles = intersection_profiles(d)
    if len(profiles) != m:
        raise FamilyGateError(
            f"qhd generator k={k}: {len(profiles)} marked points, want {m}"
        )
    if profiles[0] != {"D1": 2}:
        raise FamilyGateError(
            f"qhd generator k={k}: isolated node lies on {sorted(profiles[0])}, "
            "want the red branch"
        )
    verdict = qhd_check(fam.arrangement, germ)
    if not verdict.ok:
        raise FamilyGateError(
            f"qhd generator k={k}: " + "; ".join(verdict.reasons)
        )
    return fam


# ---------------------------------------------------------------------------
# the move script connecting them


def qhd_script(k: int) -> list[MoveInstance]:
    """Move sequence rewriting scott_diagram(k) into qhd_diagram(k).

    Only the even-m branch has a script.  The returned instances replay
    under run_script with every step verified; the builder itself applies
    them unverified just to track positions."""
    m = k + 7
    if m % 2 == 1:
        raise FamilyError(f"no move script for k={k} (odd pattern)")
    cur = scott_diagram(k).diagram
    script: list[MoveInstance] = []

    def step(kind, pos, params=(), direction="fwd"):
        nonlocal cur
        inst = MoveInstance(kind, pos, tuple(params), direction)
        cur = apply(cur, inst, verify=False).diagram
        script.append(inst)

    q = m - 4
    # split the full multipoint and absorb its bottom block
    p = cur.elements.index(I(1, 2 * m))
    step("M4", p, (0, m - 1))
    step("M7", p + 1)
    step("M2", p + 1, (1, m))
    step("M5", p, (3,), "bwd")
    # commute I(1,m) left past the middle multipoints
    for t in range(q):
        step("M1", p - 1 - t)
    # absorb each middle multipoint into the grid, right to left
    for r in range(1, q + 1):
        c = r + 1
        x = cur.elements.index(X(c, m, 2 * m))
        step("M2", x, (0, c + 1))
        step("M7", x - 1)
        step("M5", x, (1,), "bwd")
    step("M1", 1)
    # slide I(1,m) through the nest; this prepends edge braiding
    step("M11", 0)
    t0 = cur.elements.index(TN(1, 2 * m))
    # transfer one strand between the two remaining multipoints
    step("M5", t0 + 1, (1,))
    step("M5", t0 + 2, (2,), "bwd")
    # absorb the lower multipoint
    x = t0 + 3
    step("M2", x, (0, m - 1))
    step("M7", x - 1)
    step("M5", x, (1,), "bwd")
    # absorb the upper multipoint, leaving an isolated node behind
    x = t0 + 2
    step("M2", x, (0, m))
    step("M2", x, (1, m + 1))
    step("M1", x - 1)
    step("M7", x)
    step("M5", x - 1, (1,), "bwd")
    step("M2", t0 + 4, (1, m))
    step("M1", t0 + 3)
    step("M5", t0 + 4, (1,), "bwd")
    step("M5", t0 + 3, (1,), "bwd")
    # peel the innermost tangency and walk it onto the isolated node
    step("M3", t0)
    step("M9", t0 + 2 * m - 1, (), "bwd")
    step("M1", t0 + 2 * m + 1)
    step("M10", t0 + 2 * m, (m - 1,))
    # merge the leftover double-point strand
    y = t0 + 2 * m + 3
    step("M5", y, (1,))
    step("M2", y, (1, m + 1), "bwd")
    step("M5", y, (2,), "bwd")
    # drop the edge braiding introduced by the nest slide
    for _ in range(m * (m - 1)):
        e = cur.elements[0]
        step("M16", 0, (e.i, e.sign))
    return script


# ---------------------------------------------------------------------------
# comparison up to commutation


def combinatorial_signature(a: Arrangement):
    """Canonical value identifying an arrangement up to element reordering.

    Combines the multiset of marked-point multiplicity profiles with the
    branch weights and free point counts; unchanged under swaps of
    disjoint elements and macro regrouping."""
    profiles = intersection_profiles(a.diagram)
    profile_part = tuple(sorted(tuple(sorted(p.items())) for p in profiles))
    weight_part = tuple(sorted(homology.weights(a).items()))
    return (profile_part, weight_part, a.free_points)
