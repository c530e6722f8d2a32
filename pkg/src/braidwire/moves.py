"""Rewrite moves on wiring diagrams.

Each move replaces a contiguous window of elements by another window while
preserving the boundary braid.  Moves come in three strengths:

    word    front and back braids of the whole diagram are unchanged as
            braid-group elements
    exact   the freely reduced boundary word is unchanged letter for letter
    conj    the boundary braid is conjugated; the move emits the conjugator

A move instance names a catalog kind, the window start, kind-specific
integer parameters, a direction, and optionally a mirror flag.  Backward
direction applies the rewrite right to left (merges undo splits, inserts
undo trims).  A mirrored instance applies the move on the half-turn
rotation of the diagram; its position indexes the rotated element order,
while instance_window reports where its window sits in the unrotated one.

Applying a move verifies its guarantee on the whole diagram and fails hard
when the check fails: a catalog rule violating its own guarantee is a bug,
never a user condition.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterable, Mapping, Sequence

from . import wiring
from .boundary import back, boundary_braid, front
from .braid import (
    BraidWord,
    compose,
    conjugate_check,
    equal,
    free_reduce,
    half_twist,
    invert,
)
from .wiring import (
    Element,
    I,
    S,
    T,
    TN,
    WiringDiagram,
    X,
    mirror_diagram,
    validate,
)


class MoveError(ValueError):
    """The instance does not apply at its position."""


class MoveVerificationError(RuntimeError):
    """A move failed its own guarantee; indicates a library bug."""


@dataclass(frozen=True)
class MoveKind:
    name: str
    title: str
    guarantee: str
    params_doc: str


@dataclass(frozen=True)
class MoveInstance:
    kind: str
    pos: int
    params: tuple[int, ...] = ()
    direction: str = "fwd"
    mirror: bool = False

    def to_json(self) -> dict:
        data = {
            "kind": self.kind,
            "pos": self.pos,
            "params": list(self.params),
            "dir": self.direction,
        }
        if self.mirror:
            data["mirror"] = True
        return data


def instance_from_json(data: Mapping) -> MoveInstance:
    try:
        return MoveInstance(
            kind=str(data["kind"]),
            pos=int(data["pos"]),
            params=tuple(int(x) for x in data.get("params", [])),
            direction=str(data.get("dir", "fwd")),
            mirror=bool(data.get("mirror", False)),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad move payload {data!r}") from exc


@dataclass(frozen=True)
class MoveResult:
    diagram: WiringDiagram
    guarantee: str
    conjugator: BraidWord | None
    verified: bool


# ---------------------------------------------------------------------------
# rewrite rules
#
# Every rule names a pair of element windows (lhs, rhs) plus the forward
# conjugator.  Forward replaces lhs by rhs; backward replaces rhs by lhs
# and inverts the conjugator.  Rule builders read anchor indices from the
# window at the instance position, so one builder serves both directions.


@dataclass(frozen=True)
class Rule:
    lhs: tuple[Element, ...]
    rhs: tuple[Element, ...]
    conjugator: tuple[tuple[int, int], ...] = ()
    # transposition of left-edge positions; straightening a leading
    # crossing re-seats the two strands it swapped
    comp_swap: tuple[int, int] | None = None


def _span(e: Element) -> tuple[int, int]:
    if isinstance(e, I):
        return e.i, e.j
    if isinstance(e, X):
        return e.i, e.k
    if isinstance(e, (T, S)):
        return e.i, e.i + 1
    return e.a, e.b


def _delta_s(a: int, b: int, sign: int) -> tuple[Element, ...]:
    """Half twist on positions a..b as braid-letter elements."""
    letters = half_twist(b, a, b).letters
    if sign < 0:
        return tuple(S(i, -1) for i, _ in reversed(letters))
    return tuple(S(i, 1) for i, _ in letters)


def _nest_after(els: Sequence[Element], pos: int) -> TN | None:
    """The nest reached from ``pos`` across braid letters, if any."""
    for e in els[pos:]:
        if isinstance(e, TN):
            return e
        if not isinstance(e, S):
            return None
    return None


def _m1_rules(d, pos, params, direction):
    if params or pos + 2 > len(d.elements):
        return []
    a, b = d.elements[pos], d.elements[pos + 1]
    (a1, a2), (b1, b2) = _span(a), _span(b)
    if a2 < b1 or b2 < a1:
        # self-inverse: both directions swap the pair in place
        if direction == "fwd":
            return [Rule((a, b), (b, a))]
        return [Rule((b, a), (a, b))]
    return []


def _m2_rules(d, pos, params, direction):
    if len(params) != 2:
        return []
    variant, split = params
    els = d.elements
    e = els[pos] if pos < len(els) else None
    candidates = []
    if isinstance(e, X):
        candidates.append((e.i, e.j, e.k))
        if pos + 2 <= len(els) and isinstance(els[pos + 1], X):
            e2 = els[pos + 1]
            if variant == 0:
                candidates.append((e2.i, e.j, e.k))
            else:
                candidates.append((e.i, e.j, e2.k))
    rules = []
    for i, j, l in candidates:
        if variant == 0:
            ip = split
            if not i < ip <= j:
                continue
            rhs = (X(ip, j, l), X(i, ip - 1, ip + l - j - 1))
        elif variant == 1:
            lp = split
            if not j + 1 <= lp < l:
                continue
            rhs = (X(i, j, lp), X(i + lp - j, lp, l))
        else:
            continue
        rules.append(Rule((X(i, j, l),), rhs))
    return rules


def _m3_rules(d, pos, params, direction):
    if params:
        return []
    spans = set()
    e = d.elements[pos] if pos < len(d.elements) else None
    if isinstance(e, TN):
        if e.b - e.a + 1 >= 4:
            spans.add((e.a, e.b))
        spans.add((e.a - 1, e.b + 1))
    rules = []
    for a, b in sorted(spans):
        n = (b - a + 1) // 2
        if n < 2 or a < 1 or b > d.strands:
            continue
        c = a + n - 1
        tail = [S(a - 1 + u, -1) for u in range(2 * n - 1, n, -1)]
        tail += [S(a - 1 + u, -1) for u in range(1, n)]
        rules.append(Rule((TN(a, b),), (TN(a + 1, b - 1), *tail, T(c))))
    return rules


def _m4_rules(d, pos, params, direction):
    if len(params) != 2:
        return []
    variant, j = params
    els = d.elements
    spans = set()
    e = els[pos] if pos < len(els) else None
    if isinstance(e, I):
        spans.add((e.i, e.j))
    if pos + 3 <= len(els):
        w = els[pos : pos + 3]
        if variant == 0 and isinstance(w[0], I) and isinstance(w[2], X):
            spans.add((w[0].i, w[2].k))
        if variant == 1 and isinstance(w[0], X):
            spans.add((w[0].i, w[0].k))
    rules = []
    for i, k in sorted(spans):
        if not (i < j and j + 1 < k):
            continue
        if variant == 0:
            rhs = (I(i, j), I(j + 1, k), X(i, j, k))
        elif variant == 1:
            rhs = (X(i, j, k), I(i, i + k - j - 1), I(i + k - j, k))
        else:
            continue
        rules.append(Rule((I(i, k),), rhs))
    return rules


def _m5_rules(d, pos, params, direction):
    if len(params) != 1 or params[0] not in (1, 2, 3, 4):
        return []
    variant = params[0]
    els = d.elements
    spans = set()
    e = els[pos] if pos < len(els) else None
    if isinstance(e, I):
        spans.add((e.i, e.j))
    if isinstance(e, X) and e.i == e.j == e.k - 1:
        # two-point multipoint written as a grid
        spans.add((e.i, e.k))
    if pos + 2 <= len(els):
        w = els[pos : pos + 2]
        if variant == 1 and isinstance(w[0], I) and isinstance(w[1], X):
            spans.add((w[1].i, w[1].k))
        elif variant == 2 and isinstance(w[0], X) and isinstance(w[1], I):
            spans.add((w[0].i, w[0].k))
        elif variant == 3 and isinstance(w[0], I) and isinstance(w[1], X):
            spans.add((w[0].i, w[1].k))
        elif variant == 4 and isinstance(w[0], X) and isinstance(w[1], I):
            spans.add((w[0].i, w[0].k))
    rules = []
    for i, j in sorted(spans):
        if not 1 <= i < j <= d.strands:
            continue
        if variant == 1:
            rhs = (I(i + 1, j), X(i, i, j)) if j > i + 1 else (X(i, i, j),)
        elif variant == 2:
            rhs = (X(i, i, j), I(i, j - 1)) if j > i + 1 else (X(i, i, j),)
        elif variant == 3:
            rhs = (I(i, j - 1), X(i, j - 1, j)) if j > i + 1 else (X(i, i, j),)
        else:
            rhs = (X(i, j - 1, j), I(i + 1, j)) if j > i + 1 else (X(i, i, j),)
        rules.append(Rule((I(i, j),), rhs))
    return rules


def _m6_rules(d, pos, params, direction):
    if len(params) != 1:
        return []
    j = params[0]
    els = d.elements
    spans = set()
    e = els[pos] if pos < len(els) else None
    if isinstance(e, I):
        spans.add((e.i, e.j))
    if pos + 3 <= len(els):
        w = els[pos : pos + 3]
        if isinstance(w[0], X) and isinstance(w[1], I) and isinstance(w[2], X):
            spans.add((w[1].i, w[2].k))
    rules = []
    for i, k in sorted(spans):
        if not i < j < k:
            continue
        rhs = (X(j, j, k), I(i, k - 1), X(i + k - j, k - 1, k))
        rules.append(Rule((I(i, k),), rhs))
    return rules


def _m7_rules(d, pos, params, direction):
    if params or pos + 2 > len(d.elements):
        return []
    a, b = d.elements[pos], d.elements[pos + 1]
    rules = []
    if isinstance(a, I) and isinstance(b, X):
        if (a.i, a.j) == (b.i, b.j):
            rules.append(Rule((a, b), (b, I(b.i + b.k - b.j, b.k))))
        if (a.i, a.j) == (b.j + 1, b.k):
            rules.append(Rule((a, b), (b, I(b.i, b.i + b.k - b.j - 1))))
    if isinstance(a, X) and isinstance(b, I):
        if (b.i, b.j) == (a.i + a.k - a.j, a.k):
            rules.append(Rule((I(a.i, a.j), a), (a, b)))
        if (b.i, b.j) == (a.i, a.i + a.k - a.j - 1):
            rules.append(Rule((I(a.j + 1, a.k), a), (a, b)))
    return rules


def _m8_rules(d, pos, params, direction):
    if params or pos + 2 > len(d.elements):
        return []
    a, b = d.elements[pos], d.elements[pos + 1]
    if not (isinstance(a, I) and isinstance(b, I)):
        return []
    rules = []
    if a.i == b.i and a.j < b.j:
        # inner then outer, shared top: the inner crosses to the bottom
        i, j, k = a.i, a.j, b.j
        rules.append(Rule((a, b), (I(i, k), I(i + k - j, k))))
    if a.i == b.i and a.j > b.j:
        # outer then inner, shared top
        i, j, k = a.i, b.j, a.j
        rules.append(Rule((a, b), (I(i + k - j, k), I(i, k))))
    if a.j == b.j and a.i < b.i:
        # outer then inner, shared bottom: the inner came from the top side
        i, k = a.i, a.j
        j = i + k - b.i
        if i < j < k:
            rules.append(Rule((I(i, j), I(i, k)), (a, b)))
    if a.j == b.j and a.i > b.i:
        # inner then outer, shared bottom
        i, k = b.i, b.j
        j = i + k - a.i
        if i < j < k:
            rules.append(Rule((I(i, k), I(i, j)), (a, b)))
    return rules


def _m9_rules(d, pos, params, direction):
    if params or pos + 2 > len(d.elements):
        return []
    a, b = d.elements[pos], d.elements[pos + 1]
    rules = []
    if isinstance(a, I) and isinstance(b, T) and (a.i, a.j) == (b.i, b.i + 1):
        rules.append(Rule((a, b), (b, a)))
    if isinstance(a, T) and isinstance(b, I) and (b.i, b.j) == (a.i, a.i + 1):
        rules.append(Rule((b, a), (a, b)))
    if isinstance(a, I) and isinstance(b, TN) and (a.i, a.j) == (b.a, b.b):
        rules.append(Rule((a, b), (b, a)))
    if isinstance(a, TN) and isinstance(b, I) and (b.i, b.j) == (a.a, a.b):
        rules.append(Rule((b, a), (a, b)))
    return rules


def _m10_rules(d, pos, params, direction):
    if len(params) != 1:
        return []
    i = params[0]
    if not (1 <= i and i + 2 <= d.strands):
        return []
    return [
        Rule(
            (T(i), I(i + 1, i + 2)),
            (S(i + 1, 1), S(i, -1), T(i + 1), I(i, i + 1)),
        ),
        Rule(
            (T(i + 1), I(i, i + 1)),
            (S(i, 1), S(i + 1, -1), T(i), I(i + 1, i + 2)),
        ),
    ]


def _m11_rules(d, pos, params, direction):
    if params:
        return []
    els = d.elements
    nests = set()
    e = els[pos] if pos < len(els) else None
    if isinstance(e, TN):
        nests.add((e.a, e.b))
    if isinstance(e, S):
        found = _nest_after(els, pos)
        if found is not None:
            nests.add((found.a, found.b))
    rules = []
    for a, b in sorted(nests):
        n = (b - a + 1) // 2
        if n < 2:
            continue
        c = a + n - 1
        top, bot = I(a, c), I(c + 1, b)
        rules.append(
            Rule(
                (TN(a, b), top),
                (*_delta_s(a, c, 1), *_delta_s(c + 1, b, -1), TN(a, b), bot),
            )
        )
        rules.append(
            Rule(
                (TN(a, b), bot),
                (*_delta_s(c + 1, b, 1), *_delta_s(a, c, -1), TN(a, b), top),
            )
        )
    return rules


def _m12_rules(d, pos, params, direction):
    if params:
        return []
    els = d.elements
    nests = set()
    e = els[pos] if pos < len(els) else None
    if isinstance(e, TN):
        nests.add((e.a, e.b))
    if isinstance(e, S):
        found = _nest_after(els, pos)
        if found is not None:
            nests.add((found.a - 1, found.b - 1))
    rules = []
    for a, b in sorted(nests):
        n = (b - a + 1) // 2
        if n < 1 or a < 1 or b + 1 > d.strands:
            continue
        c = a + n - 1
        lhs = (TN(a, b), *[I(p, p + 1) for p in range(b, c, -1)])
        rhs = (
            *[S(p, 1) for p in range(b, c, -1)],
            *[S(p, -1) for p in range(c, a - 1, -1)],
            TN(a + 1, b + 1),
            *[I(p, p + 1) for p in range(a, a + n)],
        )
        rules.append(Rule(lhs, rhs))
    return rules


def _m13_rules(d, pos, params, direction):
    if len(params) != 1:
        return []
    i = params[0]
    if not (1 <= i and i + 2 <= d.strands):
        return []
    return [
        Rule(
            (T(i), I(i + 1, i + 2)),
            (I(i + 1, i + 2), S(i + 1, 1), T(i), S(i + 1, -1)),
        )
    ]


def _m14_rules(d, pos, params, direction):
    if params:
        return []
    els = d.elements
    nests = set()
    e = els[pos] if pos < len(els) else None
    if isinstance(e, TN):
        nests.add((e.a, e.b))
    if isinstance(e, I):
        found = _nest_after(els, pos + 1)
        if found is not None:
            nests.add((found.a, found.b))
    rules = []
    for a, b in sorted(nests):
        n = (b - a + 1) // 2
        if n < 2:
            continue
        c = a + n - 1
        rules.append(
            Rule(
                (TN(a, b), I(a, c)),
                (I(a, c), *_delta_s(a, c, 1), TN(a, b), *_delta_s(a, c, -1)),
            )
        )
    return rules


def _m15_rules(d, pos, params, direction):
    if params or pos + 2 > len(d.elements):
        return []
    a, b = d.elements[pos], d.elements[pos + 1]
    rules = []
    if isinstance(a, S) and isinstance(b, I) and b.i <= a.i < b.j:
        refl = b.i + b.j - a.i - 1
        rules.append(Rule((a, b), (b, S(refl, a.sign))))
    if isinstance(a, I) and isinstance(b, S) and a.i <= b.i < a.j:
        refl = a.i + a.j - b.i - 1
        rules.append(Rule((S(refl, b.sign), a), (a, b)))
    return rules


def _m16_rules(d, pos, params, direction):
    if pos != 0 or len(params) != 2:
        return []
    i, sign = params
    if not (1 <= i <= d.strands - 1 and sign in (1, -1)):
        return []
    return [Rule((S(i, sign),), (), comp_swap=(i, i + 1))]


def _m17_rules(d, pos, params, direction):
    if len(params) != 2:
        return []
    i, sign = params
    if not (1 <= i <= d.strands - 1 and sign in (1, -1)):
        return []
    want = len(d.elements) - 1 if direction == "fwd" else len(d.elements)
    if pos != want:
        return []
    return [Rule((S(i, sign),), (), conjugator=((i, -sign),))]


_RULES: dict[str, Callable] = {
    "M1": _m1_rules,
    "M2": _m2_rules,
    "M3": _m3_rules,
    "M4": _m4_rules,
    "M5": _m5_rules,
    "M6": _m6_rules,
    "M7": _m7_rules,
    "M8": _m8_rules,
    "M9": _m9_rules,
    "M10": _m10_rules,
    "M11": _m11_rules,
    "M12": _m12_rules,
    "M13": _m13_rules,
    "M14": _m14_rules,
    "M15": _m15_rules,
    "M16": _m16_rules,
    "M17": _m17_rules,
}

_MIRRORABLE = {"M1"} | {f"M{i}" for i in range(3, 16)}

_CATALOG = [
    MoveKind("M1", "commute adjacent elements with disjoint support", "word", "[]"),
    MoveKind("M2", "split or merge a grid at an index", "exact", "[variant, split]"),
    MoveKind("M3", "peel the outer tangency off a nest", "word", "[]"),
    MoveKind("M4", "split a multipoint into two groups", "word", "[variant, j]"),
    MoveKind("M5", "split one edge strand off a multipoint", "word", "[variant]"),
    MoveKind("M6", "split one interior strand off a multipoint", "word", "[j]"),
    MoveKind("M7", "slide a block multipoint through its grid", "word", "[]"),
    MoveKind("M8", "switch two nested multipoints", "word", "[]"),
    MoveKind("M9", "swap a tangency or nest with its full multipoint", "word", "[]"),
    MoveKind("M10", "pass a double point through a tangency", "word", "[i]"),
    MoveKind("M11", "pass a half-span multipoint through a nest", "word", "[]"),
    MoveKind("M12", "pass one strand through a nest", "word", "[]"),
    MoveKind("M13", "commute a double point past a tangency", "word", "[i]"),
    MoveKind("M14", "carry a multipoint to the other side of a nest", "word", "[]"),
    MoveKind("M15", "slide a braid letter through a multipoint", "word", "[]"),
    MoveKind("M16", "trim or insert a leading braid letter", "exact", "[i, sign]"),
    MoveKind("M17", "trim or insert a trailing braid letter", "conj", "[i, sign]"),
]


def catalog() -> list[MoveKind]:
    return list(_CATALOG)


def _nominal(kind: str) -> str:
    for mk in _CATALOG:
        if mk.name == kind:
            return mk.guarantee
    raise MoveError(f"unknown move kind {kind!r}")


# ---------------------------------------------------------------------------
# application


def _window_rewrite(
    d: WiringDiagram, inst: MoveInstance
) -> tuple[WiringDiagram, tuple[tuple[int, int], ...]]:
    if inst.direction not in ("fwd", "bwd"):
        raise MoveError(f"bad direction {inst.direction!r}")
    rules = _RULES[inst.kind](d, inst.pos, tuple(inst.params), inst.direction)
    els = d.elements
    for rule in rules:
        if inst.direction == "fwd":
            old, new, conj = rule.lhs, rule.rhs, rule.conjugator
        else:
            old, new = rule.rhs, rule.lhs
            conj = tuple((i, -s) for i, s in reversed(rule.conjugator))
        if inst.pos < 0 or inst.pos + len(old) > len(els):
            continue
        if tuple(els[inst.pos : inst.pos + len(old)]) != tuple(old):
            continue
        out = els[: inst.pos] + tuple(new) + els[inst.pos + len(old) :]
        if rule.comp_swap is None:
            return d.with_elements(out), conj
        a, b = rule.comp_swap
        swap = {a: b, b: a}
        comps = tuple(
            (name, tuple(sorted(swap.get(p, p) for p in positions)))
            for name, positions in d.comps
        )
        return WiringDiagram(d.strands, comps, out), conj
    raise MoveError(
        f"{inst.kind} {inst.direction} with params {list(inst.params)} does not "
        f"match at position {inst.pos}"
    )


def _apply_raw(
    d: WiringDiagram, inst: MoveInstance
) -> tuple[WiringDiagram, BraidWord | None]:
    if inst.kind not in _RULES:
        raise MoveError(f"unknown move kind {inst.kind!r}")
    if inst.mirror:
        if inst.kind not in _MIRRORABLE:
            raise MoveError(f"{inst.kind} has no mirrored form")
        dm = mirror_diagram(d)
        nd_m, conj = _window_rewrite(dm, replace(inst, mirror=False))
        nd = mirror_diagram(nd_m)
    else:
        nd, conj = _window_rewrite(d, inst)
    word = BraidWord(d.strands, tuple(conj)) if conj else None
    errs = validate(nd)
    if errs:
        raise MoveError(f"{inst.kind} at {inst.pos} breaks validity: {errs[0]}")
    return nd, word


def apply(d: WiringDiagram, inst: MoveInstance, verify: bool = True) -> MoveResult:
    """Apply one move.  With verify on, check the kind's guarantee on the
    whole diagram; the result reports the strength actually achieved."""
    wiring.check(d)
    nd, conj = _apply_raw(d, inst)
    if not verify:
        return MoveResult(nd, _nominal(inst.kind), conj, False)

    fb, bb = front(d), back(d)
    fa, ba = front(nd), back(nd)
    boundary_before = compose(invert(bb), fb)
    boundary_after = compose(invert(ba), fa)
    exact_ok = (
        free_reduce(boundary_before).letters == free_reduce(boundary_after).letters
    )
    word_ok = exact_ok or (equal(fb, fa) and equal(bb, ba))
    nominal = _nominal(inst.kind)
    if nominal == "conj":
        witness = conj if conj is not None else BraidWord(d.strands, ())
        if not conjugate_check(boundary_before, boundary_after, witness):
            raise MoveVerificationError(
                f"{inst.kind} at {inst.pos}: conjugation witness failed"
            )
        achieved = "exact" if exact_ok else ("word" if word_ok else "conj")
    elif nominal == "exact":
        if not (exact_ok or word_ok):
            raise MoveVerificationError(
                f"{inst.kind} at {inst.pos}: boundary not preserved"
            )
        achieved = "exact" if exact_ok else "word"
    else:
        if not word_ok:
            raise MoveVerificationError(
                f"{inst.kind} at {inst.pos}: front/back words not preserved"
            )
        achieved = "exact" if exact_ok else "word"
    return MoveResult(nd, achieved, conj, True)


def _window_length(d: WiringDiagram, inst: MoveInstance) -> int:
    rules = _RULES[inst.kind](d, inst.pos, tuple(inst.params), inst.direction)
    for rule in rules:
        old = rule.lhs if inst.direction == "fwd" else rule.rhs
        if tuple(d.elements[inst.pos : inst.pos + len(old)]) == tuple(old):
            return len(old)
    raise MoveError("window not found")


def instance_window(d: WiringDiagram, inst: MoveInstance) -> tuple[int, int]:
    """Window (start, length) of the instance in this diagram's coordinates."""
    if not inst.mirror:
        return inst.pos, _window_length(d, inst)
    dm = mirror_diagram(d)
    length = _window_length(dm, replace(inst, mirror=False))
    return len(d.elements) - inst.pos - length, length


# ---------------------------------------------------------------------------
# enumeration


def _candidate_params(
    d: WiringDiagram, kind: str, pos: int
) -> Iterable[tuple[int, ...]]:
    els = d.elements
    e = els[pos] if pos < len(els) else None
    n = d.strands
    if kind in ("M1", "M3", "M7", "M8", "M9", "M11", "M12", "M14", "M15"):
        yield ()
        return
    if kind == "M2":
        if isinstance(e, X):
            for split in range(e.i + 1, e.j + 1):
                yield (0, split)
            for split in range(e.j + 1, e.k):
                yield (1, split)
            # merge candidates read the split off the left grid
            yield (0, e.i)
            yield (1, e.k)
        return
    if kind == "M4":
        if isinstance(e, I):
            for j in range(e.i + 1, e.j - 1):
                yield (0, j)
                yield (1, j)
            # merge candidate: window starts at the small left piece
            yield (0, e.j)
        if isinstance(e, X):
            yield (1, e.j)
        return
    if kind == "M5":
        for variant in (1, 2, 3, 4):
            yield (variant,)
        return
    if kind == "M6":
        if isinstance(e, I):
            for j in range(e.i + 1, e.j):
                yield (j,)
        if isinstance(e, X):
            yield (e.i,)
        return
    if kind in ("M10", "M13"):
        if isinstance(e, T):
            yield (e.i,)
            yield (e.i - 1,)
        if isinstance(e, I):
            yield (e.i - 1,)
        if isinstance(e, S):
            yield (e.i,)
            yield (e.i - 1,)
        return
    if kind in ("M16", "M17"):
        for i in range(1, n):
            yield (i, 1)
            yield (i, -1)
        return


def _plain_instances(
    d: WiringDiagram, pos: int
) -> list[tuple[MoveInstance, WiringDiagram]]:
    out = []
    for mk in _CATALOG:
        seen = set()
        for params in _candidate_params(d, mk.name, pos):
            if params in seen:
                continue
            seen.add(params)
            for direction in ("fwd", "bwd"):
                inst = MoveInstance(mk.name, pos, params, direction)
                try:
                    nd, _ = _apply_raw(d, inst)
                except MoveError:
                    continue
                out.append((inst, nd))
    return out


def list_applicable(d: WiringDiagram, position: int) -> list[MoveInstance]:
    """Every applicable instance whose window starts at ``position``.

    Mirrored instances carry their position in the rotated element order;
    their window in this diagram's order still starts at ``position``."""
    wiring.check(d)
    if not 0 <= position <= len(d.elements):
        raise ValueError(f"position {position} out of range")
    results: dict = {}
    for inst, nd in _plain_instances(d, position):
        results.setdefault((nd.elements, inst.kind), inst)
    dm = mirror_diagram(d)
    total = len(d.elements)
    for mpos in range(total + 1):
        for inst, nd_m in _plain_instances(dm, mpos):
            if inst.kind not in _MIRRORABLE:
                continue
            minst = replace(inst, mirror=True)
            try:
                start, _ = instance_window(d, minst)
            except MoveError:
                continue
            if start != position:
                continue
            nd = mirror_diagram(nd_m)
            results.setdefault((nd.elements, inst.kind), minst)
    return sorted(
        results.values(),
        key=lambda m: (m.kind, m.pos, m.params, m.direction, m.mirror),
    )


# ---------------------------------------------------------------------------
# scripts and traces


@dataclass(frozen=True)
class TraceStep:
    move: MoveInstance
    digest: str


@dataclass(frozen=True)
class Trace:
    initial: WiringDiagram
    steps: tuple[TraceStep, ...]
    conjugator: BraidWord

    def to_json(self) -> dict:
        return {
            "initial": wiring.diagram_to_json(self.initial),
            "steps": [
                {"move": s.move.to_json(), "hash": s.digest} for s in self.steps
            ],
            "conjugator": [[i, s] for i, s in self.conjugator.letters],
        }


def trace_from_json(data: Mapping) -> Trace:
    initial = wiring.diagram_from_json(data["initial"])
    steps = tuple(
        TraceStep(instance_from_json(s["move"]), str(s["hash"]))
        for s in data["steps"]
    )
    conj = BraidWord(
        initial.strands,
        tuple((int(i), int(s)) for i, s in data.get("conjugator", [])),
    )
    return Trace(initial, steps, conj)


def script_to_json(script: Sequence[MoveInstance]) -> list[dict]:
    return [inst.to_json() for inst in script]


def script_from_json(data) -> list[MoveInstance]:
    return [instance_from_json(item) for item in data]


def run_script(d: WiringDiagram, script: Sequence[MoveInstance]) -> Trace:
    """Apply a move sequence with per-step verification.

    The trace records the hash of each intermediate diagram and the ordered
    product of all conjugators; the final boundary is checked to be the
    conjugate of the initial one by the accumulated word."""
    wiring.check(d)
    current = d
    steps = []
    conj_letters: list[tuple[int, int]] = []
    for idx, inst in enumerate(script):
        try:
            result = apply(current, inst, verify=True)
        except MoveError as exc:
            raise MoveError(f"step {idx}: {exc}") from exc
        except MoveVerificationError as exc:
            raise MoveVerificationError(f"step {idx}: {exc}") from exc
        current = result.diagram
        if result.conjugator is not None:
            conj_letters.extend(result.conjugator.letters)
        steps.append(TraceStep(inst, wiring.digest(current)))
    conj = BraidWord(d.strands, tuple(conj_letters))
    if not conjugate_check(boundary_braid(d), boundary_braid(current), conj):
        raise MoveVerificationError("accumulated conjugator fails on the final diagram")
    return Trace(d, tuple(steps), conj)


def trace_final(t: Trace) -> WiringDiagram:
    current = t.initial
    for step in t.steps:
        current = apply(current, step.move, verify=False).diagram
    return current


def verify_trace(t: Trace) -> bool:
    """Independent replay: re-apply every step with verification on,
    compare every recorded hash, and re-check the conjugator witness."""
    try:
        current = t.initial
        conj_letters: list[tuple[int, int]] = []
        for step in t.steps:
            result = apply(current, step.move, verify=True)
            current = result.diagram
            if result.conjugator is not None:
                conj_letters.extend(result.conjugator.letters)
            if wiring.digest(current) != step.digest:
                return False
        if tuple(conj_letters) != t.conjugator.letters:
            return False
        return conjugate_check(
            boundary_braid(t.initial), boundary_braid(current), t.conjugator
        )
    except (MoveError, MoveVerificationError, ValueError):
        return False
