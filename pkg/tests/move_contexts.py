"""Random window-in-context generators, one per move kind.

Each generator builds a diagram that contains a matching window at a known
position, padded with unrelated elements.  Kinds whose window contains a
tangency get a single-component chart so the tangency condition holds at
any position; the rest draw a random partition.
"""

import random

from braidwire.moves import MoveInstance
from braidwire.wiring import I, S, T, TN, WiringDiagram, X

TANGENT_KINDS = {"M3", "M9", "M10", "M11", "M12", "M13", "M14"}

ALL_KINDS = [f"M{i}" for i in range(1, 18)]


def _neutral(rng: random.Random, n: int):
    roll = rng.random()
    if roll < 0.4:
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        return I(i, j)
    if roll < 0.6:
        i = rng.randint(1, n - 1)
        k = rng.randint(i + 1, n)
        j = rng.randint(i, k - 1)
        return X(i, j, k)
    return S(rng.randint(1, n - 1), rng.choice([1, -1]))


def _element_on(rng: random.Random, a: int, b: int):
    if b == a + 1 and rng.random() < 0.5:
        return S(a, rng.choice([1, -1]))
    if rng.random() < 0.5:
        return I(a, b)
    return X(a, rng.randint(a, b - 1), b)


def _sign(rng):
    return rng.choice([1, -1])


def _window(kind: str, rng: random.Random, n: int):
    """Window elements and params for a forward instance, or None."""
    if kind == "M1":
        if n < 4:
            return None
        b1 = rng.randint(2, n - 2)
        a1 = rng.randint(1, b1 - 1)
        a2 = rng.randint(b1 + 1, n - 1)
        b2 = rng.randint(a2 + 1, n)
        return [_element_on(rng, a1, b1), _element_on(rng, a2, b2)], ()
    if kind == "M2":
        if rng.random() < 0.5 and n >= 3:
            i = rng.randint(1, n - 2)
            j = rng.randint(i + 1, n - 1)
            k = rng.randint(j + 1, n)
            return [X(i, j, k)], (0, rng.randint(i + 1, j))
        if n < 3:
            return None
        i = rng.randint(1, n - 2)
        j = rng.randint(i, n - 2)
        k = rng.randint(j + 2, n)
        return [X(i, j, k)], (1, rng.randint(j + 1, k - 1))
    if kind == "M3":
        widths = [w for w in (4, 6, 8) if w <= n]
        if not widths:
            return None
        w = rng.choice(widths)
        a = rng.randint(1, n - w + 1)
        return [TN(a, a + w - 1)], ()
    if kind == "M4":
        if n < 4:
            return None
        i = rng.randint(1, n - 3)
        k = rng.randint(i + 3, n)
        j = rng.randint(i + 1, k - 2)
        return [I(i, k)], (rng.choice([0, 1]), j)
    if kind == "M5":
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        return [I(i, j)], (rng.randint(1, 4),)
    if kind == "M6":
        if n < 3:
            return None
        i = rng.randint(1, n - 2)
        k = rng.randint(i + 2, n)
        j = rng.randint(i + 1, k - 1)
        return [I(i, k)], (j,)
    if kind == "M7":
        if rng.random() < 0.5:
            i = rng.randint(1, n - 2)
            j = rng.randint(i + 1, n - 1)
            k = rng.randint(j + 1, n)
            return [I(i, j), X(i, j, k)], ()
        i = rng.randint(1, n - 2)
        j = rng.randint(i, n - 2)
        k = rng.randint(j + 2, n)
        return [I(j + 1, k), X(i, j, k)], ()
    if kind == "M8":
        if n < 3:
            return None
        i = rng.randint(1, n - 2)
        j = rng.randint(i + 1, n - 1)
        k = rng.randint(j + 1, n)
        if rng.random() < 0.5:
            return [I(i, j), I(i, k)], ()
        return [I(i, k), I(i, j)], ()
    if kind == "M9":
        if rng.random() < 0.5:
            i = rng.randint(1, n - 1)
            return [I(i, i + 1), T(i)], ()
        widths = [w for w in (2, 4, 6) if w <= n]
        w = rng.choice(widths)
        a = rng.randint(1, n - w + 1)
        return [I(a, a + w - 1), TN(a, a + w - 1)], ()
    if kind in ("M10", "M13"):
        i = rng.randint(1, n - 2)
        if kind == "M10" and rng.random() < 0.5:
            return [T(i + 1), I(i, i + 1)], (i,)
        return [T(i), I(i + 1, i + 2)], (i,)
    if kind in ("M11", "M14"):
        widths = [w for w in (4, 6, 8) if w <= n]
        if not widths:
            return None
        w = rng.choice(widths)
        a = rng.randint(1, n - w + 1)
        b = a + w - 1
        c = a + w // 2 - 1
        if kind == "M11" and rng.random() < 0.5:
            return [TN(a, b), I(c + 1, b)], ()
        return [TN(a, b), I(a, c)], ()
    if kind == "M12":
        widths = [w for w in (2, 4, 6) if w + 1 <= n]
        if not widths:
            return None
        w = rng.choice(widths)
        a = rng.randint(1, n - w)
        b = a + w - 1
        c = a + w // 2 - 1
        return [TN(a, b)] + [I(p, p + 1) for p in range(b, c, -1)], ()
    if kind == "M15":
        i = rng.randint(1, n - 1)
        k = rng.randint(i + 1, n)
        j = rng.randint(i, k - 1)
        return [S(j, _sign(rng)), I(i, k)], ()
    if kind in ("M16", "M17"):
        i = rng.randint(1, n - 1)
        s = _sign(rng)
        return [S(i, s)], (i, s)
    raise ValueError(kind)


def _comps(rng: random.Random, n: int, single: bool):
    if single:
        return (("A", tuple(range(1, n + 1))),)
    count = rng.randint(1, min(3, n))
    names = ["A", "B", "C"][:count]
    assignment = {p: rng.randrange(count) for p in range(1, n + 1)}
    for idx in range(count):
        if idx not in assignment.values():
            assignment[rng.randint(1, n)] = idx
    groups = []
    for idx, name in enumerate(names):
        positions = tuple(p for p in range(1, n + 1) if assignment[p] == idx)
        if positions:
            groups.append((name, positions))
    return tuple(groups)


def random_case(kind: str, rng: random.Random):
    """A (diagram, forward instance) pair with context around the window."""
    for _ in range(300):
        n = rng.randint(4, 16)
        built = _window(kind, rng, n)
        if built is None:
            continue
        window, params = built
        pre = 0 if kind == "M16" else rng.randint(0, 2)
        post = 0 if kind == "M17" else rng.randint(0, 2)
        prefix = [_neutral(rng, n) for _ in range(pre)]
        suffix = [_neutral(rng, n) for _ in range(post)]
        elements = (*prefix, *window, *suffix)
        comps = _comps(rng, n, kind in TANGENT_KINDS)
        d = WiringDiagram(n, comps, elements)
        return d, MoveInstance(kind, len(prefix), params, "fwd")
    raise RuntimeError(f"could not build a case for {kind}")
