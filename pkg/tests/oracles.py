"""Independent brute-force oracles used to cross-check the library.

The braid equality oracle here decides equality by breadth-first search
over freely reduced words, applying defining relations directly.  It shares
no code with the normal-form engine: words are plain tuples of (index,
sign) letters and the only simplification is free reduction.  The search is
bounded, so each query returns a verdict plus a flag saying whether the
bound was hit; tests only assert against conclusive answers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

Letter = tuple[int, int]
Word = tuple[Letter, ...]


def reduce_free(letters) -> Word:
    stack: list[Letter] = []
    for i, s in letters:
        if stack and stack[-1] == (i, -s):
            stack.pop()
        else:
            stack.append((i, s))
    return tuple(stack)


def _neighbors(w: Word, n: int, cap: int):
    """Freely reduced words reachable by one local relation rewrite.

    Rewrites: far commutation (|i-j| >= 2), the braid relation on three
    adjacent letters in any of its mixed-sign forms, and insertion of a
    cancelling pair (the inverse of free reduction) while under the cap.
    """
    L = len(w)
    for at in range(L - 1):
        (i, s), (j, t) = w[at], w[at + 1]
        if abs(i - j) >= 2:
            yield reduce_free(w[:at] + ((j, t), (i, s)) + w[at + 2 :])
    for at in range(L - 2):
        (i, s), (j, t), (k, u) = w[at], w[at + 1], w[at + 2]
        # same-sign form: i j i -> j i j with |i-j| = 1
        if s == t == u and i == k and abs(i - j) == 1:
            yield reduce_free(w[:at] + ((j, s), (i, s), (j, s)) + w[at + 3 :])
        # mixed-sign forms, each an identity derived from the positive one;
        # the four patterns are pairwise inverse so the rewrite relation
        # stays symmetric
        if abs(i - j) == 1 and k == i and s == -1 and t == u == 1:
            yield reduce_free(w[:at] + ((j, 1), (i, 1), (j, -1)) + w[at + 3 :])
        if abs(i - j) == 1 and k == i and s == 1 and t == u == -1:
            yield reduce_free(w[:at] + ((j, -1), (i, -1), (j, 1)) + w[at + 3 :])
        if abs(i - j) == 1 and k == i and s == t == 1 and u == -1:
            yield reduce_free(w[:at] + ((j, -1), (i, 1), (j, 1)) + w[at + 3 :])
        if abs(i - j) == 1 and k == i and s == t == -1 and u == 1:
            yield reduce_free(w[:at] + ((j, 1), (i, -1), (j, -1)) + w[at + 3 :])
        if abs(i - j) == 1 and k == i and s == -1 and t == u == 1:
            yield reduce_free(w[:at] + ((j, 1), (i, 1), (j, -1)) + w[at + 3 :])
        if abs(i - j) == 1 and k == i and s == 1 and t == u == -1:
            yield reduce_free(w[:at] + ((j, -1), (i, -1), (j, 1)) + w[at + 3 :])
        if abs(i - j) == 1 and k == i and s == t == 1 and u == -1:
            yield reduce_free(w[:at] + ((j, -1), (i, 1), (j, 1)) + w[at + 3 :])
        if abs(i - j) == 1 and k == i and s == t == -1 and u == 1:
            yield reduce_free(w[:at] + ((j, 1), (i, -1), (j, -1)) + w[at + 3 :])
    if L + 2 <= cap:
        for at in range(L + 1):
            for g in range(1, n):
                for sign in (1, -1):
                    yield reduce_free(w[:at] + ((g, sign), (g, -sign)) + w[at:])


@dataclass
class OracleVerdict:
    equal: bool
    conclusive: bool
    explored: int


def bfs_equal(
    n: int,
    w1,
    w2,
    length_cap: int = 12,
    state_budget: int = 400_000,
) -> OracleVerdict:
    """Search for w2 in the rewrite ball around w1.

    Equal words connect through relation rewrites; if the target is found
    the answer is a conclusive yes.  If the ball is exhausted under the cap
    without finding it, the words differ among all words of length <= cap,
    which is conclusive for inputs whose equality would have a witness path
    inside the cap.  Hitting the state budget is inconclusive.
    """
    start = reduce_free(w1)
    target = reduce_free(w2)
    if start == target:
        return OracleVerdict(True, True, 0)
    cap = max(length_cap, len(start), len(target))
    seen = {start}
    queue = deque([start])
    while queue:
        if len(seen) > state_budget:
            return OracleVerdict(False, False, len(seen))
        cur = queue.popleft()
        for nxt in _neighbors(cur, n, cap):
            if nxt in seen:
                continue
            if nxt == target:
                return OracleVerdict(True, True, len(seen))
            seen.add(nxt)
            queue.append(nxt)
    return OracleVerdict(False, True, len(seen))


def closure_components(n: int, w) -> list[set[int]]:
    """Strand orbits of a word's permutation; independent of the library."""
    state = list(range(1, n + 1))
    for i, _ in w:
        state[i - 1], state[i] = state[i], state[i - 1]
    nxt = {}
    for pos, strand in enumerate(state):
        nxt[strand] = pos + 1
    seen: set[int] = set()
    comps = []
    for s0 in range(1, n + 1):
        if s0 in seen:
            continue
        orbit = set()
        s = s0
        while s not in orbit:
            orbit.add(s)
            s = nxt[s]
        seen |= orbit
        comps.append(orbit)
    return comps


def smith_diagonal_via_sympy(rows: list[list[int]]) -> list[int]:
    """Invariant factors of an integer matrix, computed by sympy."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form

    m = Matrix(rows)
    if m.rows == 0 or m.cols == 0:
        return []
    d = smith_normal_form(m)
    out = []
    for k in range(min(d.rows, d.cols)):
        v = int(d[k, k])
        if v != 0:
            out.append(abs(v))
    return sorted(out)
