"""Braid words on n strands and a left-greedy normal form.

Words are sequences of Artin generator letters.  A letter is a pair
``(i, sign)`` with ``1 <= i <= n-1`` and ``sign`` either ``+1`` or ``-1``,
standing for sigma_i or its inverse.  Generator sigma_i crosses the strands
sitting at positions i and i+1, with the strand coming from position i
passing in front.

Equality of braids is decided through the left-greedy normal form

    Delta^d . p_1 . p_2 ... p_k

where Delta is the positive half twist on all n strands and each p_t is a
permutation braid (a positive braid in which any two strands cross at most
once), with p_t neither trivial nor Delta, and each consecutive pair
left-weighted: every generator that starts p_{t+1} finishes p_t.  The form
is a complete invariant, so two words are equal exactly when their normal
forms coincide.

Permutation braids are encoded by their permutations.  A permutation is a
tuple ``p`` of length n with ``p[x]`` the final position (0-indexed) of the
strand that starts at position x.  ``perm_mul(p, q)`` composes left to
right: first p, then q.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence


class StrandMismatchError(ValueError):
    """Raised when braid words on different strand counts are combined."""


Letter = tuple[int, int]


def _check_letters(n: int, letters: Iterable[Letter]) -> tuple[Letter, ...]:
    if n < 1:
        raise ValueError(f"strand count must be positive, got {n}")
    out = []
    for letter in letters:
        i, s = letter
        if not 1 <= i <= n - 1:
            raise ValueError(f"generator index {i} out of range for {n} strands")
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s}")
        out.append((i, s))
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``n`` strands."""

    n: int
    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", _check_letters(self.n, self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return compose(self, other)


def word(n: int, letters: Iterable[Letter] = ()) -> BraidWord:
    return BraidWord(n, tuple(letters))


def compose(*words: BraidWord) -> BraidWord:
    """Concatenate words on a common strand count."""
    if not words:
        raise ValueError("compose needs at least one word")
    n = words[0].n
    letters: list[Letter] = []
    for w in words:
        if w.n != n:
            raise StrandMismatchError(f"cannot compose words on {n} and {w.n} strands")
        letters.extend(w.letters)
    return BraidWord(n, tuple(letters))


def invert(w: BraidWord) -> BraidWord:
    return BraidWord(w.n, tuple((i, -s) for i, s in reversed(w.letters)))


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[Letter] = []
    for i, s in w.letters:
        if stack and stack[-1][0] == i and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((i, s))
    return BraidWord(w.n, tuple(stack))


def exponent_sum(w: BraidWord) -> int:
    return sum(s for _, s in w.letters)


# ---------------------------------------------------------------------------
# permutations


def perm_id(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def perm_w0(n: int) -> tuple[int, ...]:
    """Permutation of the half twist: full reversal."""
    return tuple(range(n - 1, -1, -1))


def perm_mul(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """First p, then q."""
    return tuple(q[p[x]] for x in range(len(p)))


def perm_inv(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for x, y in enumerate(p):
        out[y] = x
    return tuple(out)


def _perm_gen(n: int, i: int) -> tuple[int, ...]:
    """Transposition of positions i, i+1 (generator index 1-indexed)."""
    p = list(range(n))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def _tau(p: tuple[int, ...]) -> tuple[int, ...]:
    """Conjugation by Delta on permutation braids: sigma_i -> sigma_{n-i}."""
    n = len(p)
    return tuple(n - 1 - p[n - 1 - x] for x in range(n))


def _starting_set(p: tuple[int, ...]) -> set[int]:
    """Generators sigma_i that begin the permutation braid of p."""
    return {i for i in range(1, len(p)) if p[i - 1] > p[i]}


def _finishing_set(p: tuple[int, ...]) -> set[int]:
    """Generators sigma_i that end the permutation braid of p."""
    inv = perm_inv(p)
    return {i for i in range(1, len(p)) if inv[i - 1] > inv[i]}


def _left_weight_pair(
    a: tuple[int, ...], b: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...], bool]:
    """Slide crossings from b into a until the pair is left-weighted.

    Preserves the product a.b.  Each step moves one generator that starts b
    and is still admissible at the end of a; the loop stops when every
    starter of b already finishes a.
    """
    changed = False
    while True:
        movable = _starting_set(b) - _finishing_set(a)
        if not movable:
            return a, b, changed
        i = min(movable)
        la = list(a)
        for x in range(len(la)):  # a . sigma_i: swap the values i-1, i
            if la[x] == i - 1:
                la[x] = i
            elif la[x] == i:
                la[x] = i - 1
        a = tuple(la)
        lb = list(b)  # sigma_i^-1 . b: swap entries at positions i-1, i
        lb[i - 1], lb[i] = lb[i], lb[i - 1]
        b = tuple(lb)
        changed = True


@dataclass(frozen=True)
class NormalForm:
    """Left-greedy form Delta^delta . factors, a complete braid invariant."""

    n: int
    delta: int
    factors: tuple[tuple[int, ...], ...]

    def permutation(self) -> tuple[int, ...]:
        p = perm_w0(self.n) if self.delta % 2 else perm_id(self.n)
        for f in self.factors:
            p = perm_mul(p, f)
        return p

    def digest(self) -> str:
        payload = f"{self.n}|{self.delta}|{self.factors}".encode()
        return hashlib.sha256(payload).hexdigest()[:16]


@lru_cache(maxsize=200_000)
def _normal_form_cached(n: int, letters: tuple[Letter, ...]) -> NormalForm:
    w0 = perm_w0(n)
    ident = perm_id(n)

    # Suffix parity of negative letters: a factor gets twisted by tau once
    # for every Delta^-1 that later commutes leftwards past it.
    flips = [0] * len(letters)
    negs = 0
    for j in range(len(letters) - 1, -1, -1):
        flips[j] = negs % 2
        if letters[j][1] < 0:
            negs += 1

    delta = -negs
    factors: list[tuple[int, ...]] = []
    for j, (i, s) in enumerate(letters):
        if s > 0:
            if flips[j]:
                i = n - i
            # absorb into the last factor while it stays a permutation braid
            if factors and i not in _finishing_set(factors[-1]):
                factors[-1] = perm_mul(factors[-1], _perm_gen(n, i))
            else:
                factors.append(_perm_gen(n, i))
        else:
            p = perm_mul(w0, _perm_gen(n, i))  # Delta . sigma_i^-1
            if flips[j]:
                p = _tau(p)
            factors.append(p)

    changed = True
    while changed:
        changed = False
        for idx in range(len(factors) - 1):
            a, b = factors[idx], factors[idx + 1]
            if b == ident or a == w0:
                continue
            na, nb, moved = _left_weight_pair(a, b)
            if moved:
                factors[idx], factors[idx + 1] = na, nb
                changed = True

    while factors and factors[0] == w0:
        delta += 1
        factors.pop(0)
    while factors and factors[-1] == ident:
        factors.pop()
    return NormalForm(n, delta, tuple(factors))


def normal_form(w: BraidWord) -> NormalForm:
    return _normal_form_cached(w.n, w.letters)


def permutation(w: BraidWord) -> tuple[int, ...]:
    """Position map of the word: entry x is the final position of strand x."""
    state = list(range(w.n))  # state[pos] = strand currently at pos
    for i, _ in w.letters:
        state[i - 1], state[i] = state[i], state[i - 1]
    out = [0] * w.n
    for pos, strand in enumerate(state):
        out[strand] = pos
    return tuple(out)


def equal(w1: BraidWord, w2: BraidWord) -> bool:
    """Decide equality in the braid group."""
    if w1.n != w2.n:
        raise StrandMismatchError(f"words on {w1.n} and {w2.n} strands")
    if w1.letters == w2.letters:
        return True
    if exponent_sum(w1) != exponent_sum(w2):
        return False
    if permutation(w1) != permutation(w2):
        return False
    # Equality survives cancelling a shared prefix and suffix, which keeps
    # the normal-form computation local to where the words differ.
    a, b = w1.letters, w2.letters
    lo = 0
    while lo < len(a) and lo < len(b) and a[lo] == b[lo]:
        lo += 1
    hi = 0
    while (
        hi < len(a) - lo and hi < len(b) - lo and a[len(a) - 1 - hi] == b[len(b) - 1 - hi]
    ):
        hi += 1
    mid1 = BraidWord(w1.n, a[lo : len(a) - hi])
    mid2 = BraidWord(w2.n, b[lo : len(b) - hi])
    return normal_form(mid1) == normal_form(mid2)


def conjugate_check(w1: BraidWord, w2: BraidWord, c: BraidWord) -> bool:
    """True when w2 equals c^-1 . w1 . c.  A witness check, not a search."""
    return equal(w2, compose(invert(c), w1, c))


def half_twist(n: int, i: int, j: int) -> BraidWord:
    """Positive half twist Delta_{i,j} on strands i..j as its staircase word.

    >>> to_text(half_twist(4, 1, 4))
    's1 s2 s3 s1 s2 s1'
    """
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got i={i} j={j} n={n}")
    letters = []
    for top in range(j - 1, i - 1, -1):
        letters.extend((t, 1) for t in range(i, top + 1))
    return BraidWord(n, tuple(letters))


def permutation_cycles(p: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Cycles of a permutation, 1-indexed, each rotated to start minimal."""
    seen = [False] * len(p)
    cycles = []
    for x in range(len(p)):
        if seen[x]:
            continue
        cyc = []
        y = x
        while not seen[y]:
            seen[y] = True
            cyc.append(y + 1)
            y = p[y]
        cycles.append(tuple(cyc))
    return tuple(sorted(cycles))


# ---------------------------------------------------------------------------
# linking data of the closure


@dataclass(frozen=True)
class LinkingMatrix:
    """Linking numbers of the closure components plus self-writhes.

    ``off[(a, b)]`` is the linking number of components a and b (keys are
    sorted pairs); ``diagonal[a]`` is the signed self-crossing count of
    component a.
    """

    components: tuple[str, ...]
    off: dict[tuple[str, str], int]
    diagonal: dict[str, int]

    def entry(self, a: str, b: str) -> int:
        if a == b:
            return self.diagonal[a]
        key = (a, b) if a <= b else (b, a)
        return self.off[key]


def linking_matrix(w: BraidWord, comp: dict[int, str]) -> LinkingMatrix:
    """Linking matrix of the word with strands coloured by comp.

    Every strand 1..n must be assigned a component.  Off-diagonal entries
    are half the signed count of crossings between the two components; the
    total per pair must be even.  The diagonal carries per-component
    self-writhes (signed same-component crossing counts).  The permutation
    may move a component's strands onto another component's positions; the
    counts depend only on the colouring along the word.
    """
    n = w.n
    for strand in range(1, n + 1):
        if strand not in comp:
            raise ValueError(f"strand {strand} has no component")
    names = tuple(sorted(set(comp.values())))
    cross: dict[tuple[str, str], int] = {}
    diag: dict[str, int] = {name: 0 for name in names}
    state = list(range(1, n + 1))
    for i, s in w.letters:
        ca, cb = comp[state[i - 1]], comp[state[i]]
        if ca == cb:
            diag[ca] += s
        else:
            key = (ca, cb) if ca <= cb else (cb, ca)
            cross[key] = cross.get(key, 0) + s
        state[i - 1], state[i] = state[i], state[i - 1]
    off = {}
    for a_idx in range(len(names)):
        for b_idx in range(a_idx + 1, len(names)):
            key = (names[a_idx], names[b_idx])
            total = cross.get(key, 0)
            if total % 2:
                raise ValueError(f"odd inter-component crossing count for {key}")
            off[key] = total // 2
    return LinkingMatrix(names, off, diag)


# ---------------------------------------------------------------------------
# serialization


def to_text(w: BraidWord) -> str:
    """Compact text form: ``s3 s1' s2`` with the apostrophe marking inverses."""
    return " ".join(f"s{i}" + ("'" if s < 0 else "") for i, s in w.letters)


def from_text(n: int, text: str) -> BraidWord:
    letters = []
    for token in text.split():
        if not token.startswith("s"):
            raise ValueError(f"bad braid letter {token!r}")
        body = token[1:]
        sign = 1
        if body.endswith("'"):
            sign = -1
            body = body[:-1]
        if not body.isdigit():
            raise ValueError(f"bad braid letter {token!r}")
        letters.append((int(body), sign))
    return BraidWord(n, tuple(letters))


def to_json(w: BraidWord) -> list[list[int]]:
    return [[i, s] for i, s in w.letters]


def from_json(n: int, data: Sequence[Sequence[int]]) -> BraidWord:
    return BraidWord(n, tuple((int(i), int(s)) for i, s in data))
