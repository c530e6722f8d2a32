"""Braided wiring diagrams.

A diagram is read left to right on ``strands`` horizontal positions,
numbered 1 at the top.  Components name the curves; the chart assigns each
left-edge position to a component.  Elements:

    I(i, j)     multipoint: the strands at positions i..j meet at one point
                and emerge in reversed order
    X(i, j, k)  grid: the block at positions i..j crosses the block at
                j+1..k, both blocks keeping their internal order
    T(i)        tangency between the strands at positions i and i+1, which
                must carry the same component
    TN(a, b)    tangency nest on the even-length span a..b
    S(i, sign)  a braid letter: the strands at i, i+1 cross

X and TN are macros: X expands to a grid of 2-point multipoints, TN to
tangencies interleaved with negative letters.  Position bookkeeping uses a
fixed permutation per element; tangencies leave positions unchanged.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Union


class InvalidDiagramError(ValueError):
    """Raised when an operation requires a diagram that fails validation."""


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class I:
    i: int
    j: int


@dataclass(frozen=True)
class X:
    i: int
    j: int
    k: int


@dataclass(frozen=True)
class T:
    i: int


@dataclass(frozen=True)
class TN:
    a: int
    b: int


@dataclass(frozen=True)
class S:
    i: int
    sign: int


Element = Union[I, X, T, TN, S]


def _normalize_comps(comps) -> tuple[tuple[str, tuple[int, ...]], ...]:
    if isinstance(comps, Mapping):
        items = comps.items()
    else:
        items = comps
    normalized = [(str(name), tuple(sorted(set(map(int, positions))))) for name, positions in items]
    normalized.sort(key=lambda pair: (pair[1][0] if pair[1] else 0, pair[0]))
    return tuple(normalized)


@dataclass(frozen=True)
class WiringDiagram:
    strands: int
    comps: tuple[tuple[str, tuple[int, ...]], ...]
    elements: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "comps", _normalize_comps(self.comps))
        object.__setattr__(self, "elements", tuple(self.elements))

    def comp_map(self) -> dict[str, tuple[int, ...]]:
        return dict(self.comps)

    def chart(self) -> dict[int, str]:
        """Left-edge position -> component name."""
        out = {}
        for name, positions in self.comps:
            for p in positions:
                out[p] = name
        return out

    def with_elements(self, elements: Iterable[Element]) -> "WiringDiagram":
        return WiringDiagram(self.strands, self.comps, tuple(elements))


def diagram(strands: int, comps, elements: Iterable[Element] = ()) -> WiringDiagram:
    return WiringDiagram(strands, comps, tuple(elements))


# ---------------------------------------------------------------------------
# macro expansion


def expand_element(e: Element) -> list[Element]:
    if isinstance(e, X):
        out: list[Element] = []
        for t in range(e.j - e.i + 1):
            out.extend(I(p, p + 1) for p in range(e.j - t, e.k - t))
        return out
    if isinstance(e, TN):
        n = (e.b - e.a + 1) // 2
        c = e.a + n - 1
        out = [T(c)]
        for blk in range(1, n):
            for u in range(n - 1, blk - 1, -1):
                out.append(S(e.a - 1 + u, -1))
                out.append(S(e.a - 1 + 2 * n - u, -1))
            out.append(T(c))
        return out
    return [e]


def expand_macros(d: WiringDiagram) -> WiringDiagram:
    """Replace every X and TN by its expansion; I, T, S pass through."""
    out: list[Element] = []
    for e in d.elements:
        out.extend(expand_element(e))
    return d.with_elements(out)


# ---------------------------------------------------------------------------
# position tracking


def element_permute(state: tuple[int, ...], e: Element) -> tuple[int, ...]:
    """Apply one element's position permutation to a strand-at-position tuple."""
    s = list(state)
    if isinstance(e, I):
        s[e.i - 1 : e.j] = reversed(s[e.i - 1 : e.j])
    elif isinstance(e, X):
        s[e.i - 1 : e.k] = s[e.j : e.k] + s[e.i - 1 : e.j]
    elif isinstance(e, S):
        s[e.i - 1], s[e.i] = s[e.i], s[e.i - 1]
    elif isinstance(e, TN):
        n = (e.b - e.a + 1) // 2
        c = e.a + n - 1
        s[e.a - 1 : c] = reversed(s[e.a - 1 : c])
        s[c : e.b] = reversed(s[c : e.b])
    # T: identity
    return tuple(s)


def position_state(d: WiringDiagram, prefix_length: int | None = None) -> tuple[int, ...]:
    """Strand at each position after the first ``prefix_length`` elements.

    Entry at index p-1 is the left-edge strand occupying position p.
    """
    if prefix_length is None:
        prefix_length = len(d.elements)
    if not 0 <= prefix_length <= len(d.elements):
        raise ValueError(f"prefix length {prefix_length} out of range")
    state = tuple(range(1, d.strands + 1))
    for e in d.elements[:prefix_length]:
        state = element_permute(state, e)
    return state


def comp_at(d: WiringDiagram, state: Sequence[int]) -> tuple[str, ...]:
    """Component at each position for a given strand-at-position state."""
    chart = d.chart()
    return tuple(chart[strand] for strand in state)


# ---------------------------------------------------------------------------
# validation


def _element_range_errors(n: int, idx: int, e: Element) -> list[str]:
    errs = []
    where = f"element {idx} ({print_element(e)})"
    if isinstance(e, I):
        if not 1 <= e.i < e.j <= n:
            errs.append(f"{where}: need 1 <= i < j <= {n}")
    elif isinstance(e, X):
        if not 1 <= e.i <= e.j < e.k <= n:
            errs.append(f"{where}: need 1 <= i <= j < k <= {n}")
    elif isinstance(e, T):
        if not 1 <= e.i <= n - 1:
            errs.append(f"{where}: need 1 <= i <= {n - 1}")
    elif isinstance(e, TN):
        if not 1 <= e.a < e.b <= n:
            errs.append(f"{where}: need 1 <= a < b <= {n}")
        elif (e.b - e.a + 1) % 2:
            errs.append(f"{where}: span length must be even")
    elif isinstance(e, S):
        if not 1 <= e.i <= n - 1:
            errs.append(f"{where}: need 1 <= i <= {n - 1}")
        if e.sign not in (1, -1):
            errs.append(f"{where}: sign must be +1 or -1")
    else:
        errs.append(f"element {idx}: unknown element {e!r}")
    return errs


def validate(d: WiringDiagram) -> list[str]:
    """All violations in the diagram; an empty list means valid.

    Checks: the chart is a partition of 1..strands, element indices are in
    range, TN spans have even length, and every tangency (in the expanded
    diagram) touches two positions of one component.
    """
    errs: list[str] = []
    if d.strands < 1:
        return [f"strand count must be positive, got {d.strands}"]
    seen: dict[int, str] = {}
    for name, positions in d.comps:
        if not name:
            errs.append("empty component name")
        for p in positions:
            if not 1 <= p <= d.strands:
                errs.append(f"component {name}: position {p} out of range")
            elif p in seen:
                errs.append(f"position {p} assigned to both {seen[p]} and {name}")
            else:
                seen[p] = name
    for p in range(1, d.strands + 1):
        if p not in seen:
            errs.append(f"position {p} has no component")
    if errs:
        return errs

    for idx, e in enumerate(d.elements):
        errs.extend(_element_range_errors(d.strands, idx, e))
    if errs:
        return errs

    chart = d.chart()
    state = tuple(range(1, d.strands + 1))
    for idx, e in enumerate(d.elements):
        for sub in expand_element(e):
            if isinstance(sub, T):
                ca, cb = chart[state[sub.i - 1]], chart[state[sub.i]]
                if ca != cb:
                    errs.append(
                        f"element {idx} ({print_element(e)}): tangency at position "
                        f"{sub.i} joins distinct components {ca} and {cb}"
                    )
            state = element_permute(state, sub)
    return errs


def check(d: WiringDiagram) -> WiringDiagram:
    """Return ``d`` if valid, else raise with the violation list."""
    errs = validate(d)
    if errs:
        raise InvalidDiagramError("; ".join(errs))
    return d


# ---------------------------------------------------------------------------
# mirror


def mirror_element(n: int, e: Element) -> Element:
    if isinstance(e, I):
        return I(n + 1 - e.j, n + 1 - e.i)
    if isinstance(e, X):
        # the rotated grid's entry blocks are the flipped exit blocks, so
        # the new split point comes from the exit configuration
        return X(n + 1 - e.k, n + 1 - e.i - (e.k - e.j), n + 1 - e.i)
    if isinstance(e, T):
        return T(n - e.i)
    if isinstance(e, TN):
        return TN(n + 1 - e.b, n + 1 - e.a)
    return S(n - e.i, e.sign)


def mirror_diagram(d: WiringDiagram) -> WiringDiagram:
    """Rotate the diagram by a half turn.

    Element order reverses and every position p becomes n+1-p.  The new
    chart reads the old right edge: the mirrored left-edge position p
    carries the component of the strand that ends at old position n+1-p.
    Front and back braids transform by the reverse-and-flip map, so all
    boundary equalities between diagrams are preserved.
    """
    n = d.strands
    final = position_state(d)
    chart = d.chart()
    new_comps: dict[str, list[int]] = {name: [] for name, _ in d.comps}
    for p in range(1, n + 1):
        strand = final[n - p]
        new_comps[chart[strand]].append(p)
    new_elements = tuple(mirror_element(n, e) for e in reversed(d.elements))
    return WiringDiagram(n, new_comps, new_elements)


# ---------------------------------------------------------------------------
# printing


def print_element(e: Element) -> str:
    if isinstance(e, I):
        return f"I[{e.i},{e.j}]"
    if isinstance(e, X):
        return f"X[{e.i},{e.j}|{e.j + 1},{e.k}]"
    if isinstance(e, T):
        return f"T[{e.i}]"
    if isinstance(e, TN):
        return f"TN[{e.a},{e.b}]"
    if isinstance(e, S):
        return f"s{e.i}" + ("'" if e.sign < 0 else "")
    raise TypeError(f"not an element: {e!r}")


def print_diagram(d: WiringDiagram) -> str:
    comps = " ".join(
        f"{name}:" + ",".join(map(str, positions)) for name, positions in d.comps
    )
    head = f"strands {d.strands}; comps {comps}"
    if not d.elements:
        return head
    return head + "; " + "; ".join(print_element(e) for e in d.elements)


def digest(d: WiringDiagram) -> str:
    return hashlib.sha256(print_diagram(d).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|[0-9]+|[;:,\[\]()|^']")


def _tokenize(text: str):
    tokens = []
    line = 1
    col = 1
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line += 1
            col = 1
            pos += 1
            continue
        if ch.isspace():
            col += 1
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {ch!r}", line, col)
        tokens.append((m.group(), line, col))
        col += len(m.group())
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.at = 0

    def peek(self, ahead: int = 0):
        idx = self.at + ahead
        return self.tokens[idx][0] if idx < len(self.tokens) else None

    def next(self):
        if self.at >= len(self.tokens):
            last = self.tokens[-1] if self.tokens else ("", 1, 1)
            raise ParseError("unexpected end of input", last[1], last[2] + len(last[0]))
        tok = self.tokens[self.at]
        self.at += 1
        return tok

    def error(self, msg: str):
        if self.at < len(self.tokens):
            _, line, col = self.tokens[self.at]
        elif self.tokens:
            _, line, col = self.tokens[-1]
        else:
            line, col = 1, 1
        raise ParseError(msg, line, col)

    def expect(self, want: str):
        tok, line, col = self.next()
        if tok != want:
            raise ParseError(f"expected {want!r}, found {tok!r}", line, col)

    def int_(self) -> int:
        tok, line, col = self.next()
        if not tok.isdigit():
            raise ParseError(f"expected a number, found {tok!r}", line, col)
        return int(tok)

    def name(self) -> str:
        tok, line, col = self.next()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise ParseError(f"expected a name, found {tok!r}", line, col)
        return tok

    def parse_comps(self):
        comps = []
        while True:
            name = self.name()
            self.expect(":")
            positions = [self.int_()]
            while True:
                if self.peek() == "," and (self.peek(1) or "").isdigit():
                    self.next()
                    positions.append(self.int_())
                else:
                    break
            comps.append((name, positions))
            if self.peek() == ";" or self.peek() is None:
                return comps
            if self.peek() == ",":
                self.next()  # comma between components

    def parse_items(self):
        items: list[Element] = []
        while True:
            items.extend(self.parse_item())
            if self.peek() == ";":
                self.next()
                continue
            if self.peek() is None:
                return items
            self.error(f"expected ';' between elements, found {self.peek()!r}")

    def parse_item(self) -> list[Element]:
        tok = self.peek()
        if tok == "(":
            self.next()
            inner: list[Element] = [*self.parse_group_items()]
            self.expect(")")
            self.expect("^")
            power = self.int_()
            return inner * power
        tok, line, col = self.next()
        if tok == "I":
            self.expect("[")
            i = self.int_()
            self.expect(",")
            j = self.int_()
            self.expect("]")
            return [I(i, j)]
        if tok == "X":
            self.expect("[")
            i = self.int_()
            self.expect(",")
            j = self.int_()
            self.expect("|")
            j2 = self.int_()
            self.expect(",")
            k = self.int_()
            self.expect("]")
            if j2 != j + 1:
                raise ParseError(f"grid blocks must be adjacent: {j}|{j2}", line, col)
            return [X(i, j, k)]
        if tok == "T":
            self.expect("[")
            i = self.int_()
            self.expect("]")
            return [T(i)]
        if tok == "TN":
            self.expect("[")
            a = self.int_()
            self.expect(",")
            b = self.int_()
            self.expect("]")
            return [TN(a, b)]
        if tok == "s":
            i = self.int_()
            sign = 1
            if self.peek() == "'":
                self.next()
                sign = -1
            return [S(i, sign)]
        m = re.fullmatch(r"s([0-9]+)", tok)
        if m:
            sign = 1
            if self.peek() == "'":
                self.next()
                sign = -1
            return [S(int(m.group(1)), sign)]
        raise ParseError(f"expected an element, found {tok!r}", line, col)

    def parse_group_items(self):
        items: list[Element] = []
        while True:
            items.extend(self.parse_item())
            if self.peek() == ";":
                self.next()
                continue
            return items


def parse_diagram(text: str) -> WiringDiagram:
    """Parse the diagram DSL; raises ParseError or InvalidDiagramError.

    >>> d = parse_diagram("strands 4; comps A:1,4 B:2,3; TN[1,4]; (I[3,4])^3; I[1,4]")
    >>> len(d.elements)
    5
    """
    p = _Parser(text)
    head, line, col = p.next()
    if head != "strands":
        raise ParseError(f"expected 'strands', found {head!r}", line, col)
    strands = p.int_()
    p.expect(";")
    kw, line, col = p.next()
    if kw != "comps":
        raise ParseError(f"expected 'comps', found {kw!r}", line, col)
    comps = p.parse_comps()
    elements: list[Element] = []
    if p.peek() == ";":
        p.next()
        if p.peek() is not None:
            elements = p.parse_items()
    elif p.peek() is not None:
        p.error(f"expected ';' after components, found {p.peek()!r}")
    for name, positions in comps:
        for pos in positions:
            if not 1 <= pos <= strands:
                raise ParseError(f"component {name}: position {pos} out of range", 1, 1)
    return check(WiringDiagram(strands, comps, tuple(elements)))


# ---------------------------------------------------------------------------
# JSON


def element_to_json(e: Element) -> dict:
    if isinstance(e, I):
        return {"type": "I", "i": e.i, "j": e.j}
    if isinstance(e, X):
        return {"type": "X", "i": e.i, "j": e.j, "k": e.k}
    if isinstance(e, T):
        return {"type": "T", "i": e.i}
    if isinstance(e, TN):
        return {"type": "TN", "a": e.a, "b": e.b}
    if isinstance(e, S):
        return {"type": "s", "i": e.i, "sign": e.sign}
    raise TypeError(f"not an element: {e!r}")


def element_from_json(data: Mapping) -> Element:
    kind = data.get("type")
    try:
        if kind == "I":
            return I(int(data["i"]), int(data["j"]))
        if kind == "X":
            return X(int(data["i"]), int(data["j"]), int(data["k"]))
        if kind == "T":
            return T(int(data["i"]))
        if kind == "TN":
            return TN(int(data["a"]), int(data["b"]))
        if kind == "s":
            return S(int(data["i"]), int(data["sign"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad element payload {data!r}") from exc
    raise ValueError(f"unknown element type {kind!r}")


def diagram_to_json(d: WiringDiagram) -> dict:
    return {
        "strands": d.strands,
        "comps": {name: list(positions) for name, positions in sorted(d.comps)},
        "elements": [element_to_json(e) for e in d.elements],
    }


def diagram_from_json(data: Mapping) -> WiringDiagram:
    try:
        strands = int(data["strands"])
        comps = {str(k): [int(p) for p in v] for k, v in data["comps"].items()}
        elements = tuple(element_from_json(e) for e in data["elements"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ValueError(f"bad diagram payload: {exc}") from exc
    return check(WiringDiagram(strands, comps, elements))
