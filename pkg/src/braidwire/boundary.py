"""Front and back pushoff braids of a wiring diagram.

Reading the diagram left to right, just above the wires (front) and just
below them (back), gives two braid words:

    element    front            back
    I(i, j)    Delta_{i,j}      Delta_{i,j}^-1
    T(i)       (nothing)        sigma_i^-1
    S(i, s)    sigma_i^s        sigma_i^s

The boundary braid of the diagram is back^-1 . front.  Moves on diagrams
are judged by whether they preserve these words as braid-group elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import wiring
from .braid import (
    BraidWord,
    LinkingMatrix,
    compose,
    equal,
    exponent_sum,
    half_twist,
    invert,
    linking_matrix,
    normal_form,
    permutation,
    permutation_cycles,
)
from .wiring import WiringDiagram, check, expand_macros


def front(d: WiringDiagram) -> BraidWord:
    """Braid word read along the top of the wires."""
    check(d)
    letters: list[tuple[int, int]] = []
    for e in expand_macros(d).elements:
        if isinstance(e, wiring.I):
            letters.extend(half_twist(d.strands, e.i, e.j).letters)
        elif isinstance(e, wiring.S):
            letters.append((e.i, e.sign))
    return BraidWord(d.strands, tuple(letters))


def back(d: WiringDiagram) -> BraidWord:
    """Braid word read along the bottom of the wires."""
    check(d)
    letters: list[tuple[int, int]] = []
    for e in expand_macros(d).elements:
        if isinstance(e, wiring.I):
            letters.extend(invert(half_twist(d.strands, e.i, e.j)).letters)
        elif isinstance(e, wiring.T):
            letters.append((e.i, -1))
        elif isinstance(e, wiring.S):
            letters.append((e.i, e.sign))
    return BraidWord(d.strands, tuple(letters))


def boundary_braid(d: WiringDiagram) -> BraidWord:
    """back^-1 . front, the braid of the boundary of a neighborhood."""
    return compose(invert(back(d)), front(d))


def strand_chart(d: WiringDiagram) -> dict[int, str]:
    return {p: name for name, ps in d.comps for p in ps}


def boundary_chart(d: WiringDiagram) -> dict[int, str]:
    """Component of each boundary-braid strand.

    The boundary word starts at the diagram's right edge (the back word is
    traversed inverted), so position p carries the component of the strand
    that ends there.  Tangencies swap the two back pushoff sheets, but only
    within one component, so this colouring is constant along each arc.
    """
    chart = strand_chart(d)
    final = wiring.position_state(d)
    return {p: chart[final[p - 1]] for p in range(1, d.strands + 1)}


@dataclass(frozen=True)
class BoundaryData:
    front: BraidWord
    back: BraidWord
    boundary: BraidWord
    cycles: tuple[tuple[int, ...], ...]
    exponent_sum: int
    linking: LinkingMatrix
    nf_digest: str


def boundary_data(d: WiringDiagram) -> BoundaryData:
    """Boundary braid with its conjugation-stable invariants."""
    f = front(d)
    b = back(d)
    w = compose(invert(b), f)
    return BoundaryData(
        front=f,
        back=b,
        boundary=w,
        cycles=permutation_cycles(permutation(w)),
        exponent_sum=exponent_sum(w),
        linking=linking_matrix(w, boundary_chart(d)),
        nf_digest=normal_form(w).digest(),
    )


def boundary_equal(d1: WiringDiagram, d2: WiringDiagram) -> bool:
    return equal(boundary_braid(d1), boundary_braid(d2))
