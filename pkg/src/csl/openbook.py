"""Open-book plans for transverse surgery on a binding component.

A plan is a page (genus plus named boundary components) together with a
word of Dehn twists along boundary-parallel curves.  Every operation also
updates a :class:`~csl.slope.FareyFrame`, so the meridian (West) and page
slope (East) of the tracked binding component can be read off in the
coordinates of the starting open book.

Curve names are symbolic.  A twist along a curve parallel to boundary
component ``X`` is recorded with ``curve="X"``.  Words are compared
literally; no mapping class group relations are applied.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

from .errors import DomainError, InputError
from .slope import (FareyFrame, FrameOp, Slope, SlopeLike, as_slope,
                    frame_apply, frame_coordinates, frame_label, ncf_expand)

__all__ = [
    "Page", "DehnTwist", "PlanOp", "OpenBookPlan", "InadmissibleSplit",
    "new_trivial", "stabilize", "add_boundary_twist", "admissible_build",
    "inadmissible_split", "inadmissible_build", "lutz_quarter", "lutz_half",
    "lutz_full", "cap_off", "model_plan", "link_shift_move", "shift_to_zero",
    "to_current_frame",
]


class PlanOp(enum.Enum):
    STABILIZE = "S"
    TWIST_POS = "T+"
    TWIST_NEG = "T-"

    @property
    def frame_op(self) -> FrameOp:
        # a positive boundary twist is -1 surgery relative to the page,
        # which moves North to West; a negative one moves South to West
        return {PlanOp.STABILIZE: FrameOp.STABILIZE,
                PlanOp.TWIST_POS: FrameOp.NEG_SURGERY,
                PlanOp.TWIST_NEG: FrameOp.POS_SURGERY}[self]


@dataclass(frozen=True)
class Page:
    genus: int
    boundary_ids: tuple[str, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise DomainError("genus must be non-negative")
        if not self.boundary_ids:
            raise DomainError("a page needs at least one boundary component")
        if len(set(self.boundary_ids)) != len(self.boundary_ids):
            raise DomainError("boundary component names must be distinct")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary_ids)


@dataclass(frozen=True)
class DehnTwist:
    curve: str
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("Dehn twist sign must be +1 or -1")


@dataclass(frozen=True)
class OpenBookPlan:
    page: Page
    monodromy: tuple[DehnTwist, ...] = ()
    tracked: str = "K"
    frame: FareyFrame = field(default_factory=FareyFrame)
    history: tuple[PlanOp, ...] = ()

    @property
    def west(self) -> Slope:
        """Meridian of the tracked component in starting coordinates."""
        return self.frame.west

    @property
    def east(self) -> Slope:
        """Page slope of the tracked component in starting coordinates."""
        return self.frame.east

    def label(self, position: SlopeLike) -> Slope:
        return frame_label(self.frame, position)

    def replay_frame(self, start: FareyFrame | None = None) -> FareyFrame:
        return frame_apply(start or FareyFrame(), [op.frame_op for op in self.history])

    def west_labels(self) -> list[Slope]:
        """West label after each history step (starting value first)."""
        f = FareyFrame()
        out = [f.west]
        for op in self.history:
            f = f.apply(op.frame_op)
            out.append(f.west)
        return out

    def to_dict(self) -> dict:
        return {
            "page": {"genus": self.page.genus, "boundaries": list(self.page.boundary_ids)},
            "monodromy": [{"curve": t.curve, "sign": t.sign} for t in self.monodromy],
            "tracked": self.tracked,
            "history": [op.value for op in self.history],
            "frame": self.frame.as_matrix(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OpenBookPlan":
        try:
            page = Page(int(d["page"]["genus"]), tuple(str(b) for b in d["page"]["boundaries"]))
            word = tuple(DehnTwist(str(t["curve"]), int(t["sign"])) for t in d["monodromy"])
            lam, mu = d["frame"]
            frame = FareyFrame((int(lam[0]), int(lam[1])), (int(mu[0]), int(mu[1])))
            history = tuple(PlanOp(h) for h in d["history"])
            tracked = str(d["tracked"])
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise InputError(f"malformed open book plan: {exc}") from None
        if tracked not in page.boundary_ids:
            raise InputError(f"tracked component {tracked!r} is not on the page")
        return cls(page, word, tracked, frame, history)


def _step(plan: OpenBookPlan, op: PlanOp, **changes) -> OpenBookPlan:
    return replace(plan, frame=plan.frame.apply(op.frame_op),
                   history=plan.history + (op,), **changes)


def new_trivial(genus: int, boundaries: int) -> OpenBookPlan:
    """Open book with trivial monodromy; components are K, B1, B2, ..."""
    if boundaries < 1:
        raise DomainError("need at least one boundary component")
    names = ("K",) + tuple(f"B{i}" for i in range(1, boundaries))
    return OpenBookPlan(Page(genus, names))


def stabilize(plan: OpenBookPlan) -> OpenBookPlan:
    """Positive stabilisation along an arc parallel to the tracked boundary.

    A fresh boundary component ``S<k>`` appears and a positive twist along
    the curve parallel to it is appended.  The tracked component keeps its
    meridian and its page slope drops by one step.
    """
    k = sum(op is PlanOp.STABILIZE for op in plan.history) + 1
    name = f"S{k}"
    while name in plan.page.boundary_ids:
        k += 1
        name = f"S{k}"
    page = Page(plan.page.genus, plan.page.boundary_ids + (name,))
    return _step(plan, PlanOp.STABILIZE, page=page,
                 monodromy=plan.monodromy + (DehnTwist(name, 1),))


def add_boundary_twist(plan: OpenBookPlan, sign: int) -> OpenBookPlan:
    """Twist along the tracked binding: +1 is -1 surgery relative to the
    page, -1 is +1 surgery relative to the page."""
    op = PlanOp.TWIST_POS if sign == 1 else PlanOp.TWIST_NEG
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return _step(plan, op, monodromy=plan.monodromy + (DehnTwist(plan.tracked, sign),))


def admissible_build(plan: OpenBookPlan, r: SlopeLike) -> OpenBookPlan:
    """Admissible surgery with coefficient ``r < 0`` in the current frame.

    For ``r = [e1, ..., ek]`` stabilise ``|e1+1|`` times and twist
    positively, then for each later entry stabilise ``|ei+2|`` times and
    twist positively again.
    """
    r = as_slope(r)
    if r.is_infinite or r.fraction >= 0:
        raise DomainError("admissible coefficient must be negative with respect to the page")
    for i, e in enumerate(ncf_expand(r)):
        for _ in range(abs(e + 1) if i == 0 else abs(e + 2)):
            plan = stabilize(plan)
        plan = add_boundary_twist(plan, 1)
    return plan


@dataclass(frozen=True)
class InadmissibleSplit:
    """``r = p/q = a.(1/n) (+) b.(1/(n-1))``; after ``n`` negative twists
    the remaining admissible coefficient is ``r' = p/(q - np)``."""

    n: int
    r_prime: Slope | None
    a: int
    b: int


def inadmissible_split(r: SlopeLike) -> InadmissibleSplit:
    r = as_slope(r)
    if r.is_infinite or r.fraction <= 0:
        raise DomainError("inadmissible coefficient must be positive with respect to the page")
    p, q = r.p, r.q
    n = -(-q // p)
    rest = None if q == n * p else Slope(p, q - n * p)
    return InadmissibleSplit(n, rest, q + p - n * p, n * p - q)


def inadmissible_build(plan: OpenBookPlan, r: SlopeLike) -> OpenBookPlan:
    """Inadmissible surgery with coefficient ``r > 0`` in the current frame:
    ``n`` negative boundary twists for the least ``n`` with ``1/n <= r``,
    then the admissible construction for ``p/(q - np)``."""
    split = inadmissible_split(r)
    for _ in range(split.n):
        plan = add_boundary_twist(plan, -1)
    if split.r_prime is not None:
        plan = admissible_build(plan, split.r_prime)
    return plan


def lutz_quarter(plan: OpenBookPlan, n: int = 0) -> OpenBookPlan:
    """Page-slope surgery: optional ``1/n`` boundary surgery, then a
    stabilisation and a negative twist.  The new meridian is the old page
    slope whatever ``n`` is."""
    for _ in range(abs(n)):
        plan = add_boundary_twist(plan, -1 if n > 0 else 1)
    return add_boundary_twist(stabilize(plan), -1)


def lutz_half(plan: OpenBookPlan) -> OpenBookPlan:
    """Two quarter twists separated by a stabilisation (infinity surgery)."""
    return lutz_quarter(stabilize(lutz_quarter(plan)))


def lutz_full(plan: OpenBookPlan) -> OpenBookPlan:
    for i in range(4):
        if i:
            plan = stabilize(plan)
        plan = lutz_quarter(plan)
    return plan


def cap_off(plan: OpenBookPlan, component: str) -> OpenBookPlan:
    """Fill in a boundary component with a disc, dropping twists along it."""
    ids = plan.page.boundary_ids
    if component not in ids:
        raise DomainError(f"no boundary component named {component!r}")
    if component == plan.tracked:
        raise DomainError("cannot cap off the tracked component")
    if len(ids) < 2:
        raise DomainError("cannot cap off the last boundary component")
    page = Page(plan.page.genus, tuple(b for b in ids if b != component))
    word = tuple(t for t in plan.monodromy if t.curve != component)
    return replace(plan, page=page, monodromy=word)


def model_plan(g: int, n: int) -> OpenBookPlan:
    """Plan on the genus ``g`` one-boundary trivial open book realising
    inadmissible ``(2g - 1 + 1/n)``-surgery on the binding."""
    if g < 1 or n < 1:
        raise DomainError("need g >= 1 and n >= 1")
    return inadmissible_build(new_trivial(g, 1), Slope(n * (2 * g - 1) + 1, n))


def to_current_frame(plan: OpenBookPlan, slope: SlopeLike) -> Slope:
    """Express a starting-coordinate slope relative to the plan's current
    (page, meridian) frame, ready to pass to the builders."""
    return frame_coordinates(plan.frame, slope)


# -- shift move on multi-binding model open books -------------------------------


def link_shift_move(k: Sequence[int], i: int, j: int) -> list[int]:
    """Shift one unit of surgery from binding ``i`` to binding ``j``
    (1-based indices): ``k_i -> k_i - 1``, ``k_j -> k_j + 1``."""
    k = [int(x) for x in k]
    if len(k) < 2:
        raise DomainError("the shift move needs at least two components")
    if not (1 <= i <= len(k) and 1 <= j <= len(k)):
        raise IndexError("component index out of range")
    if i == j:
        raise DomainError("indices must differ")
    k[i - 1] -= 1
    k[j - 1] += 1
    return k


def shift_to_zero(k: Sequence[int]) -> list[dict]:
    """Shift moves taking a positive vector to one with a zero entry.

    Always drains the smallest entry (first on ties) into the next
    component, which takes exactly ``min(k)`` moves.
    """
    k = [int(x) for x in k]
    if len(k) < 2 or any(x <= 0 for x in k):
        raise DomainError("need at least two positive entries")
    i = min(range(len(k)), key=lambda t: (k[t], t)) + 1
    j = 1 if i != 1 else 2
    steps = []
    while k[i - 1] != 0:
        k = link_shift_move(k, i, j)
        steps.append({"i": i, "j": j, "k": list(k)})
    return steps
