"""Translation between transverse surgery and contact surgery.

Contact surgery coefficients are measured against the contact framing
``tb`` of a Legendrian approximation; transverse coefficients are measured
against the Seifert (or page) framing.  With all stabilisations in the
Ding-Geiges expansion chosen negative the two agree up to the shift by
``tb``.

Negative Legendrian stabilisation is encoded as ``(tb, rot) -> (tb - 1,
rot - 1)`` which keeps ``sl = tb - rot`` fixed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, InputError
from .openbook import PlanOp, inadmissible_build, admissible_build, new_trivial
from .slope import Slope, SlopeLike, as_slope, ncf_expand

__all__ = [
    "SignChoice", "LegendrianData", "ContactSurgerySpec", "PushOff",
    "PlusMinusOneDiagram", "TransverseCoefficient", "transverse_to_contact",
    "contact_to_transverse", "stabilization_shift", "ding_geiges_expand",
    "history_to_entries", "openbook_agrees",
]


class SignChoice(enum.Enum):
    ALL_NEGATIVE = "negative"
    ALL_POSITIVE = "positive"


@dataclass(frozen=True)
class LegendrianData:
    tb: int
    rot: int
    genus: int = 0

    def bennequin_ok(self) -> bool:
        """Bennequin bound ``tb + |rot| <= 2g - 1``; only meaningful for
        null-homologous knots in tight manifolds."""
        return self.tb + abs(self.rot) <= 2 * self.genus - 1

    @property
    def sl(self) -> int:
        return self.tb - self.rot


@dataclass(frozen=True)
class ContactSurgerySpec:
    coefficient: Slope
    sign_choice: SignChoice = SignChoice.ALL_NEGATIVE

    def __post_init__(self):
        c = as_slope(self.coefficient)
        if c.is_infinite or c.p == 0:
            raise DomainError("contact surgery coefficient must be a non-zero rational")
        object.__setattr__(self, "coefficient", c)


@dataclass(frozen=True)
class PushOff:
    """One knot of a contact (+-1) surgery diagram.

    ``parent`` is ``"L"`` for a Legendrian push-off of the original knot or
    ``"previous"`` for a push-off of the entry before it.
    """

    parent: str
    negative_stabilizations: int
    positive_stabilizations: int
    surgery_sign: int

    @property
    def stabilizations(self) -> int:
        return self.negative_stabilizations + self.positive_stabilizations

    def to_dict(self) -> dict:
        return {"parent": self.parent, "neg_stab": self.negative_stabilizations,
                "pos_stab": self.positive_stabilizations, "sign": self.surgery_sign}

    @classmethod
    def from_dict(cls, d: dict) -> "PushOff":
        try:
            parent = str(d["parent"])
            out = cls(parent, int(d["neg_stab"]), int(d["pos_stab"]), int(d["sign"]))
        except (KeyError, TypeError, ValueError):
            raise InputError(f"malformed push-off entry {d!r}") from None
        if parent not in ("L", "previous") or out.surgery_sign not in (1, -1):
            raise InputError(f"malformed push-off entry {d!r}")
        return out


@dataclass(frozen=True)
class PlusMinusOneDiagram:
    entries: tuple[PushOff, ...]

    def to_list(self) -> list[dict]:
        return [e.to_dict() for e in self.entries]

    @classmethod
    def from_list(cls, items) -> "PlusMinusOneDiagram":
        if not isinstance(items, list):
            raise InputError("expected a JSON array of push-off entries")
        return cls(tuple(PushOff.from_dict(d) for d in items))

    @property
    def plus_count(self) -> int:
        return sum(e.surgery_sign == 1 for e in self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


@dataclass(frozen=True)
class TransverseCoefficient:
    slope: Slope
    admissible: bool


def transverse_to_contact(tb: int, s: SlopeLike) -> ContactSurgerySpec:
    """Transverse ``s``-surgery on the push-off of a Legendrian with
    Thurston-Bennequin number ``tb`` is contact ``(s - tb)``-surgery."""
    s = as_slope(s)
    if s.is_infinite:
        raise DomainError("infinity surgery (half Lutz twist) has no contact surgery counterpart")
    if s == Slope(tb):
        raise DomainError("slope equals the contact framing")
    return ContactSurgerySpec(s - tb, SignChoice.ALL_NEGATIVE)


def contact_to_transverse(tb: int, spec: ContactSurgerySpec) -> TransverseCoefficient:
    if spec.sign_choice is not SignChoice.ALL_NEGATIVE:
        raise DomainError("only all-negative stabilisation choices correspond to transverse surgery")
    c = spec.coefficient
    return TransverseCoefficient(c + tb, c.fraction < 0)


def stabilization_shift(tb: int, rot: int, n: SlopeLike) -> tuple[int, int, Slope]:
    """Contact ``n``-surgery on L equals contact ``(n+1)``-surgery on its
    negative stabilisation; ``tb + n`` is unchanged."""
    n = as_slope(n)
    if n.is_infinite or n.fraction <= 0:
        raise DomainError("coefficient must be positive")
    return tb - 1, rot - 1, n + 1


def _negative_block(r: Slope, first_parent: str, sign: SignChoice) -> list[PushOff]:
    out = []
    for i, e in enumerate(ncf_expand(r)):
        k = abs(e + 1) if i == 0 else abs(e + 2)
        neg, pos = (k, 0) if sign is SignChoice.ALL_NEGATIVE else (0, k)
        out.append(PushOff(first_parent if i == 0 else "previous", neg, pos, -1))
    return out


def ding_geiges_expand(spec: ContactSurgerySpec) -> PlusMinusOneDiagram:
    """Rewrite contact ``r``-surgery as a sequence of contact (+-1)-surgeries.

    For ``r < 0`` with expansion ``[e1, ..., ek]`` the first knot is L
    stabilised ``|e1 + 1|`` times and each later one is a push-off of its
    predecessor stabilised ``|ei + 2|`` more times.  For ``r = p/q > 0``
    there are first ``n = ceil(q/p)`` (+1)-surgeries on push-offs of L,
    followed by the negative expansion of ``p/(q - np)`` on a further
    push-off of L.
    """
    r = spec.coefficient
    if r.fraction < 0:
        return PlusMinusOneDiagram(tuple(_negative_block(r, "L", spec.sign_choice)))
    p, q = r.p, r.q
    n = -(-q // p)
    entries = [PushOff("L", 0, 0, 1) for _ in range(n)]
    if q != n * p:
        entries += _negative_block(Slope(p, q - n * p), "L", spec.sign_choice)
    return PlusMinusOneDiagram(tuple(entries))


def history_to_entries(history: Sequence[PlanOp]) -> list[tuple[int, int]]:
    """Read an open-book history as (surgery sign, stabilisations) pairs:
    each negative twist is a (+1)-surgery and each run of stabilisations
    closed by a positive twist is one stabilised (-1)-surgery."""
    out = []
    pending = 0
    for op in history:
        if op is PlanOp.STABILIZE:
            pending += 1
        elif op is PlanOp.TWIST_NEG:
            if pending:
                raise DomainError("stabilisation followed by a negative twist")
            out.append((1, 0))
        else:
            out.append((-1, pending))
            pending = 0
    if pending:
        raise DomainError("history ends with unused stabilisations")
    return out


def openbook_agrees(r: SlopeLike) -> bool:
    """Compare the open-book construction for page-relative coefficient
    ``r`` with the all-negative Ding-Geiges expansion of contact
    ``r``-surgery, block by block."""
    r = as_slope(r)
    plan = new_trivial(0, 1)
    plan = inadmissible_build(plan, r) if r.fraction > 0 else admissible_build(plan, r)
    dg = ding_geiges_expand(ContactSurgerySpec(r))
    return history_to_entries(plan.history) == [
        (e.surgery_sign, e.negative_stabilizations) for e in dg
    ] and all(e.positive_stabilizations == 0 for e in dg)
