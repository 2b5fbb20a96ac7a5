"""Invariants read off contact (+-1) surgery diagrams.

A :class:`SurgeryDiagram` lists Legendrian knots with contact surgery
signs (or bare topological framings), their pairwise linking numbers, and
optionally an extra unsurgered knot ``L0`` whose rational classical
invariants in the surgered manifold are wanted.  The ambient manifold is
``S^3`` with ``one_handles`` 1-handles attached; every knot is assumed
null-homologous there.

``N`` is the linking matrix with topological framings on the diagonal and
``N0`` is ``N`` bordered by the linking row of ``L0`` (corner entry 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .convert import ContactSurgerySpec, PlusMinusOneDiagram, ding_geiges_expand
from .errors import (DegenerateSurgeryError, DomainError, InputError,
                     MissingDataError, TorsionFlagError)
from .linalg import (class_order, det, dot, echelon_lattice_basis, inverse,
                     is_symmetric, matvec, reduce_mod_lattice, signature, solve)
from .slope import Slope, SlopeLike, as_slope

__all__ = [
    "SurgeredKnot", "Distinguished", "SurgeryDiagram", "LinkingMatrices",
    "FourManifoldInvariants", "DualKnotForms", "build_matrices",
    "tb_rational", "rot_rational", "knot_order", "signature_sym",
    "fourmanifold_pack", "c1_dual_class", "loose_bound_holds",
    "dual_knot_closed_forms", "diagram_from_expansion", "model_diagram",
    "model_matrix", "n_surgery_inverse_closed_form", "handle_slide",
    "blow_down", "tb_from_matrices", "model_slides", "dual_stabilization_loose",
]

SPIN_C_NOTE = ("for even order the first Chern class determines the Spin^c "
               "structure only up to a 2:1 ambiguity; this is not resolved here")


@dataclass(frozen=True)
class SurgeredKnot:
    tb: int
    rot: int
    sign: int | None = None
    framing_override: int | None = None

    def __post_init__(self):
        if self.sign is None and self.framing_override is None:
            raise InputError("a surgered knot needs a contact sign or a framing")
        if self.sign is not None and self.sign not in (1, -1):
            raise InputError("contact surgery sign must be +1 or -1")

    @property
    def framing(self) -> int:
        if self.framing_override is not None:
            return self.framing_override
        return self.tb + self.sign


@dataclass(frozen=True)
class Distinguished:
    tb: int
    rot: int
    lk_row: tuple[int, ...]
    index: int = 0


@dataclass(frozen=True)
class SurgeryDiagram:
    knots: tuple[SurgeredKnot, ...]
    lk: tuple[tuple[int, ...], ...]
    one_handles: int = 0
    distinguished: Distinguished | None = None
    c1_torsion: bool = True

    def __post_init__(self):
        n = len(self.knots)
        if len(self.lk) != n or any(len(row) != n for row in self.lk):
            raise InputError("linking matrix size does not match the number of knots")
        if n and not is_symmetric(self.lk):
            raise InputError("linking matrix must be symmetric")
        if self.distinguished is not None and len(self.distinguished.lk_row) != n:
            raise InputError("linking row of L0 has the wrong length")
        if self.one_handles < 0:
            raise InputError("number of 1-handles must be non-negative")

    @property
    def plus_count(self) -> int:
        return sum(k.sign == 1 for k in self.knots)

    @property
    def rot_vector(self) -> list[int]:
        return [k.rot for k in self.knots]

    def to_dict(self) -> dict:
        knots = []
        for k in self.knots:
            d = {"tb": k.tb, "rot": k.rot}
            if k.sign is not None:
                d["sign"] = k.sign
            if k.framing_override is not None:
                d["framing"] = k.framing_override
            knots.append(d)
        out = {"one_handles": self.one_handles, "knots": knots,
               "lk": [list(r) for r in self.lk], "c1_torsion": self.c1_torsion}
        if self.distinguished is not None:
            dd = self.distinguished
            out["distinguished"] = {"index": dd.index, "tb": dd.tb, "rot": dd.rot,
                                    "lk_row": list(dd.lk_row)}
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "SurgeryDiagram":
        if not isinstance(d, dict):
            raise InputError("surgery diagram must be a JSON object")
        try:
            knots = []
            for k in d["knots"]:
                sign = k.get("sign")
                framing = k.get("framing")
                knots.append(SurgeredKnot(
                    _int(k["tb"]), _int(k.get("rot", 0)),
                    None if sign is None else _int(sign),
                    None if framing is None else _int(framing)))
            lk = tuple(tuple(_int(x) for x in row) for row in d.get("lk", []))
            dist = None
            if d.get("distinguished") is not None:
                dd = d["distinguished"]
                dist = Distinguished(_int(dd["tb"]), _int(dd.get("rot", 0)),
                                     tuple(_int(x) for x in dd["lk_row"]),
                                     _int(dd.get("index", 0)))
            torsion = d.get("c1_torsion", True)
            if not isinstance(torsion, bool):
                raise InputError("c1_torsion must be a boolean")
            return cls(tuple(knots), lk, _int(d.get("one_handles", 0)), dist, torsion)
        except (KeyError, TypeError, AttributeError) as exc:
            raise InputError(f"malformed surgery diagram: {exc!r}") from None


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"expected an integer, got {x!r}")
    return x


@dataclass(frozen=True)
class LinkingMatrices:
    N: list[list[int]]
    N0: list[list[int]] | None = None


@dataclass(frozen=True)
class FourManifoldInvariants:
    euler: int
    signature: int
    c1_squared: Fraction
    d3: Fraction
    notes: tuple[str, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class DualKnotForms:
    tb_q: Fraction
    rot_q: Fraction
    order: int
    euler: Fraction
    m: int


# -- matrices ---------------------------------------------------------------------


def build_matrices(d: SurgeryDiagram, *, need_l0: bool = False) -> LinkingMatrices:
    n = len(d.knots)
    N = [[d.knots[i].framing if i == j else d.lk[i][j] for j in range(n)] for i in range(n)]
    if d.distinguished is None:
        if need_l0:
            raise MissingDataError("diagram has no distinguished knot L0")
        return LinkingMatrices(N)
    row = list(d.distinguished.lk_row)
    N0 = [[0] + row] + [[row[i]] + N[i] for i in range(n)]
    return LinkingMatrices(N, N0)


def _det_nonzero(N) -> Fraction:
    dn = det(N)
    if dn == 0:
        raise DegenerateSurgeryError("det N = 0: the surgery changes the rational homology")
    return dn


def tb_from_matrices(tb0: int, mats: LinkingMatrices) -> Fraction:
    return tb0 + det(mats.N0) / _det_nonzero(mats.N)


def tb_rational(d: SurgeryDiagram) -> Fraction:
    """``tb(L0) + det N0 / det N``."""
    mats = build_matrices(d, need_l0=True)
    return tb_from_matrices(d.distinguished.tb, mats)


def rot_rational(d: SurgeryDiagram) -> Fraction:
    """``rot(L0) - <rot, N^-1 lk(L0, .)>``; only defined when c1 is torsion."""
    if not d.c1_torsion:
        raise TorsionFlagError("rotation number needs c1(xi) torsion")
    mats = build_matrices(d, need_l0=True)
    _det_nonzero(mats.N)
    if not d.knots:
        return Fraction(d.distinguished.rot)
    x = solve(mats.N, d.distinguished.lk_row)
    return d.distinguished.rot - dot(d.rot_vector, x)


def knot_order(d: SurgeryDiagram) -> int:
    """Order of ``[L0] = sum lk(L0, Li) mu_i`` in ``Z^n / N Z^n``."""
    mats = build_matrices(d, need_l0=True)
    if not d.knots:
        return 1
    _det_nonzero(mats.N)
    return class_order(mats.N, d.distinguished.lk_row)


def signature_sym(m) -> int:
    return signature(m)


def fourmanifold_pack(d: SurgeryDiagram) -> FourManifoldInvariants:
    """Euler characteristic, signature, ``c1^2`` and ``d3`` of the handle
    body ``B^4`` + 1-handles + 2-handles along the diagram.

    ``d3 = (c1^2 - 3 sigma - 2 chi)/4 + q`` where ``q`` counts contact
    (+1)-surgeries.
    """
    if not d.c1_torsion:
        raise TorsionFlagError("c1^2 needs c1(xi) torsion")
    if any(k.sign is None for k in d.knots):
        raise MissingDataError("d3 needs contact surgery signs on every knot")
    N = build_matrices(d).N
    _det_nonzero(N)
    chi = 1 - d.one_handles + len(d.knots)
    sigma = signature(N) if N else 0
    rot = d.rot_vector
    c1sq = dot(solve(N, rot), rot) if N else Fraction(0)
    d3 = (c1sq - 3 * sigma - 2 * chi) / 4 + d.plus_count
    notes = (SPIN_C_NOTE,) if abs(det(N)) % 2 == 0 else ()
    return FourManifoldInvariants(chi, sigma, c1sq, d3, notes)


def c1_dual_class(d: SurgeryDiagram,
                  slides: Sequence[tuple[int, int, int]] = ()) -> list[tuple[int, int]]:
    """``PD c1 = sum rot_i [mu_i]`` reduced modulo the surgery relations.

    ``slides`` is an optional list of handle slides ``(i, j, sign)``
    applied first (knot ``i`` becomes ``L_i + sign L_j``); this changes the
    meridian basis in which the answer is written, not the class itself.
    The relation lattice is put in echelon form clearing the last index
    first, so the representative is pushed onto low-index meridians.
    Returns the non-zero ``(coefficient, knot index)`` pairs (0-based).
    """
    N = build_matrices(d).N
    if not N:
        return []
    _det_nonzero(N)
    rot = d.rot_vector
    mats = LinkingMatrices(N)
    for i, j, sign in slides:
        mats = handle_slide(mats, i, j, sign)
        rot[i] += sign * rot[j]
    basis = echelon_lattice_basis(mats.N)
    v = reduce_mod_lattice(rot, basis)
    return [(c, i) for i, c in enumerate(v) if c]


def model_slides(g: int, n: int) -> list[tuple[int, int, int]]:
    """Slides of every stabilised push-off over ``L`` in the model diagram,
    after which each of them is a -1 framed unknot linking ``L`` once."""
    return [(i, 0, -1) for i in range(1, n - 2 * g + 1)]


def loose_bound_holds(tb_q: SlopeLike, rot_q: SlopeLike, euler_knot, order_r: int) -> bool:
    """``-|tb_Q| + |rot_Q| <= -chi/r``.  ``False`` means the knot is loose."""
    if order_r < 1:
        raise DomainError("order must be positive")
    tb_q = as_slope(tb_q).fraction
    rot_q = as_slope(rot_q).fraction
    return -abs(tb_q) + abs(rot_q) <= -Fraction(euler_knot) / order_r


def dual_knot_closed_forms(t: int, r: int, n: int, g: int) -> DualKnotForms:
    """Invariants of the image of L after contact ``(+n)``-surgery on L,
    where ``tb(L) = t``, ``rot(L) = r`` and L has genus ``g``."""
    if t + n == 0:
        raise DomainError("t + n must be non-zero")
    if n < 1 or g < 0:
        raise DomainError("need n >= 1 and g >= 0")
    m = gcd(n, abs(t + n))
    return DualKnotForms(
        tb_q=Fraction(t * n, t + n),
        rot_q=Fraction(r * n - t * n + t, t + n),
        order=abs(t + n) // m,
        euler=Fraction(n * (1 - 2 * g) + n * t - t, m),
        m=m,
    )


def dual_stabilization_loose(t: int, r: int, n: int, g: int) -> bool:
    """Whether large stabilisations of the dual knot break the loose bound,
    evaluated from the closed forms (stabilising with the sign of rot_Q)."""
    f = dual_knot_closed_forms(t, r, n, g)
    if f.tb_q <= 0:
        raise DomainError("the large-k argument needs tb_Q > 0")
    lhs = abs(f.rot_q) + f.tb_q
    return lhs > -f.euler / f.order


# -- diagrams from Ding-Geiges expansions ----------------------------------------------


def diagram_from_expansion(tb: int, rot: int, expansion: PlusMinusOneDiagram, *,
                           one_handles: int = 0, with_l0: bool = True,
                           c1_torsion: bool = True) -> SurgeryDiagram:
    """Surgery diagram of a (+-1) expansion on a Legendrian ``L``.

    Each entry inherits the stabilisations of its ancestors.  The linking
    number of two push-offs is the Thurston-Bennequin number of their
    nearest common ancestor (``L`` itself if none).  ``L0`` is one more
    push-off of ``L``.
    """
    entries = list(expansion)
    tbs, rots, parents = [], [], []
    for i, e in enumerate(entries):
        if e.parent == "L" or i == 0:
            base_tb, base_rot, parent = tb, rot, None
        else:
            base_tb, base_rot, parent = tbs[i - 1], rots[i - 1], i - 1
        tbs.append(base_tb - e.stabilizations)
        rots.append(base_rot - e.negative_stabilizations + e.positive_stabilizations)
        parents.append(parent)

    def ancestors(i):
        out = []
        while i is not None:
            out.append(i)
            i = parents[i]
        return out

    n = len(entries)
    lk = [[0] * n for _ in range(n)]
    for i in range(n):
        ai = ancestors(i)
        for j in range(n):
            if i != j:
                common = next((a for a in ancestors(j) if a in ai), None)
                lk[i][j] = tb if common is None else tbs[common]
    knots = tuple(SurgeredKnot(tbs[i], rots[i], entries[i].surgery_sign) for i in range(n))
    dist = Distinguished(tb, rot, tuple([tb] * n)) if with_l0 else None
    return SurgeryDiagram(knots, tuple(tuple(r) for r in lk), one_handles, dist, c1_torsion)


def model_diagram(g: int, n: int) -> SurgeryDiagram:
    """Contact ``(n - 2g + 1)``-surgery on a genus ``g`` binding ``L`` with
    ``tb = 2g - 1`` and ``rot = 0`` in ``#2g S^1 x S^2``; topologically
    ``n``-surgery."""
    if g < 1 or n < 2 * g:
        raise DomainError("need g >= 1 and n >= 2g")
    dg = ding_geiges_expand(ContactSurgerySpec(Slope(n - 2 * g + 1)))
    return diagram_from_expansion(2 * g - 1, 0, dg, one_handles=2 * g)


def model_matrix(g: int, n: int) -> list[list[int]]:
    """The displayed linking matrix: ``2g`` then ``2g-3`` on the diagonal,
    ``2g-1`` against the first knot and ``2g-2`` elsewhere."""
    size = n - 2 * g + 1
    m = [[2 * g - 2] * size for _ in range(size)]
    for i in range(size):
        m[i][i] = 2 * g - 3
        m[0][i] = m[i][0] = 2 * g - 1
    m[0][0] = 2 * g
    return m


def n_surgery_inverse_closed_form(t, n: int) -> list[list]:
    """Closed-form inverse of the ``(+n)``-surgery linking matrix.

    ``t`` may be an integer or any object supporting ring arithmetic and
    division (e.g. a symbolic variable).
    """
    def entry(i, j):
        if i == 0 and j == 0:
            return n - (n - 1) * t
        if i == 0 or j == 0:
            return t
        return 1 - n - t if i == j else 1
    return [[_div(entry(i, j), t + n) for j in range(n)] for i in range(n)]


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


# -- Kirby moves on linking data ---------------------------------------------------------


def handle_slide(mats: LinkingMatrices, i: int, j: int, sign: int = 1) -> LinkingMatrices:
    """Slide surgered knot ``i`` over surgered knot ``j`` (0-based).

    The class of knot ``i`` becomes ``L_i + sign * L_j``, i.e. ``N`` is
    replaced by ``P N P^T`` with ``P = I + sign * E_ij``; ``L0``'s linking
    row transforms the same way.
    """
    if i == j:
        raise DomainError("cannot slide a knot over itself")
    if sign not in (1, -1):
        raise DomainError("slide sign must be +1 or -1")

    def conj(m, off):
        m = [list(r) for r in m]
        a, b = i + off, j + off
        m[a] = [x + sign * y for x, y in zip(m[a], m[b])]
        for r in m:
            r[a] += sign * r[b]
        return m
    return LinkingMatrices(conj(mats.N, 0), None if mats.N0 is None else conj(mats.N0, 1))


def blow_down(mats: LinkingMatrices, k: int) -> LinkingMatrices:
    """Remove a +-1 framed unknot ``k`` (0-based); every other entry
    changes by ``- N_ak N_kb / N_kk``."""
    e = mats.N[k][k]
    if e not in (1, -1):
        raise DomainError("can only blow down a +-1 framed component")

    def reduce(m, idx):
        keep = [a for a in range(len(m)) if a != idx]
        return [[m[a][b] - m[a][idx] * m[idx][b] * e for b in keep] for a in keep]
    return LinkingMatrices(reduce(mats.N, k), None if mats.N0 is None else reduce(mats.N0, k + 1))
