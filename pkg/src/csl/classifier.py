"""Rule engine deciding tightness of surgered contact manifolds.

Each rule is a known theorem turned into a predicate on :class:`KnotData`
and a surgery coefficient.  Rules only ever certify; when nothing fires
the verdict is ``UNKNOWN``.  A vanishing contact invariant is recorded in
the certificate but never treated as overtwistedness.

Coefficients for transverse surgery are topological (Seifert framing).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Iterable

from .errors import (DomainError, HypothesisNotMetError, InconsistencyError,
                     InputError, MissingDataError)
from .invariants import dual_knot_closed_forms, loose_bound_holds
from .openbook import shift_to_zero
from .slope import INF, Slope, SlopeLike, as_slope

__all__ = [
    "Outcome", "KnotData", "Verdict", "Region", "RULES",
    "classify_inadmissible_transverse", "classify_contact_positive",
    "classify_link_surgery", "contact_width", "tight_interval",
    "connect_sum", "preset", "PRESETS", "torus_knot", "kmn",
]


class Outcome(enum.Enum):
    OVERTWISTED = "Overtwisted"
    TIGHT_NONVANISHING = "TightNonVanishing"
    TIGHT = "Tight"
    NONVANISHING_HF = "NonVanishingHF"
    UNKNOWN = "Unknown"


# rule id -> short statement of what it certifies
RULES = {
    "Rem-below-page": "inadmissible surgery on a fibred binding at or below the page slope "
                      "makes a Legendrian push-off on the page bound an overtwisted disc",
    "Thm-all-OT-surgeries": "sl < -2g-1 with c1 torsion: every inadmissible surgery is "
                            "overtwisted; with rot <= 0 also every positive contact surgery",
    "Cor-negative-torus": "every inadmissible surgery on a negative torus knot in S^3 is overtwisted",
    "Thm-preserve-tightness": "fibred binding supporting a tight structure: inadmissible "
                              "r-surgery is tight for r > 2g-1, non-vanishing if c is",
    "Thm-HP": "fibred binding with c != 0: inadmissible r-surgery keeps c != 0 for r >= 2g",
    "Thm-non-fibred": "g4 > 0, c != 0 and a Legendrian approximation with tb = 2g4-1: "
                      "inadmissible r-surgery keeps c != 0 for r > 2g4-1",
    "Thm-Golla": "in S^3, integer n: c(xi_n) != 0 iff sl = 2tau-1, n >= 2tau and tau = nu",
    "Thm-n-surgery-OT": "tb <= -n-1 and |n rot - (n-1) tb| > n(2g-1) + tb: contact "
                        "(+n)-surgery is overtwisted (dual knot becomes loose)",
    "Lutz-half-twist": "inadmissible infinity-surgery is a half Lutz twist",
    "Thm-link-surgery": "model multi-binding open books: shift moves reach a zero "
                        "coefficient, i.e. page-slope surgery, which is overtwisted",
    "Adm-below-tb": "admissible surgery below tb on a Legendrian approximation is negative "
                    "contact surgery, which keeps a tight structure tight",
    "Fact-figure-eight": "all inadmissible surgeries on the figure-eight knot in S^3 are "
                         "overtwisted (convex surface argument; optional fact)",
}

@dataclass(frozen=True)
class KnotData:
    g: int
    sl_max: int | None = None
    ambient: str = "S3"
    g4: int | None = None
    tb_max: int | None = None
    rot_at_tbmax: int | None = None
    tau: int | None = None
    nu: int | None = None
    fibred_supporting: bool = False
    ambient_tight: bool = True
    ambient_c_nonzero: bool = True
    c1_torsion: bool = True
    torus_type: tuple[int, int] | None = None
    name: str | None = None

    def __post_init__(self):
        if self.g < 0:
            raise DomainError("genus must be non-negative")
        if self.g4 is not None and not 0 <= self.g4 <= self.g:
            raise DomainError("need 0 <= g4 <= g")
        if (self.sl_max is not None and self.tb_max is not None
                and self.rot_at_tbmax is not None
                and self.sl_max < self.tb_max - self.rot_at_tbmax):
            raise DomainError("sl_max is smaller than tb_max - rot of its Legendrian approximation")

    @property
    def in_s3(self) -> bool:
        return self.ambient.upper() in ("S3", "S^3")

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            out[f.name] = list(v) if isinstance(v, tuple) else v
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "KnotData":
        if not isinstance(d, dict):
            raise InputError("knot data must be a JSON object")
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise InputError(f"unknown knot data fields: {sorted(unknown)}")
        if "g" not in d:
            raise InputError("knot data needs the genus g")
        kw = {}
        for k, v in d.items():
            if k in ("fibred_supporting", "ambient_tight", "ambient_c_nonzero", "c1_torsion"):
                if not isinstance(v, bool):
                    raise InputError(f"{k} must be a boolean")
            elif k in ("ambient", "name"):
                if v is not None and not isinstance(v, str):
                    raise InputError(f"{k} must be a string")
            elif k == "torus_type":
                if v is not None:
                    if (not isinstance(v, list) or len(v) != 2
                            or not all(isinstance(x, int) and not isinstance(x, bool) for x in v)):
                        raise InputError("torus_type must be a pair of integers")
                    v = tuple(v)
            elif v is not None and (isinstance(v, bool) or not isinstance(v, int)):
                raise InputError(f"{k} must be an integer")
            kw[k] = v
        return cls(**kw)


@dataclass
class Verdict:
    outcome: Outcome
    rules_fired: list[dict] = field(default_factory=list)
    rules_skipped: list[dict] = field(default_factory=list)
    certificate: dict = field(default_factory=dict)

    @property
    def rule_ids(self) -> list[str]:
        return [r["id"] for r in self.rules_fired]

    def to_dict(self) -> dict:
        return {"outcome": self.outcome.value, "rules_fired": self.rules_fired,
                "rules_skipped": self.rules_skipped, "certificate": self.certificate}

    def headline(self) -> str:
        word = {Outcome.OVERTWISTED: "OVERTWISTED",
                Outcome.TIGHT_NONVANISHING: "TIGHT, c != 0",
                Outcome.TIGHT: "TIGHT",
                Outcome.NONVANISHING_HF: "c != 0",
                Outcome.UNKNOWN: "UNKNOWN"}[self.outcome]
        if not self.rules_fired:
            return word
        cites = "; ".join(r["id"].replace("-", " ", 1) for r in self.rules_fired)
        return f"{word} ({cites})"


class _Collector:
    def __init__(self):
        self.fired: list[tuple[str, Outcome]] = []
        self.skipped: list[dict] = []
        self.cert: dict = {}
        self.vanishing_by: str | None = None

    def fire(self, rule: str, outcome: Outcome):
        self.fired.append((rule, outcome))

    def skip(self, rule: str, reason: str):
        self.skipped.append({"id": rule, "reason": reason})

    def verdict(self) -> Verdict:
        outs = {o for _, o in self.fired}
        ot = Outcome.OVERTWISTED in outs
        tight = bool(outs & {Outcome.TIGHT, Outcome.TIGHT_NONVANISHING, Outcome.NONVANISHING_HF})
        nonvanishing = bool(outs & {Outcome.TIGHT_NONVANISHING, Outcome.NONVANISHING_HF})
        if ot and tight:
            raise InconsistencyError(
                "rules disagree (overtwisted and tight both certified): "
                + ", ".join(r for r, _ in self.fired))
        if nonvanishing and self.vanishing_by:
            raise InconsistencyError(
                f"{self.vanishing_by} says c vanishes but another rule certifies c != 0")
        if ot:
            outcome = Outcome.OVERTWISTED
        elif nonvanishing:
            outcome = Outcome.TIGHT_NONVANISHING
        elif tight:
            outcome = Outcome.TIGHT
        else:
            outcome = Outcome.UNKNOWN
        fired = [{"id": r, "citation": RULES[r], "gives": o.value} for r, o in self.fired]
        return Verdict(outcome, fired, self.skipped, self.cert)


def _negative_torus(k: KnotData) -> bool:
    if k.torus_type is None or not k.in_s3:
        return False
    p, q = k.torus_type
    return (p < 0) != (q < 0) and min(abs(p), abs(q)) >= 2


def _golla(c: _Collector, k: KnotData, n: Slope, sl: int | None, label: str):
    rule = "Thm-Golla"
    if not k.in_s3:
        return c.skip(rule, "ambient is not S^3")
    if not k.ambient_tight:
        return c.skip(rule, "ambient structure is not the tight one on S^3")
    if n.is_infinite or not n.is_integer():
        return c.skip(rule, "coefficient is not an integer")
    if sl is None or k.tau is None or k.nu is None:
        return c.skip(rule, "needs sl, tau and nu")
    conds = {"sl = 2tau-1": sl == 2 * k.tau - 1,
             "n >= 2tau": n.p >= 2 * k.tau,
             "tau = nu": k.tau == k.nu}
    c.cert["golla"] = {"n": str(n), "conditions": conds, "via": label}
    if all(conds.values()):
        c.fire(rule, Outcome.NONVANISHING_HF)
    else:
        c.cert["golla"]["contact_invariant"] = "vanishes"
        c.vanishing_by = rule


def classify_inadmissible_transverse(k: KnotData, r: SlopeLike, *, use_golla: bool = True,
                                     use_facts: bool = False) -> Verdict:
    """Verdict for inadmissible transverse ``r``-surgery on the knot."""
    r = as_slope(r)
    c = _Collector()
    if r.is_infinite:
        c.fire("Lutz-half-twist", Outcome.OVERTWISTED)
        return c.verdict()
    x = r.fraction
    g = k.g

    if not k.fibred_supporting:
        c.skip("Rem-below-page", "knot is not a fibred binding supporting the structure")
    elif g < 1:
        c.skip("Rem-below-page", "disc page: the push-off cannot be Legendrian realised")
    elif x <= 0:
        c.fire("Rem-below-page", Outcome.OVERTWISTED)

    if k.sl_max is None:
        c.skip("Thm-all-OT-surgeries", "sl unknown")
    elif not k.c1_torsion:
        c.skip("Thm-all-OT-surgeries", "c1 not torsion")
    elif k.sl_max < -2 * g - 1:
        c.fire("Thm-all-OT-surgeries", Outcome.OVERTWISTED)
        c.cert["sl_bound"] = {"sl": k.sl_max, "-2g-1": -2 * g - 1}

    if _negative_torus(k):
        c.fire("Cor-negative-torus", Outcome.OVERTWISTED)

    if use_facts and k.name == "figure-eight" and k.in_s3:
        c.fire("Fact-figure-eight", Outcome.OVERTWISTED)

    if not (k.fibred_supporting and k.ambient_tight):
        c.skip("Thm-preserve-tightness", "needs a fibred binding supporting a tight structure")
    elif x > 2 * g - 1:
        c.fire("Thm-preserve-tightness",
               Outcome.TIGHT_NONVANISHING if k.ambient_c_nonzero else Outcome.TIGHT)

    if not (k.fibred_supporting and k.ambient_c_nonzero):
        c.skip("Thm-HP", "needs a fibred binding supporting a structure with c != 0")
    elif x >= 2 * g:
        c.fire("Thm-HP", Outcome.NONVANISHING_HF)

    if k.g4 is None or k.tb_max is None:
        c.skip("Thm-non-fibred", "needs g4 and tb_max")
    elif k.g4 > 0 and k.ambient_c_nonzero and k.tb_max == 2 * k.g4 - 1 and x > 2 * k.g4 - 1:
        c.fire("Thm-non-fibred", Outcome.NONVANISHING_HF)

    if use_golla:
        _golla(c, k, r, k.sl_max, "transverse coefficient")
    return c.verdict()


def classify_contact_positive(k: KnotData, tb: int, rot: int, n: int) -> Verdict:
    """Verdict for contact ``(+n)``-surgery (all negative stabilisations)
    on a Legendrian approximation with the given ``tb`` and ``rot``.

    This is inadmissible transverse ``(tb + n)``-surgery on the push-off,
    whose self-linking is ``tb - rot``.
    """
    if n < 1:
        raise DomainError("n must be a positive integer")
    c = _Collector()
    g = k.g
    sl = tb - rot

    if not k.c1_torsion:
        c.skip("Thm-n-surgery-OT", "c1 not torsion")
    elif tb > -n - 1:
        c.skip("Thm-n-surgery-OT", "needs tb <= -n-1")
    else:
        lhs = abs(n * rot - (n - 1) * tb)
        rhs = n * (2 * g - 1) + tb
        forms = dual_knot_closed_forms(tb, rot, n, g)
        c.cert["n_surgery"] = {
            "lhs": lhs, "rhs": rhs,
            "dual_tb_q": str(forms.tb_q), "dual_rot_q": str(forms.rot_q),
            "dual_order": forms.order, "dual_euler": str(forms.euler),
        }
        if lhs > rhs:
            c.fire("Thm-n-surgery-OT", Outcome.OVERTWISTED)

    if not k.c1_torsion:
        c.skip("Thm-all-OT-surgeries", "c1 not torsion")
    elif sl < -2 * g - 1:
        c.fire("Thm-all-OT-surgeries", Outcome.OVERTWISTED)
        # the two stabilised duals of the (+1) dual knot are loose
        t = tb
        if t != -1:
            minus = (Fraction(-1, t + 1), Fraction(-(sl + 1), t + 1))
            order = abs(t + 1)
            c.cert["loose_dual_minus"] = {
                "tb_q": str(minus[0]), "rot_q": str(minus[1]), "order": order,
                "bound_holds": loose_bound_holds(Slope.from_fraction(minus[0]),
                                                 Slope.from_fraction(minus[1]),
                                                 1 - 2 * g, order)}
        if rot > 0:
            c.cert["note"] = "rot > 0: only the all-negative choice is certified"

    _golla(c, k, Slope(tb + n), sl, "topological coefficient tb + n")
    return c.verdict()


def classify_link_surgery(k: Iterable[int]) -> Verdict:
    """Inadmissible positive integer surgery on every binding component of
    a trivial-monodromy model open book."""
    k = [int(x) for x in k]
    steps = shift_to_zero(k)
    c = _Collector()
    c.fire("Thm-link-surgery", Outcome.OVERTWISTED)
    c.cert["shift_moves"] = steps
    c.cert["moves"] = len(steps)
    return c.verdict()


def contact_width(k: KnotData) -> Slope:
    missing = []
    if not k.fibred_supporting:
        missing.append("fibred binding supporting the structure")
    if not k.ambient_tight:
        missing.append("tight ambient structure")
    if k.sl_max != 2 * k.g - 1:
        missing.append("sl = 2g-1")
    if k.tb_max != 2 * k.g - 1:
        missing.append("tb_max = 2g-1")
    if missing:
        raise HypothesisNotMetError("contact width not determined: needs " + ", ".join(missing))
    return Slope(2 * k.g - 1)


# -- t(K) -------------------------------------------------------------------------------


@dataclass(frozen=True)
class Region:
    lo: Fraction | None          # None means -infinity
    hi: Fraction | None          # None means +infinity
    lo_closed: bool
    hi_closed: bool
    outcome: Outcome
    rules: tuple[str, ...]
    kind: str                    # "admissible" or "inadmissible"

    def contains(self, x) -> bool:
        x = Fraction(x)
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.hi_closed)):
            return False
        return True

    def describe(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        if self.lo is not None and self.lo == self.hi:
            return "{" + lo + "}"
        return ("[" if self.lo_closed else "(") + lo + ", " + hi + ("]" if self.hi_closed else ")")

    def to_dict(self) -> dict:
        return {"interval": self.describe(), "outcome": self.outcome.value,
                "rules": list(self.rules), "kind": self.kind}


def tight_interval(k: KnotData) -> dict:
    """Partition of the slopes into tight / overtwisted / unknown pieces.

    Below ``a = tb_max`` admissible surgery is used; from ``a`` upwards
    inadmissible surgery.  The integer-only Golla criterion is left out so
    that each piece is a genuine interval.  The point infinity
    (inadmissible, a half Lutz twist) is reported separately.
    """
    a = k.tb_max
    pieces: list[Region] = []
    notes = []
    if a is not None:
        if k.ambient_tight:
            pieces.append(Region(None, Fraction(a), False, False, Outcome.TIGHT,
                                 ("Adm-below-tb",), "admissible"))
        else:
            pieces.append(Region(None, Fraction(a), False, False, Outcome.UNKNOWN, (), "admissible"))
        start = Fraction(a)
    else:
        notes.append("tb_max unknown: whole line classified as inadmissible surgery")
        start = None

    cuts = {Fraction(2 * k.g - 1), Fraction(2 * k.g), Fraction(0)}
    if k.g4 is not None:
        cuts.add(Fraction(2 * k.g4 - 1))
    if start is not None:
        cuts = {x for x in cuts if x > start} | {start}
    cuts = sorted(cuts)

    def judge(x) -> tuple[Outcome, tuple[str, ...]]:
        v = classify_inadmissible_transverse(k, Slope.from_fraction(x), use_golla=False)
        return v.outcome, tuple(v.rule_ids)

    raw: list[Region] = []
    if start is None:
        o, rs = judge(cuts[0] - 1)
        raw.append(Region(None, cuts[0], False, False, o, rs, "inadmissible"))
    for i, x in enumerate(cuts):
        o, rs = judge(x)
        raw.append(Region(x, x, True, True, o, rs, "inadmissible"))
        nxt = cuts[i + 1] if i + 1 < len(cuts) else None
        mid = (x + nxt) / 2 if nxt is not None else x + 1
        o, rs = judge(mid)
        raw.append(Region(x, nxt, False, False, o, rs, "inadmissible"))

    merged: list[Region] = []
    for reg in raw:
        if merged and merged[-1].outcome == reg.outcome:
            prev = merged[-1]
            rules = prev.rules + tuple(r for r in reg.rules if r not in prev.rules)
            merged[-1] = Region(prev.lo, reg.hi, prev.lo_closed, reg.hi_closed,
                                reg.outcome, rules, "inadmissible")
        else:
            merged.append(reg)
    pieces += merged
    infinity = classify_inadmissible_transverse(k, INF)
    return {"regions": pieces, "infinity": infinity, "notes": notes}


# -- connected sums and presets -----------------------------------------------------------


def connect_sum(a: KnotData, b: KnotData) -> KnotData:
    """Data for ``a # b`` built from maximal-tb Legendrian representatives."""
    for name, k in (("first", a), ("second", b)):
        if not k.in_s3:
            raise MissingDataError(f"{name} knot is not in S^3")
        if k.tb_max is None or k.rot_at_tbmax is None:
            raise MissingDataError(f"{name} knot lacks tb_max/rot data")
    tb = a.tb_max + b.tb_max + 1
    rot = a.rot_at_tbmax + b.rot_at_tbmax
    g4 = None if a.g4 is None or b.g4 is None else a.g4 + b.g4
    tau = None if a.tau is None or b.tau is None else a.tau + b.tau
    nu = None
    if g4 == 0:
        tau = nu = 0
    return KnotData(g=a.g + b.g, g4=g4, sl_max=tb - rot, tb_max=tb, rot_at_tbmax=rot,
                    tau=tau, nu=nu, fibred_supporting=False,
                    ambient_tight=a.ambient_tight and b.ambient_tight,
                    ambient_c_nonzero=a.ambient_c_nonzero and b.ambient_c_nonzero)


def torus_knot(p: int, q: int) -> KnotData:
    """Torus knot data in the tight S^3.  ``(p, q)`` with ``pq < 0`` is a
    negative torus knot; ``(p, q)`` with both positive a positive one."""
    if min(abs(p), abs(q)) < 2:
        raise DomainError("need |p|, |q| >= 2")
    P, Q = abs(p), abs(q)
    g = (P - 1) * (Q - 1) // 2
    if p * q > 0:
        return KnotData(g=g, g4=g, sl_max=2 * g - 1, tb_max=2 * g - 1, rot_at_tbmax=0,
                        tau=g, nu=g, fibred_supporting=True, torus_type=(P, Q),
                        name=f"T({P},{Q})")
    return KnotData(g=g, g4=g, sl_max=-P * Q, tb_max=-P * Q, rot_at_tbmax=0,
                    tau=-g, nu=-g, fibred_supporting=False, torus_type=(-P, Q),
                    name=f"T({-P},{Q})")


PRESETS = {
    "unknot": KnotData(g=0, g4=0, sl_max=-1, tb_max=-1, rot_at_tbmax=0, tau=0, nu=0,
                       fibred_supporting=True, name="unknot"),
    "right-trefoil": torus_knot(2, 3),
    "left-trefoil": torus_knot(-2, 3),
    "figure-eight": KnotData(g=1, g4=1, sl_max=-3, tb_max=-3, rot_at_tbmax=0, tau=0, nu=0,
                             fibred_supporting=False, name="figure-eight"),
    "8_20": KnotData(g=2, g4=0, sl_max=-1, tb_max=-2, rot_at_tbmax=-1, tau=0, nu=0,
                     name="8_20"),
    "9_46": KnotData(g=1, g4=0, sl_max=-1, tb_max=-1, rot_at_tbmax=0, tau=0, nu=0,
                     name="9_46"),
}


def preset(name: str) -> KnotData:
    if name in PRESETS:
        return PRESETS[name]
    if name.startswith("T(") and name.endswith(")"):
        try:
            p, q = (int(x) for x in name[2:-1].split(","))
        except ValueError:
            raise InputError(f"bad torus knot name {name!r}") from None
        return torus_knot(p, q)
    if name.startswith("K(") and name.endswith(")"):
        try:
            m, n = (int(x) for x in name[2:-1].split(","))
        except ValueError:
            raise InputError(f"bad K(m,n) name {name!r}") from None
        return kmn(m, n)
    raise InputError(f"unknown knot preset {name!r}")


def kmn(m: int, n: int) -> KnotData:
    """``m`` copies of 8_20 summed with ``n`` copies of 9_46 (unknot if both 0)."""
    if m < 0 or n < 0:
        raise DomainError("m, n must be non-negative")
    parts = [PRESETS["8_20"]] * m + [PRESETS["9_46"]] * n
    if not parts:
        return PRESETS["unknot"]
    k = parts[0]
    for other in parts[1:]:
        k = connect_sum(k, other)
    return replace(k, name=f"K({m},{n})")
