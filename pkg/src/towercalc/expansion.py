"""Expansion of static pairs over tower members, with weighted membership.

A static pair (E, H) of ranks (q, q+1) satisfies div E = 0 (q >= 1),
rot H = 0 (q+1 <= n-1) and is annihilated by a power of the coupled map
M(E, H) = (div H, rot E).  Such pairs decompose exactly into tower members
of floors <= K-1 (both signs) plus at most one exceptional bootstrapped
member per side at height K.  The decomposition is computed degree by degree
through exact sphere-Gram solves; a nonzero residual means the input was not
a static pair of the stated height.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConsistencyError
from .forms import Form, sphere_inner_product
from .indices import in_weighted_l2, multiplicity, enumerate_excluded
from .linalg import matrix_rank, solve_posdef
from .ring import QQ, qq, qq_str
from .towers import (ExceptionalFormDescriptor, TowerContext, TowerIndex,
                     exceptional_form)

_Q0 = QQ(0)


@dataclass
class MaxwellPair:
    """A rank-(q, q+1) pair of forms on the same space."""

    e: Form
    h: Form

    def __post_init__(self):
        if self.e.n != self.h.n:
            raise ValueError("mixed dimensions in pair")
        if self.h.q != self.e.q + 1:
            raise ValueError(
                f"pair ranks must be (q, q+1), got ({self.e.q}, {self.h.q})")

    @property
    def n(self) -> int:
        return self.e.n

    @property
    def q(self) -> int:
        return self.e.q

    def to_obj(self) -> dict:
        return {"schema": "towercalc/1", "kind": "maxwell_pair", "n": self.n,
                "q": self.q, "e": self.e.to_obj(), "h": self.h.to_obj()}

    @classmethod
    def from_obj(cls, obj: dict) -> "MaxwellPair":
        return cls(Form.from_obj(obj["e"]), Form.from_obj(obj["h"]))


def maxwell_map(pair: MaxwellPair) -> MaxwellPair:
    """M(E, H) = (div H, rot E); keeps the (q, q+1) shape."""
    return MaxwellPair(pair.h.div(), pair.e.rot())


def iterated_maxwell_check(pair: MaxwellPair, k: int) -> dict:
    """Is the pair static of height k?  (M^k = 0 plus the line constraints.)"""
    div_e_zero = pair.q == 0 or pair.e.div().is_zero()
    rot_h_zero = pair.h.q == pair.n or pair.h.rot().is_zero()
    cur = pair
    first_zero = None
    for step in range(1, k + 1):
        cur = maxwell_map(cur)
        if cur.e.is_zero() and cur.h.is_zero():
            first_zero = step
            break
    m_power_zero = first_zero is not None
    return {"passed": bool(div_e_zero and rot_h_zero and m_power_zero),
            "div_e_zero": div_e_zero, "rot_h_zero": rot_h_zero,
            "m_power_zero": m_power_zero, "first_zero_power": first_zero}


# ---------------------------------------------------------------------------
# candidates
# ---------------------------------------------------------------------------

def tower_candidates(ctx: TowerContext, rank: int, line: str, degree: int,
                     k_max: int) -> list:
    """All resolvable (index, member) of one rank/line at one coefficient
    degree with floor <= k_max, in deterministic order."""
    n = ctx.n
    out = []
    for k in range(k_max + 1):
        for sign in (1, -1):
            sigma = degree - k if sign > 0 else k - n - degree
            if sigma < 0:
                continue
            count = multiplicity(n, rank, line, sigma, k)
            for m in range(1, count + 1):
                idx = TowerIndex(sign, k, sigma, m)
                f = ctx.d_form(rank, idx) if line == "D" else ctx.r_form(rank, idx)
                if f is not None and not f.is_zero():
                    out.append((idx, f))
    return out


@dataclass
class SideExpansion:
    """One side of an expansion: tower coefficients plus the exceptional slot."""

    coeffs: dict = field(default_factory=dict)
    hat_descriptor: object = None
    hat_coeff: object = None          # QQ when the slot exists, else None
    residual: Form = None
    exact: bool = True


def _expand_side(form: Form, rank: int, line: str, k_max: int,
                 ctx: TowerContext,
                 hat: ExceptionalFormDescriptor | None) -> SideExpansion:
    """Degree-by-degree sphere-Gram expansion of one form."""
    n = ctx.n
    side = SideExpansion(residual=Form.zero(n, form.q))
    hat_form = None
    if hat is not None and not hat.is_zero:
        hat_form = hat.resolve(ctx)
        side.hat_descriptor = hat
        side.hat_coeff = _Q0
    degrees = set(form.coefficient_degrees())
    if hat_form is not None:
        degrees.add(hat_form.homogeneous_degree())
    pieces = form.homogeneity_split()
    for degree in sorted(degrees):
        piece = pieces.get(degree, Form.zero(n, form.q))
        cands = tower_candidates(ctx, rank, line, degree, k_max)
        basis = [f for _, f in cands]
        slots = [idx for idx, _ in cands]
        if hat_form is not None and hat_form.homogeneous_degree() == degree:
            basis.append(hat_form)
            slots.append("hat")
        if not basis:
            side.residual = side.residual + piece
            continue
        gram = [[sphere_inner_product(a, b) for b in basis] for a in basis]
        if matrix_rank(gram) != len(basis):
            raise ConsistencyError(
                f"dependent expansion candidates at rank {rank} {line}-line "
                f"degree {degree}")
        rhs = [sphere_inner_product(piece, b) for b in basis]
        sol = solve_posdef(gram, rhs)
        rem = piece
        for c, b in zip(sol, basis):
            if c:
                rem = rem - b.scale(c)
        for slot, c in zip(slots, sol):
            if slot == "hat":
                side.hat_coeff = c
            elif c:
                side.coeffs[slot] = c
        side.residual = side.residual + rem
    side.exact = side.residual.is_zero()
    return side


@dataclass
class ExpansionResult:
    n: int
    q: int
    k_max: int
    e_side: SideExpansion
    h_side: SideExpansion

    @property
    def exact(self) -> bool:
        return self.e_side.exact and self.h_side.exact

    def reconstruct(self, ctx: TowerContext) -> MaxwellPair:
        """Rebuild the tower part (coefficients + exceptional slots)."""
        e = Form.zero(self.n, self.q)
        for idx, c in sorted(self.e_side.coeffs.items()):
            e = e + ctx.d_form(self.q, idx).scale(c)
        if self.e_side.hat_coeff:
            e = e + self.e_side.hat_descriptor.resolve(ctx).scale(self.e_side.hat_coeff)
        h = Form.zero(self.n, self.q + 1)
        for idx, c in sorted(self.h_side.coeffs.items()):
            h = h + ctx.r_form(self.q + 1, idx).scale(c)
        if self.h_side.hat_coeff:
            h = h + self.h_side.hat_descriptor.resolve(ctx).scale(self.h_side.hat_coeff)
        return MaxwellPair(e, h)

    def to_obj(self) -> dict:
        def side_obj(side):
            return {
                "coeffs": [dict(idx.to_obj(), coeff=qq_str(c))
                           for idx, c in sorted(side.coeffs.items())],
                "hat": None if side.hat_descriptor is None
                       else side.hat_descriptor.to_obj(),
                "hat_coeff": None if side.hat_coeff is None else qq_str(side.hat_coeff),
                "residual_zero": side.residual.is_zero(),
            }
        return {"schema": "towercalc/1", "kind": "expansion", "n": self.n,
                "q": self.q, "k_max": self.k_max, "exact": self.exact,
                "e": side_obj(self.e_side), "h": side_obj(self.h_side)}


def expand(pair: MaxwellPair, k: int, ctx: TowerContext,
           check_static: bool = True) -> ExpansionResult:
    """Expand a static pair of height k over tower members of floors <= k-1
    plus the two height-k exceptional slots."""
    if ctx.n != pair.n:
        raise ValueError("context dimension mismatch")
    if k < 1:
        raise ValueError("height k must be >= 1")
    if check_static:
        rep = iterated_maxwell_check(pair, k)
        if not rep["passed"]:
            raise ValueError(f"input is not a static pair of height {k}: {rep}")
    n, q = pair.n, pair.q
    e_hat = exceptional_form("D_hat", n, q, k)
    h_hat = exceptional_form("R_hat", n, q + 1, k)
    e_side = _expand_side(pair.e, q, "D", k - 1, ctx, e_hat)
    h_side = _expand_side(pair.h, q + 1, "R", k - 1, ctx, h_hat)
    return ExpansionResult(n=n, q=q, k_max=k - 1, e_side=e_side, h_side=h_side)


def expansion_commutes_with_maxwell(pair: MaxwellPair, k: int,
                                    ctx: TowerContext) -> dict:
    """M shifts every expansion coefficient down one floor: the coefficient
    of index I in the expansion of M(pair) equals the coefficient of 1I in
    the expansion of pair.  Exceptional slots at height k feed the height-
    (k-1) slots the same way.  Returns a report dict."""
    res = expand(pair, k, ctx)
    image = maxwell_map(pair)
    res_img = expand(image, k - 1, ctx) if k >= 2 else None
    failures = []
    if res_img is not None:
        # E' = div H: D-line coefficients of E' at I = H coefficients at 1I
        for idx, c in res_img.e_side.coeffs.items():
            up = TowerIndex(idx.sign, idx.k + 1, idx.sigma, idx.m)
            if res.h_side.coeffs.get(up, _Q0) != c:
                failures.append(f"E' coeff {idx} != H coeff {up}")
        for idx, c in res.h_side.coeffs.items():
            if idx.k >= 1:
                down = TowerIndex(idx.sign, idx.k - 1, idx.sigma, idx.m)
                if res_img.e_side.coeffs.get(down, _Q0) != c:
                    failures.append(f"H coeff {idx} not propagated to E' {down}")
        for idx, c in res_img.h_side.coeffs.items():
            up = TowerIndex(idx.sign, idx.k + 1, idx.sigma, idx.m)
            if res.e_side.coeffs.get(up, _Q0) != c:
                failures.append(f"H' coeff {idx} != E coeff {up}")
    return {"passed": not failures, "failures": failures}


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def membership_filter(result: ExpansionResult, s) -> dict:
    """Which expansion coefficients violate weight-s membership.

    A pair lies in the weight-s space iff every index carrying a nonzero
    coefficient does, and any nonzero exceptional coefficient survives its
    weight window.
    """
    s = qq(s)
    n = result.n

    def side_report(side, kind):
        offending = [idx for idx, c in sorted(side.coeffs.items())
                     if c and not in_weighted_l2(idx, s, n)]
        hat_ok = True
        if side.hat_coeff:
            desc = side.hat_descriptor
            gated = exceptional_form(kind, n, desc.q, desc.K, s=s)
            hat_ok = not gated.is_zero
        return offending, hat_ok

    e_off, e_hat_ok = side_report(result.e_side, "D_hat")
    h_off, h_hat_ok = side_report(result.h_side, "R_hat")
    passed = not e_off and not h_off and e_hat_ok and h_hat_ok
    return {"passed": passed, "weight": qq_str(s),
            "e_offending": e_off, "h_offending": h_off,
            "e_hat_admissible": e_hat_ok, "h_hat_admissible": h_hat_ok}


# ---------------------------------------------------------------------------
# harmonic-remainder classification
# ---------------------------------------------------------------------------

def _integrable_at(form: Form, s, n: int) -> bool:
    """Every nonzero homogeneous piece has degree < -s - n/2."""
    s = qq(s)
    bound = -s - QQ(n, 2)
    return all(qq(d) < bound for d in form.coefficient_degrees())


def lemma34_classify(e: Form, s, ctx: TowerContext) -> dict:
    """Classify a harmonic remainder by which of its two derivatives is
    integrable one weight up, and name the finite data that spans it.

    Returns {"class", "rot_integrable", "div_integrable", "line",
    "indices", "exceptional"}; class is one of "both", "div_only",
    "rot_only", "unclassified".
    """
    n = ctx.n
    s = qq(s)
    q = e.q
    rot_ok = e.q == n or _integrable_at(e.rot(), s + 1, n)
    div_ok = e.q == 0 or _integrable_at(e.div(), s + 1, n)
    if div_ok and rot_ok:
        return {"class": "both", "rot_integrable": True, "div_integrable": True,
                "line": "D",
                "indices": enumerate_excluded(n, q, "D", 0, s),
                "exceptional": exceptional_form("D_check", n, q, 1, s=s)}
    if div_ok:
        return {"class": "div_only", "rot_integrable": False,
                "div_integrable": True, "line": "D",
                "indices": enumerate_excluded(n, q, "D", 1, s),
                "exceptional": exceptional_form("D_check", n, q, 2, s=s)}
    if rot_ok:
        return {"class": "rot_only", "rot_integrable": True,
                "div_integrable": False, "line": "R",
                "indices": enumerate_excluded(n, q, "R", 1, s),
                "exceptional": exceptional_form("R_check", n, q, 2, s=s)}
    return {"class": "unclassified", "rot_integrable": False,
            "div_integrable": False, "line": "", "indices": [],
            "exceptional": None}
