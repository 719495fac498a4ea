"""Exact coefficient ring for radial form calculus.

Elements live in Q[x_1..x_n][r, r^-1] modulo the relation r^2 = x_1^2 + ... +
x_n^2.  An element is stored as a sum of homogeneous parts

    sum_{(d, b)}  r^b * p_{d,b}(x)

where p_{d,b} is a homogeneous polynomial of degree d - b that is *reduced*:
no monomial of p_{d,b} has x_1-exponent >= 2.  Reduced polynomials are the
remainders of division by r^2 - sum x_i^2 (leading monomial x_1^2 under
graded lex), so this representation is a canonical normal form: two elements
are equal in the quotient ring iff their part tables are identical.

All arithmetic is exact.  Coefficients are gmpy2.mpq when available,
fractions.Fraction otherwise.
"""

from __future__ import annotations

import itertools

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

_Q0 = QQ(0)
_Q1 = QQ(1)


def qq(value) -> QQ:
    """Coerce an int, string like '-3/2', or rational to the QQ backend."""
    if isinstance(value, QQ):
        return value
    return QQ(str(value)) if isinstance(value, str) else QQ(value)


def qq_str(value) -> str:
    """Serialize a rational as 'p' or 'p/q'."""
    return str(value)


def grlex_key(alpha):
    """Sort key for graded lexicographic monomial order (x1 > x2 > ...)."""
    return (sum(alpha), alpha)


def monomials(n: int, degree: int):
    """Yield all exponent tuples of the given total degree, grlex-descending."""
    if degree < 0:
        return
    out = []
    for bars in itertools.combinations_with_replacement(range(n), degree):
        alpha = [0] * n
        for i in bars:
            alpha[i] += 1
        out.append(tuple(alpha))
    out.sort(key=grlex_key, reverse=True)
    yield from out


def reduced_monomials(n: int, degree: int):
    """Monomials of the given degree with x1-exponent <= 1 (division remainders)."""
    return [alpha for alpha in monomials(n, degree) if alpha[0] <= 1]


def reduced_dimension(n: int, degree: int) -> int:
    """Number of reduced monomials of a degree (0 for negative degrees)."""
    return len(reduced_monomials(n, degree))


# ---------------------------------------------------------------------------
# plain polynomial helpers: a polynomial is a dict {exponent tuple: QQ},
# zero coefficients never stored.
# ---------------------------------------------------------------------------

def _padd_into(acc: dict, poly: dict, scale=_Q1) -> None:
    for alpha, c in poly.items():
        new = acc.get(alpha, _Q0) + scale * c
        if new:
            acc[alpha] = new
        else:
            acc.pop(alpha, None)


def _pmul(p: dict, q: dict) -> dict:
    out: dict = {}
    for a, ca in p.items():
        for b, cb in q.items():
            g = tuple(x + y for x, y in zip(a, b))
            new = out.get(g, _Q0) + ca * cb
            if new:
                out[g] = new
            else:
                out.pop(g, None)
    return out


def _pdiff(p: dict, i: int) -> dict:
    """d/dx_i of a polynomial dict; i is 0-based here."""
    out = {}
    for alpha, c in p.items():
        e = alpha[i]
        if e:
            beta = alpha[:i] + (e - 1,) + alpha[i + 1:]
            out[beta] = out.get(beta, _Q0) + c * e
            if not out[beta]:
                del out[beta]
    return out


def _pmul_var(p: dict, i: int) -> dict:
    """x_i * p, i 0-based."""
    return {alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]: c for alpha, c in p.items()}


def reduce_poly(p: dict, n: int) -> dict:
    """Divide by x_1^2 + ... + x_n^2 repeatedly.

    Returns {r_offset: reduced poly} with p = sum_k (sum x^2)^(k/2) * poly_k,
    offsets even, every returned polynomial free of x_1-exponents >= 2.
    """
    out: dict = {}
    cur = {a: c for a, c in p.items() if c}
    off = 0
    while cur:
        quot: dict = {}
        heavy = [alpha for alpha in cur if alpha[0] >= 2]
        while heavy:
            for alpha in heavy:
                c = cur.pop(alpha, _Q0)
                if not c:
                    continue
                beta = (alpha[0] - 2,) + alpha[1:]
                quot[beta] = quot.get(beta, _Q0) + c
                if not quot[beta]:
                    del quot[beta]
                # x1^2 * x^beta = (sum x^2) x^beta - sum_{j>=2} xj^2 x^beta
                for j in range(1, n):
                    gamma = beta[:j] + (beta[j] + 2,) + beta[j + 1:]
                    new = cur.get(gamma, _Q0) - c
                    if new:
                        cur[gamma] = new
                    else:
                        cur.pop(gamma, None)
            heavy = [alpha for alpha in cur if alpha[0] >= 2]
        if cur:
            out[off] = cur
        cur = quot
        off += 2
    return out


class RadialRingElement:
    """Canonical element of Q[x][r, r^-1] / (r^2 - sum x_i^2).

    parts maps (total_degree, r_exp) -> reduced homogeneous polynomial dict
    of degree total_degree - r_exp.  Do not mutate parts after construction.
    """

    __slots__ = ("n", "parts")

    def __init__(self, n: int, parts: dict | None = None, _canonical: bool = False):
        self.n = n
        if not parts:
            self.parts = {}
        elif _canonical:
            self.parts = parts
        else:
            self.parts = self._canonicalize(n, parts)

    @staticmethod
    def _canonicalize(n: int, raw: dict) -> dict:
        out: dict = {}
        for (d, b), poly in raw.items():
            if not poly:
                continue
            for alpha, c in poly.items():
                if sum(alpha) != d - b:
                    raise ValueError(
                        f"part ({d},{b}) holds monomial {alpha} of degree "
                        f"{sum(alpha)}, expected {d - b}")
            for off, red in reduce_poly(poly, n).items():
                key = (d, b + off)
                if key in out:
                    _padd_into(out[key], red)
                    if not out[key]:
                        del out[key]
                else:
                    out[key] = red
        return out

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "RadialRingElement":
        return cls(n, {}, _canonical=True)

    @classmethod
    def from_rational(cls, n: int, c) -> "RadialRingElement":
        c = qq(c)
        if not c:
            return cls.zero(n)
        return cls(n, {(0, 0): {(0,) * n: c}}, _canonical=True)

    @classmethod
    def one(cls, n: int) -> "RadialRingElement":
        return cls.from_rational(n, 1)

    @classmethod
    def variable(cls, n: int, i: int) -> "RadialRingElement":
        """x_i as an element; i is 1-based."""
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        alpha = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, {(1, 0): {alpha: _Q1}}, _canonical=True)

    @classmethod
    def from_poly(cls, n: int, poly: dict) -> "RadialRingElement":
        """Element from {exponent tuple: coefficient}; canonicalized."""
        raw: dict = {}
        for alpha, c in poly.items():
            c = qq(c)
            if not c:
                continue
            slot = raw.setdefault((sum(alpha), 0), {})
            slot[alpha] = slot.get(alpha, _Q0) + c
        return cls(n, raw)

    @classmethod
    def r_power(cls, n: int, b: int, coef=1) -> "RadialRingElement":
        c = qq(coef)
        if not c:
            return cls.zero(n)
        return cls(n, {(b, b): {(0,) * n: c}}, _canonical=True)

    # -- structure ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.parts

    def degrees(self):
        """Sorted list of total degrees present."""
        return sorted({d for d, _ in self.parts})

    def r_exponents(self):
        return sorted({b for _, b in self.parts})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "RadialRingElement":
        kept = {k: dict(p) for k, p in self.parts.items() if k[0] == d}
        return RadialRingElement(self.n, kept, _canonical=True)

    def min_r_exponent(self):
        return min((b for _, b in self.parts), default=0)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, RadialRingElement):
            other = RadialRingElement.from_rational(self.n, other)
        if self.n != other.n:
            raise ValueError("mixed variable counts")
        out = {k: dict(p) for k, p in self.parts.items()}
        for k, p in other.parts.items():
            if k in out:
                _padd_into(out[k], p)
                if not out[k]:
                    del out[k]
            else:
                out[k] = dict(p)
        return RadialRingElement(self.n, out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        out = {k: {a: -c for a, c in p.items()} for k, p in self.parts.items()}
        return RadialRingElement(self.n, out, _canonical=True)

    def __sub__(self, other):
        return self + (-other if isinstance(other, RadialRingElement)
                       else RadialRingElement.from_rational(self.n, other).__neg__())

    def __mul__(self, other):
        if not isinstance(other, RadialRingElement):
            return self.scale(other)
        if self.n != other.n:
            raise ValueError("mixed variable counts")
        raw: dict = {}
        for (d1, b1), p1 in self.parts.items():
            for (d2, b2), p2 in other.parts.items():
                prod = _pmul(p1, p2)
                if not prod:
                    continue
                key = (d1 + d2, b1 + b2)
                if key in raw:
                    _padd_into(raw[key], prod)
                else:
                    raw[key] = prod
        return RadialRingElement(self.n, raw)

    __rmul__ = __mul__

    def scale(self, c) -> "RadialRingElement":
        c = qq(c)
        if not c:
            return RadialRingElement.zero(self.n)
        out = {k: {a: cc * c for a, cc in p.items()} for k, p in self.parts.items()}
        return RadialRingElement(self.n, out, _canonical=True)

    def mul_r_power(self, b: int) -> "RadialRingElement":
        """Multiply by r^b (a pure index shift, no reduction needed)."""
        out = {(d + b, bb + b): dict(p) for (d, bb), p in self.parts.items()}
        return RadialRingElement(self.n, out, _canonical=True)

    def diff(self, i: int) -> "RadialRingElement":
        """Partial derivative in x_i (1-based), using d/dx_i r^b = b r^(b-2) x_i."""
        if not 1 <= i <= self.n:
            raise ValueError(f"variable index {i} outside 1..{self.n}")
        j = i - 1
        raw: dict = {}

        def put(key, poly):
            if not poly:
                return
            if key in raw:
                _padd_into(raw[key], poly)
            else:
                raw[key] = dict(poly)

        for (d, b), p in self.parts.items():
            put((d - 1, b), _pdiff(p, j))
            if b:
                put((d - 1, b - 2), {a: c * b for a, c in _pmul_var(p, j).items()})
        return RadialRingElement(self.n, raw)

    def __eq__(self, other):
        if not isinstance(other, RadialRingElement):
            if other == 0:
                return self.is_zero()
            return NotImplemented
        return self.n == other.n and self.parts == other.parts

    __hash__ = None

    # -- sphere restriction and evaluation -----------------------------------

    def sphere_restriction(self) -> dict:
        """Restrict to the unit sphere: drop r powers, sum the part polynomials."""
        out: dict = {}
        for _, p in self.parts.items():
            _padd_into(out, p)
        return out

    # -- serialization -------------------------------------------------------

    def to_records(self) -> list:
        recs = []
        for (d, b) in sorted(self.parts):
            terms = [{"alpha": list(alpha), "coef": qq_str(c)}
                     for alpha, c in sorted(self.parts[(d, b)].items(),
                                            key=lambda kv: grlex_key(kv[0]),
                                            reverse=True)]
            recs.append({"degree": d, "r_exp": b, "terms": terms})
        return recs

    @classmethod
    def from_records(cls, n: int, recs: list) -> "RadialRingElement":
        raw: dict = {}
        for rec in recs:
            d, b = int(rec["degree"]), int(rec["r_exp"])
            poly = raw.setdefault((d, b), {})
            for t in rec["terms"]:
                alpha = tuple(int(e) for e in t["alpha"])
                if len(alpha) != n:
                    raise ValueError("exponent tuple length != n")
                c = qq(t["coef"])
                poly[alpha] = poly.get(alpha, _Q0) + c
        return cls(n, raw)

    # -- display -------------------------------------------------------------

    def __str__(self):
        if not self.parts:
            return "0"
        chunks = []
        for (d, b) in sorted(self.parts, key=lambda k: (k[0], -k[1])):
            body = _poly_str(self.parts[(d, b)])
            if b == 0:
                chunks.append(body)
            else:
                rb = "r" if b == 1 else f"r^{b}"
                chunks.append(f"{rb}*({body})")
        return " + ".join(chunks).replace("+ -", "- ")

    def __repr__(self):
        return f"<RadialRingElement n={self.n} {self}>"


def _poly_str(p: dict) -> str:
    terms = []
    for alpha, c in sorted(p.items(), key=lambda kv: grlex_key(kv[0]), reverse=True):
        factors = []
        for i, e in enumerate(alpha):
            if e == 1:
                factors.append(f"x{i + 1}")
            elif e:
                factors.append(f"x{i + 1}^{e}")
        if not factors:
            terms.append(qq_str(c))
        elif c == 1:
            terms.append("*".join(factors))
        elif c == -1:
            terms.append("-" + "*".join(factors))
        else:
            terms.append(qq_str(c) + "*" + "*".join(factors))
    return " + ".join(terms).replace("+ -", "- ")
