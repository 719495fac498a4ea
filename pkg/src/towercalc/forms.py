"""Differential forms on R^n with exact radial-ring coefficients.

A Form of rank q stores nonzero components on strictly increasing 1-based
index tuples of length q.  All operators are exact:

  rot   exterior derivative d (rank q -> q+1)
  div   codifferential (-1)^((q-1)n) * rot * (rank q -> q-1)
  R_op  wedge with the radial 1-form sum x_i dx^i (rank +1)
  T_op  contraction with the Euler vector field sum x_i d/dx_i (rank -1)

rot on rank n and div on rank 0 raise GradeError (the result leaves the
exterior algebra).  T_op on rank 0 is the zero 0-form by convention.
"""

from __future__ import annotations

from .ring import QQ, RadialRingElement, qq

_Q0 = QQ(0)
_Q1 = QQ(1)


class GradeError(ValueError):
    """Operator applied at a rank where its result is undefined."""


def _check_tuple(idx, n, q):
    if len(idx) != q:
        raise ValueError(f"component tuple {idx} has length {len(idx)}, rank is {q}")
    prev = 0
    for i in idx:
        if not prev < i <= n:
            raise ValueError(f"component tuple {idx} not strictly increasing in 1..{n}")
        prev = i


def _merge_sign(left: tuple, right: tuple) -> int:
    """Sign of sorting the concatenation of two increasing disjoint tuples."""
    inv = 0
    for j in right:
        for i in left:
            if i > j:
                inv += 1
    return -1 if inv % 2 else 1


class Form:
    __slots__ = ("n", "q", "components")

    def __init__(self, n: int, q: int, components: dict | None = None):
        if not 0 <= q <= n:
            raise ValueError(f"form rank {q} outside 0..{n}")
        self.n = n
        self.q = q
        comps = {}
        if components:
            for idx, el in components.items():
                idx = tuple(idx)
                _check_tuple(idx, n, q)
                if not isinstance(el, RadialRingElement):
                    raise TypeError("components must be RadialRingElement")
                if not el.is_zero():
                    comps[idx] = el
        self.components = comps

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n: int, q: int) -> "Form":
        return cls(n, q, {})

    @classmethod
    def from_scalar(cls, el: RadialRingElement) -> "Form":
        return cls(el.n, 0, {(): el})

    @classmethod
    def dx(cls, n: int, idx, coef=None) -> "Form":
        """coef * dx^idx; coef defaults to 1."""
        idx = tuple(idx)
        el = coef if isinstance(coef, RadialRingElement) else \
            RadialRingElement.from_rational(n, 1 if coef is None else coef)
        return cls(n, len(idx), {idx: el})

    # -- linear structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def __add__(self, other: "Form") -> "Form":
        if self.n != other.n or self.q != other.q:
            raise ValueError("cannot add forms of different shape")
        out = dict(self.components)
        for idx, el in other.components.items():
            s = out.get(idx)
            new = el if s is None else s + el
            if new.is_zero():
                out.pop(idx, None)
            else:
                out[idx] = new
        return Form(self.n, self.q, out)

    def __neg__(self) -> "Form":
        return Form(self.n, self.q, {i: -e for i, e in self.components.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, c) -> "Form":
        c = qq(c)
        if not c:
            return Form.zero(self.n, self.q)
        return Form(self.n, self.q, {i: e.scale(c) for i, e in self.components.items()})

    def mul_element(self, el: RadialRingElement) -> "Form":
        return Form(self.n, self.q, {i: el * e for i, e in self.components.items()})

    def mul_r_power(self, b: int) -> "Form":
        return Form(self.n, self.q,
                    {i: e.mul_r_power(b) for i, e in self.components.items()})

    def __eq__(self, other):
        return (isinstance(other, Form) and self.n == other.n
                and self.q == other.q and self.components == other.components)

    __hash__ = None

    # -- exterior algebra ----------------------------------------------------

    def wedge(self, other: "Form") -> "Form":
        if self.n != other.n:
            raise ValueError("mixed dimensions")
        if self.q + other.q > self.n:
            return Form.zero(self.n, min(self.q + other.q, self.n))
        out: dict = {}
        for a_idx, a_el in self.components.items():
            a_set = set(a_idx)
            for b_idx, b_el in other.components.items():
                if a_set & set(b_idx):
                    continue
                sign = _merge_sign(a_idx, b_idx)
                key = tuple(sorted(a_idx + b_idx))
                term = (a_el * b_el).scale(sign)
                cur = out.get(key)
                new = term if cur is None else cur + term
                if new.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = new
        return Form(self.n, self.q + other.q, out)

    def hodge_star(self) -> "Form":
        full = tuple(range(1, self.n + 1))
        out = {}
        for idx, el in self.components.items():
            comp = tuple(i for i in full if i not in idx)
            sign = _merge_sign(idx, comp)
            cur = out.get(comp)
            term = el.scale(sign)
            out[comp] = term if cur is None else cur + term
        return Form(self.n, self.n - self.q, out)

    # -- differential operators ----------------------------------------------

    def rot(self) -> "Form":
        """Exterior derivative; GradeError at top rank."""
        if self.q == self.n:
            raise GradeError(f"rot undefined on rank-{self.q} forms in dimension {self.n}")
        out: dict = {}
        for idx, el in self.components.items():
            idx_set = set(idx)
            for i in range(1, self.n + 1):
                if i in idx_set:
                    continue
                d = el.diff(i)
                if d.is_zero():
                    continue
                pos = sum(1 for j in idx if j < i)
                key = tuple(sorted(idx + (i,)))
                term = d.scale(-1 if pos % 2 else 1)
                cur = out.get(key)
                new = term if cur is None else cur + term
                if new.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = new
        return Form(self.n, self.q + 1, out)

    def div(self) -> "Form":
        """Codifferential (-1)^((q-1)n) * rot *; GradeError at rank 0."""
        if self.q == 0:
            raise GradeError("div undefined on rank-0 forms")
        sign = -1 if ((self.q - 1) * self.n) % 2 else 1
        return self.hodge_star().rot().hodge_star().scale(sign)

    def div_direct(self) -> "Form":
        """Index-formula divergence (independent of the Hodge route).

        div(f dx^I) = sum_t (-1)^(t-1) d f/d x_{i_t} dx^{I w/o i_t}.
        Kept as a cross-check for div().
        """
        if self.q == 0:
            raise GradeError("div undefined on rank-0 forms")
        out: dict = {}
        for idx, el in self.components.items():
            for t, i in enumerate(idx):
                d = el.diff(i)
                if d.is_zero():
                    continue
                key = idx[:t] + idx[t + 1:]
                term = d.scale(-1 if t % 2 else 1)
                cur = out.get(key)
                new = term if cur is None else cur + term
                if new.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = new
        return Form(self.n, self.q - 1, out)

    def laplacian(self) -> "Form":
        """Componentwise sum of second partials (sign: Delta = rot div + div rot)."""
        out = {}
        for idx, el in self.components.items():
            acc = RadialRingElement.zero(self.n)
            for i in range(1, self.n + 1):
                acc = acc + el.diff(i).diff(i)
            if not acc.is_zero():
                out[idx] = acc
        return Form(self.n, self.q, out)

    def laplacian_factored(self) -> "Form":
        """rot div + div rot with grade guards; equals laplacian()."""
        total = Form.zero(self.n, self.q)
        if self.q > 0:
            total = total + self.div().rot()
        if self.q < self.n:
            total = total + self.rot().div()
        return total

    # -- radial operators ----------------------------------------------------

    def radial_wedge(self) -> "Form":
        """R_op: wedge with sum x_i dx^i.  Rank n input gives the zero form."""
        if self.q == self.n:
            return Form.zero(self.n, self.n)
        return radial_one_form(self.n).wedge(self)

    def radial_contraction(self) -> "Form":
        """T_op: contraction with the Euler field.  Rank 0 gives the zero 0-form."""
        if self.q == 0:
            return Form.zero(self.n, 0)
        out: dict = {}
        for idx, el in self.components.items():
            for t, i in enumerate(idx):
                xi = RadialRingElement.variable(self.n, i)
                term = (el * xi).scale(-1 if t % 2 else 1)
                key = idx[:t] + idx[t + 1:]
                cur = out.get(key)
                new = term if cur is None else cur + term
                if new.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = new
        return Form(self.n, self.q - 1, out)

    # -- homogeneity ---------------------------------------------------------

    def coefficient_degrees(self) -> list:
        degs = set()
        for el in self.components.values():
            degs.update(el.degrees())
        return sorted(degs)

    def is_homogeneous(self) -> bool:
        return len(self.coefficient_degrees()) <= 1

    def homogeneous_degree(self):
        """The single coefficient degree, or None if zero or mixed."""
        degs = self.coefficient_degrees()
        return degs[0] if len(degs) == 1 else None

    def homogeneity_split(self) -> dict:
        """Split into {degree: homogeneous Form}."""
        out: dict = {}
        for idx, el in self.components.items():
            for d in el.degrees():
                piece = el.homogeneous_part(d)
                slot = out.setdefault(d, {})
                slot[idx] = piece
        return {d: Form(self.n, self.q, comps) for d, comps in sorted(out.items())}

    # -- serialization -------------------------------------------------------

    def to_obj(self) -> dict:
        comps = {}
        for idx in sorted(self.components):
            comps[",".join(map(str, idx))] = self.components[idx].to_records()
        return {"n": self.n, "q": self.q, "components": comps}

    @classmethod
    def from_obj(cls, obj: dict) -> "Form":
        n, q = int(obj["n"]), int(obj["q"])
        comps = {}
        for key, recs in obj.get("components", {}).items():
            idx = tuple(int(s) for s in key.split(",")) if key else ()
            comps[idx] = RadialRingElement.from_records(n, recs)
        return cls(n, q, comps)

    def __str__(self):
        if not self.components:
            return f"0 (rank {self.q})"
        chunks = []
        for idx in sorted(self.components):
            name = "dx^(" + ",".join(map(str, idx)) + ")" if idx else "1"
            chunks.append(f"[{self.components[idx]}] {name}")
        return " + ".join(chunks)

    def __repr__(self):
        return f"<Form n={self.n} q={self.q} {len(self.components)} comps>"


_RADIAL_CACHE: dict = {}


def radial_one_form(n: int) -> Form:
    """The 1-form sum x_i dx^i."""
    if n not in _RADIAL_CACHE:
        _RADIAL_CACHE[n] = Form(n, 1, {
            (i,): RadialRingElement.variable(n, i) for i in range(1, n + 1)})
    return _RADIAL_CACHE[n]


def R_op(form: Form) -> Form:
    return form.radial_wedge()


def T_op(form: Form) -> Form:
    return form.radial_contraction()


# ---------------------------------------------------------------------------
# sphere averages and the exact inner product
# ---------------------------------------------------------------------------

def monomial_average(alpha, n: int) -> QQ:
    """Average of x^alpha over the unit sphere S^(n-1).

    Zero when any exponent is odd; otherwise
    prod_i (alpha_i - 1)!! / prod_{t=0}^{s-1} (n + 2t) with s = |alpha|/2.
    """
    s2 = 0
    num = 1
    for e in alpha:
        if e % 2:
            return _Q0
        s2 += e // 2
        for j in range(1, e, 2):
            num *= j
    den = 1
    for t in range(s2):
        den *= n + 2 * t
    return QQ(num) / QQ(den)


def poly_sphere_average(poly: dict, n: int) -> QQ:
    total = _Q0
    for alpha, c in poly.items():
        avg = monomial_average(alpha, n)
        if avg:
            total += c * avg
    return total


def sphere_inner_product(a: Form, b: Form) -> QQ:
    """Exact average over the unit sphere of the pointwise component pairing."""
    if a.n != b.n or a.q != b.q:
        raise ValueError("mismatched shapes in sphere inner product")
    total = _Q0
    for idx, el in a.components.items():
        other = b.components.get(idx)
        if other is None:
            continue
        pa = el.sphere_restriction()
        pb = other.sphere_restriction()
        prod: dict = {}
        for al, ca in pa.items():
            for be, cb in pb.items():
                g = tuple(x + y for x, y in zip(al, be))
                prod[g] = prod.get(g, _Q0) + ca * cb
        total += poly_sphere_average(prod, a.n)
    return total


# ---------------------------------------------------------------------------
# coordinates for exact linear algebra over spans of forms
# ---------------------------------------------------------------------------

def coordinate_vectors(forms: list) -> tuple[list, list]:
    """Return (keys, vectors): a shared coordinate key list and one exact
    coefficient vector per form.  Key = (component tuple, degree, r_exp,
    monomial), sorted; canonical because ring elements are normal forms."""
    keyset = set()
    for f in forms:
        for idx, el in f.components.items():
            for (d, bb), poly in el.parts.items():
                for alpha in poly:
                    keyset.add((idx, d, bb, alpha))
    keys = sorted(keyset)
    pos = {k: i for i, k in enumerate(keys)}
    vecs = []
    for f in forms:
        v = [_Q0] * len(keys)
        for idx, el in f.components.items():
            for (d, bb), poly in el.parts.items():
                for alpha, c in poly.items():
                    v[pos[(idx, d, bb, alpha)]] = c
        vecs.append(v)
    return keys, vecs
