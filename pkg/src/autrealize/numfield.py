"""Number fields as explicit Q-algebras.

A field is Q[Z]/(g) for a monic irreducible g; elements are residue
polynomials with rational coordinates.  Everything downstream needs only
this single flattened shape: towers are collapsed to one primitive
element as soon as they appear.

Factoring over a field uses Trager's method: shift by a multiple of the
generator until the resultant norm is squarefree, factor the norm over Q,
pull factors back by gcd.  Norms themselves are computed by evaluating
element norms at rational sample points and interpolating, which keeps
all resultant work univariate over Z.
"""

from __future__ import annotations

import logging
from fractions import Fraction

from .errors import CapExceededError, VerificationError
from .exact import (
    UniPoly,
    interpolate,
    poly_divrem,
    poly_gcd,
    poly_gcdex,
    resultant_std,
)
from .factor import (
    Factorization,
    factor_over_Q,
    find_rational_factors_of_degree,
    is_irreducible_Q,
    squarefree_part,
)
from .perm import AbstractGroup, PermGroup, Permutation

logger = logging.getLogger(__name__)

SPLITTING_DEGREE_CAP = 24

#: deterministic shift sequence 0, 1, -1, 2, -2, ...
def shift_sequence():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


class NumberField:
    """Q[Z]/(g) for monic irreducible g; degree 1 models Q itself."""

    def __init__(self, modulus: UniPoly, trusted=False):
        if modulus.field is not None:
            raise ValueError("modulus must have rational coefficients")
        if not modulus.is_monic():
            raise ValueError("modulus must be monic")
        if modulus.degree < 1:
            raise ValueError("modulus must have degree >= 1")
        if not trusted and modulus.degree > 1 and not is_irreducible_Q(modulus):
            raise ValueError(f"modulus is reducible: {modulus!r}")
        self.modulus = modulus.with_var("Z")
        self.modulus_coeffs = self.modulus.coeffs
        self.degree = modulus.degree
        d = self.degree
        # rows[k] = coordinates of Z**(d+k) reduced mod g, for products
        rows = []
        cur = [-c for c in self.modulus.coeffs[:-1]]
        rows.append(tuple(cur))
        for _ in range(d - 2):
            cur = [Fraction(0)] + cur
            lead = cur.pop()
            cur = [cur[i] + lead * rows[0][i] for i in range(d)]
            rows.append(tuple(cur))
        self._red_rows = rows

    @classmethod
    def rationals(cls):
        """Degree-1 field Q[Z]/(Z), generator 0; stands in for Q."""
        return cls(UniPoly.gen("Z"), trusted=True)

    def __repr__(self):
        return f"NumberField({self.modulus!r})"

    def __eq__(self, other):
        return (
            isinstance(other, NumberField)
            and self.modulus_coeffs == other.modulus_coeffs
        )

    def __hash__(self):
        return hash(self.modulus_coeffs)

    # -- element constructors -------------------------------------------

    def element(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            rem = poly_divrem(UniPoly(coords, "Z"), self.modulus)[1]
            coords = list(rem.coeffs)
        while len(coords) < self.degree:
            coords.append(Fraction(0))
        while len(coords) > self.degree:
            if coords[-1]:
                raise ValueError("coordinates exceed field degree")
            coords.pop()
        return NfElement(self, tuple(coords))

    def zero(self):
        return self.element(())

    def one(self):
        return self.element((1,))

    def gen(self):
        return self.element((0, 1))

    def from_rational(self, c):
        return self.element((Fraction(c),))

    def _reduce(self, coords):
        """Reduce a coordinate list of length <= 2d-1 mod the modulus."""
        d = self.degree
        out = list(coords[:d]) + [Fraction(0)] * (d - len(coords[:d]))
        for k, c in enumerate(coords[d:]):
            if c:
                row = self._red_rows[k]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def norm(self, e: "NfElement") -> Fraction:
        """Product of e over all embeddings; the resultant of the modulus
        with e's coordinate polynomial."""
        if e.owner is not self and e.owner.modulus_coeffs != self.modulus_coeffs:
            raise ValueError("element of a different field")
        h = e.to_poly()
        if h.is_zero:
            return Fraction(0)
        return resultant_std(self.modulus, h)


class NfElement:
    """An element of a NumberField, as a coordinate tuple in 1, Z, Z^2, ..."""

    __slots__ = ("owner", "coords")

    def __init__(self, owner, coords):
        self.owner = owner
        self.coords = coords

    def to_poly(self) -> UniPoly:
        return UniPoly(self.coords, "Z")

    @property
    def is_rational(self):
        return all(not c for c in self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("element is not rational")
        return self.coords[0]

    def __bool__(self):
        return any(self.coords)

    def __eq__(self, other):
        if isinstance(other, NfElement):
            return (
                self.owner.modulus_coeffs == other.owner.modulus_coeffs
                and self.coords == other.coords
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        return hash((self.owner.modulus_coeffs, self.coords))

    def sort_key(self):
        return self.coords

    def __repr__(self):
        return f"NfElement({self.to_poly()!r})"

    def _lift(self, other):
        if isinstance(other, (int, Fraction)):
            return self.owner.from_rational(other)
        if isinstance(other, NfElement):
            if other.owner.modulus_coeffs != self.owner.modulus_coeffs:
                raise ValueError("elements of different fields")
            return other
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return NfElement(
            self.owner,
            tuple(a + b for a, b in zip(self.coords, other.coords)),
        )

    __radd__ = __add__

    def __neg__(self):
        return NfElement(self.owner, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NfElement(self.owner, tuple(a * other for a in self.coords))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        a, b = self.coords, other.coords
        d = len(a)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return NfElement(self.owner, self.owner._reduce(prod))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        s, _, h = poly_gcdex(self.to_poly(), self.owner.modulus)
        if h.degree != 0:
            raise VerificationError("modulus is not irreducible")
        return self.owner.element(s.coeffs)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.owner.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result


# -- minimal polynomials ----------------------------------------------------


def charpoly(a: NfElement, var="X") -> UniPoly:
    """Characteristic polynomial of a over Q: prod over embeddings of
    (X - sigma(a)), degree = field degree.  By norm interpolation."""
    K = a.owner
    d = K.degree
    points, values = [], []
    w = 0
    for w in range(d + 1):
        wq = Fraction(w)
        points.append(wq)
        values.append(K.norm(K.from_rational(wq) - a))
    return interpolate(points, values, var)


def minpoly(a: NfElement, var="X") -> UniPoly:
    """Monic minimal polynomial of a over Q.

    The characteristic polynomial is a power of it, so its squarefree
    part is exactly the minimal polynomial.
    """
    if a.is_rational:
        return UniPoly([-a.coords[0], 1], var)
    return squarefree_part(charpoly(a, var)).with_var(var)


# -- Trager factorization ---------------------------------------------------


def _sqf_norm(f: UniPoly, K: NumberField):
    """Find shift s with N(X) = Norm(f(X - s*theta)) squarefree.

    Returns (s, shifted f over K, N over Q).  f must be monic squarefree
    over K.
    """
    theta = K.gen()
    d = K.degree
    for s in shift_sequence():
        inner = UniPoly([theta * (-s), K.one()], f.var, K)
        g = f.compose(inner) if s else f
        # norm by evaluation at rational points + interpolation
        n_deg = d * f.degree
        points, values = [], []
        for x0 in range(n_deg + 1):
            xq = Fraction(x0)
            val = g.eval(K.from_rational(xq))
            values.append(K.norm(val))
            points.append(xq)
        N = interpolate(points, values, f.var)
        if poly_gcd(N, N.derivative()).degree == 0:
            return s, g, N
    raise VerificationError("unreachable: no squarefree-norm shift found")


def _is_zero_poly_over(f, K):
    return f.is_zero


def factor_over_nf(f: UniPoly, K: NumberField) -> Factorization:
    """Complete factorization over K into monic irreducibles (Trager)."""
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if f.field is None:
        f = f.map_coeffs(K.from_rational, field=K)
    if K.degree == 1:
        # the field is Q in disguise; delegate
        root = K.gen().coords[0]
        fq = f.map_coeffs(lambda c: c.to_poly().eval(root))
        fac = factor_over_Q(fq)
        return Factorization(
            fac.unit,
            tuple(
                (g.map_coeffs(K.from_rational, field=K, var=f.var), m)
                for g, m in fac.factors
            ),
        )
    unit = f.lc()
    if f.degree == 0:
        return Factorization(unit, ())
    pairs = []
    for g, mult in _squarefree_decompose(f.monic()):
        if g.degree == 1:
            pairs.append((g, mult))
            continue
        s, shifted, N = _sqf_norm(g, K)
        theta = K.gen()
        rem = shifted
        for Ni, _ in factor_over_Q(N).factors:
            if rem.degree <= 0:
                break
            Gi = poly_gcd(rem, Ni.to_field(K).with_var(rem.var))
            if Gi.degree >= 1:
                back = (
                    Gi.compose(UniPoly([theta * s, K.one()], g.var, K))
                    if s
                    else Gi.with_var(g.var)
                )
                pairs.append((back.monic(), mult))
                rem = poly_divrem(rem, Gi)[0]
        if rem.degree > 0:
            raise VerificationError("Trager pullback did not exhaust the input")
    pairs.sort(key=lambda p: (p[0].degree, tuple(c.sort_key() for c in p[0].coeffs)))
    return Factorization(unit, tuple(pairs))


def _squarefree_decompose(f: UniPoly):
    """Yun's decomposition over any exact field (char 0)."""
    out = []
    d = f.derivative()
    a = poly_gcd(f, d)
    b = poly_divrem(f, a)[0]
    c = poly_divrem(d, a)[0]
    i = 1
    while b.degree >= 1:
        z = c - b.derivative()
        if z.is_zero:
            out.append((b.monic(), i))
            break
        g = poly_gcd(b, z)
        if g.degree >= 1:
            out.append((g, i))
        b = poly_divrem(b, g)[0]
        c = poly_divrem(z, g)[0]
        i += 1
    return out


def roots_in_field(f: UniPoly, K: NumberField):
    """All roots of f lying in K, sorted by coordinates.

    Implemented as a targeted search: a root of f in K corresponds to an
    irreducible degree-[K:Q] factor of the squarefree Trager norm whose
    gcd with f over K is linear, so only norm factors of that one degree
    are ever assembled.
    """
    if f.is_zero:
        raise ValueError("zero polynomial has every element as a root")
    if f.field is None:
        f = f.map_coeffs(K.from_rational, field=K)
    if f.degree < 1:
        return []
    d = K.degree
    if d == 1:
        root0 = K.gen().coords[0]
        fq = f.map_coeffs(lambda c: c.to_poly().eval(root0))
        fq = squarefree_part(fq)
        out = [
            K.from_rational(-g.coeffs[0])
            for g, _ in factor_over_Q(fq).factors
            if g.degree == 1
        ]
        return sorted(out, key=NfElement.sort_key)
    g = f.monic()
    sqf = poly_gcd(g, g.derivative())
    if sqf.degree >= 1:
        g = poly_divrem(g, sqf)[0]
    roots = []
    for part, _ in _squarefree_decompose(g):
        if part.degree == 1:
            roots.append(-part.coeffs[0] / part.coeffs[1])
            continue
        s, shifted, N = _sqf_norm(part, K)
        theta = K.gen()
        for Ni in find_rational_factors_of_degree(N, d):
            Gi = poly_gcd(shifted, Ni.to_field(K).with_var(shifted.var))
            if Gi.degree == 1:
                rho = -Gi.coeffs[0] / Gi.coeffs[1] - theta * s
                if part.eval(rho):
                    raise VerificationError("pullback root fails to annihilate")
                roots.append(rho)
    return sorted(set(roots), key=NfElement.sort_key)


# -- automorphisms ----------------------------------------------------------


class AutomorphismTable:
    """All automorphisms of K/Q: generator images plus a composition table.

    maps[0] is the identity (generator fixed); table is an AbstractGroup
    with matching indices.
    """

    def __init__(self, K: NumberField, maps):
        self.field = K
        gen = K.gen()
        maps = sorted(maps, key=NfElement.sort_key)
        ident = maps.index(gen)
        maps[0], maps[ident] = maps[ident], maps[0]
        # keep the non-identity block deterministic after the swap
        maps = [maps[0]] + sorted(maps[1:], key=NfElement.sort_key)
        self.maps = tuple(maps)
        for m in self.maps:
            if K.modulus.eval(m):
                raise VerificationError("automorphism image is not a root")
        index = {m.coords: i for i, m in enumerate(self.maps)}
        table = []
        for a in self.maps:
            row = []
            for b in self.maps:
                # (sigma_a . sigma_b)(Z) = sigma_a(b(Z)) = coords_b(a)
                c = b.to_poly().eval(a)
                row.append(index[c.coords])
            table.append(row)
        self.group = AbstractGroup(table)

    @property
    def order(self):
        return len(self.maps)

    def apply(self, i, e: NfElement) -> NfElement:
        """Image of e under the i-th automorphism."""
        return e.to_poly().eval(self.maps[i])


def automorphisms(K: NumberField, roots=None) -> AutomorphismTable:
    """Automorphism table of K/Q; one map per root of the modulus in K."""
    if roots is None:
        roots = roots_in_field(K.modulus, K)
    return AutomorphismTable(K, roots)


# -- field extension / primitive elements -----------------------------------


def extend_field(K: NumberField, h: UniPoly):
    """Adjoin a root of h (monic irreducible over K); flatten to one
    primitive element.

    Returns (K2, theta_image, beta) where theta_image is the image of
    K's generator inside K2 and beta is a root of (the coefficient-mapped)
    h in K2.  The new generator is beta + c*theta for the first shift c
    that makes the norm squarefree.
    """
    if h.field is None:
        h = h.map_coeffs(K.from_rational, field=K)
    if not h.is_monic():
        h = h.monic()
    if h.degree == 1:
        return K, K.gen(), -h.coeffs[0]
    if K.degree == 1:
        root0 = K.gen().coords[0]
        hq = h.map_coeffs(lambda c: c.to_poly().eval(root0))
        K2 = NumberField(hq.with_var("Z"), trusted=True)
        return K2, K2.from_rational(root0), K2.gen()
    # z = beta + c*theta; minimal polynomial = Norm(h(X - c*theta)),
    # irreducible whenever squarefree (norm of an irreducible is a power
    # of an irreducible)
    for c in shift_sequence():
        if c == 0:
            continue
        s, shifted, N = _sqf_norm_with_shift(h, K, c)
        if N is None:
            continue
        K2 = NumberField(N.with_var("Z"), trusted=True)
        theta2 = _embed_generator(K, h, K2, c)
        beta = K2.gen() - theta2 * c
        return K2, theta2, beta
    raise VerificationError("unreachable: primitive-element search failed")


def _sqf_norm_with_shift(f, K, s):
    """Norm of f(X - s*theta) if squarefree, else (s, None, None)."""
    theta = K.gen()
    inner = UniPoly([theta * (-s), K.one()], f.var, K)
    g = f.compose(inner) if s else f
    n_deg = K.degree * f.degree
    points, values = [], []
    for x0 in range(n_deg + 1):
        xq = Fraction(x0)
        values.append(K.norm(g.eval(K.from_rational(xq))))
        points.append(xq)
    N = interpolate(points, values, f.var)
    if poly_gcd(N, N.derivative()).degree == 0:
        return s, g, N
    return s, None, None


def _embed_generator(K, h, K2, c):
    """Image of K's generator theta in K2 = Q[Z]/(Norm(h(X - c*theta))).

    theta2 is the unique common root in K2 of K's modulus and of
    H(W) = sum_i coords(h_i)(W) * (z - c*W)^i, where z is K2's generator:
    the gcd of the two is linear.
    """
    z = K2.gen()
    W = UniPoly.gen("W", K2)
    gK2 = K.modulus.with_var("W").to_field(K2)
    acc = UniPoly.zero("W", K2)
    lin = UniPoly([z, K2.from_rational(-c)], "W", K2)  # z - c*W
    power = UniPoly.one("W", K2)
    for i, hi in enumerate(h.coeffs):
        ci = hi.to_poly().with_var("W").to_field(K2)
        acc = acc + ci * power
        power = power * lin
    g = poly_gcd(gK2, acc)
    if g.degree != 1:
        raise VerificationError("generator embedding gcd is not linear")
    return -g.coeffs[0] / g.coeffs[1]


def primitive_element(K: NumberField, h: UniPoly):
    """Compositum helper; see extend_field."""
    return extend_field(K, h)


# -- splitting fields -------------------------------------------------------


class SplittingField:
    """A splitting field with explicit roots and Galois action.

    ``roots`` are sorted by coordinates; ``galois`` acts on the 1-based
    root indices; automorphism i sends the generator to ``autos.maps[i]``
    and corresponds to ``perms[i]``.
    """

    def __init__(self, field, poly, roots, autos, perms):
        self.field = field
        self.poly = poly
        self.roots = tuple(roots)
        self.autos = autos
        self.perms = tuple(perms)
        self.galois = PermGroup.from_elements(perms, len(roots))
        self._aut_of_perm = {p: i for i, p in enumerate(perms)}

    @property
    def degree(self):
        return self.field.degree

    def aut_index_for_perm(self, perm: Permutation) -> int:
        return self._aut_of_perm[perm]

    def apply_perm(self, perm, e: NfElement) -> NfElement:
        return self.autos.apply(self._aut_of_perm[perm], e)


def splitting_field(f: UniPoly, max_degree=SPLITTING_DEGREE_CAP) -> SplittingField:
    """Splitting field of a squarefree rational polynomial, with the
    Galois group as permutations of the sorted root list."""
    if f.field is not None:
        raise ValueError("expects a rational polynomial")
    if f.degree < 1:
        raise ValueError("needs degree >= 1")
    if poly_gcd(f, f.derivative()).degree != 0:
        raise ValueError("expects a squarefree polynomial")
    K = NumberField.rationals()
    work = f.monic().map_coeffs(K.from_rational, field=K)
    roots: list = []
    while True:
        nonlinear = None
        fresh_roots = []
        for g, _ in factor_over_nf(work, K).factors:
            if g.degree == 1:
                fresh_roots.append(-g.coeffs[0] / g.coeffs[1])
            elif nonlinear is None or g.degree < nonlinear.degree:
                nonlinear = g
        if nonlinear is None:
            roots = fresh_roots
            break
        new_deg = K.degree * nonlinear.degree
        if new_deg > max_degree:
            raise CapExceededError(
                f"splitting field degree would reach {new_deg}, "
                f"exceeding the cap {max_degree}"
            )
        K2, theta2, beta = extend_field(K, nonlinear)
        remap = lambda e: e.to_poly().eval(theta2)  # noqa: E731
        work = work.map_coeffs(remap, field=K2)
        K = K2
    roots.sort(key=NfElement.sort_key)
    # reconstruct f from the roots as a sanity check
    acc = UniPoly.one(f.var, K)
    for r in roots:
        acc = acc * UniPoly([-r, K.one()], f.var, K)
    target = f.monic().map_coeffs(K.from_rational, field=K)
    if acc != target:
        raise VerificationError("root product does not reconstruct the input")
    autos = automorphisms(K)
    if autos.order != K.degree:
        raise VerificationError(
            "splitting field is not Galois: automorphism count "
            f"{autos.order} != degree {K.degree}"
        )
    index_of = {r.coords: i + 1 for i, r in enumerate(roots)}
    perms = []
    for i in range(autos.order):
        images = [index_of[autos.apply(i, r).coords] for r in roots]
        perms.append(Permutation(images))
    return SplittingField(K, f.monic(), roots, autos, perms)


# -- fixed fields -----------------------------------------------------------


def fixed_field(Lsp: SplittingField, H: PermGroup):
    """A generator y of the subfield of L fixed by H, with its minimal
    polynomial over Q.

    Deterministic search: orbit sums of theta^j for j = 1, 2, ...; if
    none reaches the target degree, orbit sums of theta^j + j*theta.
    """
    if not H.elements <= Lsp.galois.elements:
        raise ValueError("H must be a subgroup of the Galois group")
    K = Lsp.field
    d = K.degree
    target = d // H.order
    theta = K.gen()
    aut_ids = [Lsp.aut_index_for_perm(p) for p in sorted(H.elements)]

    def orbit_sum(e):
        acc = K.zero()
        for i in aut_ids:
            acc = acc + Lsp.autos.apply(i, e)
        return acc

    candidates = [theta**j for j in range(1, d + 1)]
    candidates += [theta**j + theta * j for j in range(2, d + 1)]
    for cand in candidates:
        y = orbit_sum(cand)
        p = minpoly(y)
        if p.degree == target:
            for i in aut_ids:
                if Lsp.autos.apply(i, y) != y:
                    raise VerificationError("orbit sum not fixed by H")
            return y, p
    raise VerificationError("no fixed-field generator found in the search family")
