"""Exact rational and polynomial arithmetic.

Coefficients live in an exact field: the rationals (represented by
``fractions.Fraction``) or a number field (``autrealize.numfield.NumberField``,
whose elements implement the same arithmetic protocol).  Polynomials are
dense.  ``UniPoly`` is univariate with an ascending coefficient list;
``BiPoly`` is bivariate in (T, X) with a coefficient matrix indexed by
(power of T, power of X).

Everything here is immutable and pure; no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

Rational = Fraction

_QZERO = Fraction(0)
_QONE = Fraction(1)


def _fzero(field):
    return _QZERO if field is None else field.zero()


def _fone(field):
    return _QONE if field is None else field.one()


def _coerce(field, c):
    """Coerce ``c`` into the coefficient field."""
    if field is None:
        if isinstance(c, Fraction):
            return c
        if isinstance(c, int):
            return Fraction(c)
        raise TypeError(f"cannot coerce {c!r} into Q")
    if isinstance(c, (int, Fraction)):
        return field.from_rational(c)
    if getattr(c, "owner", None) is not None:
        if c.owner is field or c.owner.modulus_coeffs == field.modulus_coeffs:
            return c
        raise ValueError("coefficient belongs to a different number field")
    raise TypeError(f"cannot coerce {c!r} into {field!r}")


def render_rational(q: Fraction) -> str:
    """Canonical text form "p/q", with "/q" omitted when q == 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


class UniPoly:
    """Dense univariate polynomial over an exact field.

    ``coeffs`` is ascending: coeffs[i] is the coefficient of var**i.
    The leading coefficient is nonzero unless the polynomial is zero
    (empty coefficient list).  ``field`` is None for Q, or a NumberField.
    """

    __slots__ = ("coeffs", "var", "field")

    def __init__(self, coeffs, var="X", field=None):
        cs = [_coerce(field, c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var
        self.field = field

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, var="X", field=None):
        return cls((), var, field)

    @classmethod
    def one(cls, var="X", field=None):
        return cls((_fone(field),), var, field)

    @classmethod
    def constant(cls, c, var="X", field=None):
        return cls((c,), var, field)

    @classmethod
    def monomial(cls, c, k, var="X", field=None):
        return cls((0,) * k + (c,), var, field)

    @classmethod
    def gen(cls, var="X", field=None):
        return cls((0, 1), var, field)

    # -- basic queries ---------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return _fzero(self.field)

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == _fone(self.field)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(f"{c}")
            elif i == 1:
                parts.append(f"({c})*{self.var}")
            else:
                parts.append(f"({c})*{self.var}^{i}")
        return " + ".join(parts)

    def _check_compat(self, other):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
        if (self.field is None) != (other.field is None):
            raise ValueError("coefficient field mismatch")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(
                _coerce(self.field, other), self.var, self.field
            )
        self._check_compat(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            [self[i] + other[i] for i in range(n)], self.var, self.field
        )

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var, self.field)

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(
                _coerce(self.field, other), self.var, self.field
            )
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            c = _coerce(self.field, other)
            return UniPoly([a * c for a in self.coeffs], self.var, self.field)
        self._check_compat(other)
        if self.is_zero or other.is_zero:
            return UniPoly.zero(self.var, self.field)
        zero = _fzero(self.field)
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var, self.field)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly.one(self.var, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def scale(self, c):
        return self * c

    def monic(self):
        if self.is_zero:
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.lc()
        if lc == _fone(self.field):
            return self
        if self.field is None:
            inv = 1 / lc
        else:
            inv = lc.inverse()
        return self * inv

    def derivative(self):
        return UniPoly(
            [i * c for i, c in enumerate(self.coeffs)][1:], self.var, self.field
        )

    def eval(self, x):
        """Evaluate by Horner; ``x`` may live in an extension of the
        coefficient field (e.g. a rational polynomial at an NfElement)."""
        if self.is_zero:
            return x * 0
        acc = x * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, inner: "UniPoly") -> "UniPoly":
        """Substitute ``inner`` for the variable (result in inner's variable)."""
        acc = UniPoly.zero(inner.var, inner.field)
        for c in reversed(self.coeffs):
            acc = acc * inner + UniPoly.constant(c, inner.var, inner.field)
        return acc

    def with_var(self, var):
        return UniPoly(self.coeffs, var, self.field)

    def to_field(self, field):
        """Coerce a rational polynomial into K[var]."""
        if self.field is not None:
            raise ValueError("already over a number field")
        return UniPoly(self.coeffs, self.var, field)

    def map_coeffs(self, fn, field=None, var=None):
        return UniPoly(
            [fn(c) for c in self.coeffs],
            self.var if var is None else var,
            field,
        )


def poly_divrem(f: UniPoly, g: UniPoly):
    """Exact division with remainder: f = q*g + r, deg r < deg g."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    f._check_compat(g)
    field = f.field
    if f.degree < g.degree:
        return UniPoly.zero(f.var, field), f
    if field is None:
        lc_inv = 1 / g.lc()
    else:
        lc_inv = g.lc().inverse()
    rem = list(f.coeffs)
    dg = g.degree
    quot = [_fzero(field)] * (len(rem) - dg)
    gcs = g.coeffs
    for k in range(len(rem) - dg - 1, -1, -1):
        c = rem[k + dg]
        if not c:
            continue
        q = c * lc_inv
        quot[k] = q
        for j in range(dg + 1):
            rem[k + j] = rem[k + j] - q * gcs[j]
    return (
        UniPoly(quot, f.var, field),
        UniPoly(rem[:dg], f.var, field),
    )


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm over the coefficient field."""
    if f.is_zero and g.is_zero:
        raise ValueError("gcd of two zero polynomials")
    a, b = f, g
    while not b.is_zero:
        a, b = b, poly_divrem(a, b)[1]
    return a.monic()


def poly_gcdex(f: UniPoly, g: UniPoly):
    """Extended gcd: returns (s, t, h) with s*f + t*g = h, h monic gcd."""
    if f.is_zero and g.is_zero:
        raise ValueError("gcd of two zero polynomials")
    var, field = f.var, f.field
    one = UniPoly.one(var, field)
    zero = UniPoly.zero(var, field)
    a, b = f, g
    sa, sb = one, zero
    ta, tb = zero, one
    while not b.is_zero:
        q, r = poly_divrem(a, b)
        a, b = b, r
        sa, sb = sb, sa - q * sb
        ta, tb = tb, ta - q * tb
    lc = a.lc()
    inv = (1 / lc) if field is None else lc.inverse()
    return sa * inv, ta * inv, a * inv


# -- resultants -----------------------------------------------------------
#
# Convention used throughout (matching the documented contract): for
# nonzero f, g of degrees m, n,
#
#   resultant(f, g) = lc(g)^m * prod_{g(b)=0} f(b)
#                   = (-1)^(m*n) * lc(f)^n * prod_{f(a)=0} g(a).
#
# In particular resultant(f, g) with g monic equals the product of f over
# the roots of g, which is how field norms are computed elsewhere.


def _int_clear(f: UniPoly):
    """Write a rational poly as (int coeff list, denominator)."""
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // _igcd(den, c.denominator)
    return [int(c * den) for c in f.coeffs], den


def _ideg(a):
    return len(a) - 1


def _int_content(a):
    g = 0
    for c in a:
        g = _igcd(g, abs(c))
    return g


def _int_prem(A, B):
    """Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B (ascending)."""
    da, db = _ideg(A), _ideg(B)
    lb = B[-1]
    R = list(A)
    steps = da - db + 1
    while len(R) - 1 >= db and any(R):
        while R and R[-1] == 0:
            R.pop()
        if len(R) - 1 < db:
            break
        d = len(R) - 1
        lr = R[-1]
        R = [lb * c for c in R]
        for j in range(db + 1):
            R[d - db + j] -= lr * B[j]
        R.pop()
        while R and R[-1] == 0:
            R.pop()
        steps -= 1
    if steps > 0:
        m = lb**steps
        R = [c * m for c in R]
    return R


def _int_res_std(A, B):
    """Standard resultant of nonzero integer polys (ascending lists):
    lc(A)^deg(B) * prod_{A(a)=0} B(a).  Subresultant PRS (Cohen 3.3.7)."""
    A = list(A)
    B = list(B)
    while A and A[-1] == 0:
        A.pop()
    while B and B[-1] == 0:
        B.pop()
    if not A or not B:
        raise ValueError("resultant of the zero polynomial")
    s = 1
    if _ideg(A) < _ideg(B):
        if _ideg(A) % 2 == 1 and _ideg(B) % 2 == 1:
            s = -s
        A, B = B, A
    if _ideg(B) == 0:
        return s * B[0] ** _ideg(A)
    ca, cb = _int_content(A), _int_content(B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    t = ca ** _ideg(B) * cb ** _ideg(A)
    g = h = 1
    while True:
        da, db = _ideg(A), _ideg(B)
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = _int_prem(A, B)
        if not R:
            return 0
        A, B = B, [c // (g * h**delta) for c in R]
        g = A[-1]
        if delta > 0:
            h = g**delta // h ** (delta - 1)
        if _ideg(B) <= 0:
            break
    da = _ideg(A)
    res = B[0] ** da // h ** (da - 1) if da > 0 else 1
    return s * t * res


def _res_std_q(f: UniPoly, g: UniPoly) -> Fraction:
    A, da = _int_clear(f)
    B, db = _int_clear(g)
    r = _int_res_std(A, B)
    return Fraction(r, da**g.degree * db**f.degree)


def _res_std_field(f: UniPoly, g: UniPoly):
    """Standard resultant over an arbitrary exact field, by Euclid."""
    field = f.field
    one = _fone(field)
    acc = one
    sign = 1
    a, b = f, g
    while b.degree > 0:
        r = poly_divrem(a, b)[1]
        if r.is_zero:
            return _fzero(field)
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            sign = -sign
        acc = acc * b.lc() ** (a.degree - r.degree)
        a, b = b, r
    if b.is_zero:
        raise ValueError("resultant of the zero polynomial")
    acc = acc * b.coeffs[0] ** a.degree
    return acc * sign if sign == 1 else -acc


def resultant_std(f: UniPoly, g: UniPoly):
    """lc(f)^deg(g) * prod of g over the roots of f (standard convention)."""
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial")
    f._check_compat(g)
    if f.field is None:
        return _res_std_q(f, g)
    return _res_std_field(f, g)


def resultant(f: UniPoly, g: UniPoly):
    """Resultant in the documented convention (see module comment)."""
    return resultant_std(g, f)


def sylvester_resultant(f: UniPoly, g: UniPoly):
    """Naive Sylvester-determinant resultant, used only for cross-checks.

    Same convention as :func:`resultant`.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant of the zero polynomial")
    f._check_compat(g)
    m, n = f.degree, g.degree
    if m == 0:
        return f.coeffs[0] ** n
    if n == 0:
        return g.coeffs[0] ** m
    field = f.field
    size = m + n
    fa = list(reversed(f.coeffs))
    ga = list(reversed(g.coeffs))
    rows = []
    for i in range(m):
        row = [_fzero(field)] * size
        for j, c in enumerate(ga):
            row[i + j] = c
        rows.append(row)
    for i in range(n):
        row = [_fzero(field)] * size
        for j, c in enumerate(fa):
            row[i + j] = c
        rows.append(row)
    # Gaussian elimination with exact division; determinant of the
    # Sylvester matrix of (g, f) equals resultant(f, g) in our convention.
    det = _fone(field)
    sign = 1
    for col in range(size):
        piv = None
        for r in range(col, size):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            return _fzero(field)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            sign = -sign
        pv = rows[col][col]
        det = det * pv
        inv = (1 / pv) if field is None else pv.inverse()
        for r in range(col + 1, size):
            if rows[r][col]:
                factor = rows[r][col] * inv
                rows[r] = [
                    rows[r][k] - factor * rows[col][k] for k in range(size)
                ]
    return det if sign == 1 else -det


def discriminant(f: UniPoly):
    """disc(f) = (-1)^(d(d-1)/2) * Res(f, f') / lc(f) for univariate f."""
    d = f.degree
    if d < 1:
        raise ValueError("discriminant needs degree >= 1")
    if d == 1:
        return _fone(f.field)
    r = resultant(f, f.derivative())
    lc = f.lc()
    inv = (1 / lc) if f.field is None else lc.inverse()
    val = r * inv
    return -val if (d * (d - 1) // 2) % 2 == 1 else val


def interpolate(points, values, var="X", field=None):
    """Exact Newton interpolation through (points[i], values[i]).

    Points are rationals; values live in the coefficient field.
    """
    n = len(points)
    if n != len(values):
        raise ValueError("points/values length mismatch")
    table = [_coerce(field, v) for v in values]
    pts = [Fraction(p) for p in points]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            table[i] = (table[i] - table[i - 1]) * (
                1 / (pts[i] - pts[i - j])
            )
    acc = UniPoly.zero(var, field)
    for i in range(n - 1, -1, -1):
        acc = acc * UniPoly([-pts[i], 1], var, field) + UniPoly.constant(
            table[i], var, field
        )
    return acc


class BiPoly:
    """Dense bivariate polynomial in (T, X): rows[i][j] = coeff of T^i X^j."""

    __slots__ = ("rows", "field")

    def __init__(self, rows, field=None):
        mat = [[_coerce(field, c) for c in row] for row in rows]
        # trim trailing zero columns, then trailing zero rows
        width = 0
        for row in mat:
            w = len(row)
            while w and not row[w - 1]:
                w -= 1
            width = max(width, w)
        zero = _fzero(field)
        mat = [row[:width] + [zero] * (width - len(row[:width])) for row in mat]
        while mat and all(not c for c in mat[-1]):
            mat.pop()
        self.rows = tuple(tuple(r) for r in mat)
        self.field = field

    @classmethod
    def zero(cls, field=None):
        return cls((), field)

    @classmethod
    def from_terms(cls, terms, field=None):
        """terms: iterable of (i, j, coeff) for T^i X^j."""
        terms = list(terms)
        if not terms:
            return cls((), field)
        nr = max(t[0] for t in terms) + 1
        nc = max(t[1] for t in terms) + 1
        rows = [[_fzero(field)] * nc for _ in range(nr)]
        for i, j, c in terms:
            rows[i][j] = rows[i][j] + _coerce(field, c)
        return cls(rows, field)

    @property
    def is_zero(self):
        return not self.rows

    @property
    def deg_T(self):
        return len(self.rows) - 1

    @property
    def deg_X(self):
        if not self.rows:
            return -1
        d = -1
        for row in self.rows:
            for j in range(len(row) - 1, -1, -1):
                if row[j]:
                    d = max(d, j)
                    break
        return d

    def coeff(self, i, j):
        if 0 <= i < len(self.rows) and 0 <= j < len(self.rows[i]):
            return self.rows[i][j]
        return _fzero(self.field)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        terms = []
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c:
                    terms.append(f"({c})*T^{i}*X^{j}")
        return " + ".join(terms) if terms else "0"

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        nr = max(len(self.rows), len(other.rows))
        nc = max(
            max((len(r) for r in self.rows), default=0),
            max((len(r) for r in other.rows), default=0),
        )
        return BiPoly(
            [
                [self.coeff(i, j) + other.coeff(i, j) for j in range(nc)]
                for i in range(nr)
            ],
            self.field,
        )

    def __neg__(self):
        return BiPoly([[-c for c in row] for row in self.rows], self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = _coerce(self.field, other)
            return BiPoly(
                [[a * c for a in row] for row in self.rows], self.field
            )
        if self.is_zero or other.is_zero:
            return BiPoly.zero(self.field)
        zero = _fzero(self.field)
        nr = len(self.rows) + len(other.rows) - 1
        nc = (
            max(len(r) for r in self.rows)
            + max(len(r) for r in other.rows)
            - 1
        )
        out = [[zero] * nc for _ in range(nr)]
        for i, row in enumerate(self.rows):
            for j, a in enumerate(row):
                if not a:
                    continue
                for k, orow in enumerate(other.rows):
                    for m, b in enumerate(orow):
                        if b:
                            out[i + k][j + m] = out[i + k][j + m] + a * b
        return BiPoly(out, self.field)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = BiPoly.from_terms([(0, 0, _fone(self.field))], self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def specialize(self, t0):
        """Substitute T -> t0; returns a UniPoly in X.

        ``t0`` may be rational or an element of the coefficient field.
        """
        nc = max((len(r) for r in self.rows), default=0)
        if self.field is None and isinstance(t0, int):
            t0 = Fraction(t0)
        out = []
        for j in range(nc):
            col = [self.coeff(i, j) for i in range(len(self.rows))]
            # Horner in t0 over the column (ascending T powers)
            acc = col[-1]
            for c in reversed(col[:-1]):
                acc = acc * t0 + c
            out.append(acc)
        return UniPoly(out, "X", self.field)

    def eval(self, t0, x0):
        return self.specialize(t0).eval(
            x0 if self.field is None else _coerce(self.field, x0)
        )

    def deriv_X(self):
        return BiPoly(
            [
                [j * row[j] for j in range(1, len(row))]
                for row in self.rows
            ],
            self.field,
        )

    def coeff_X(self, j):
        """Coefficient of X^j as a UniPoly in T."""
        return UniPoly(
            [self.coeff(i, j) for i in range(len(self.rows))], "T", self.field
        )

    def lc_X(self):
        return self.coeff_X(self.deg_X)

    def as_unipoly_in_X(self):
        """Valid only when the polynomial is constant in T."""
        if self.deg_T > 0:
            raise ValueError("not constant in T")
        return UniPoly(
            list(self.rows[0]) if self.rows else (), "X", self.field
        )

    @classmethod
    def from_unipoly_in_X(cls, f: UniPoly):
        return cls([list(f.coeffs)], f.field)


def bipoly_specialize(f: BiPoly, t0) -> UniPoly:
    """T -> t0 substitution (coefficientwise, exact)."""
    return f.specialize(t0)


def discriminant_in_X(f):
    """Discriminant with respect to X.

    For a UniPoly this is :func:`discriminant`.  For a BiPoly the result
    is a UniPoly in T, computed by exact evaluation / interpolation at
    rational sample points where the X-leading coefficient survives.
    """
    if isinstance(f, UniPoly):
        return discriminant(f)
    d = f.deg_X
    if d < 1:
        raise ValueError("discriminant needs X-degree >= 1")
    if d == 1:
        return UniPoly.one("T", f.field)
    lc = f.lc_X()
    bound = (2 * d - 1) * max(f.deg_T, 0)
    points, values = [], []
    t = 0
    while len(points) <= bound:
        tq = Fraction(t)
        if not lc.eval(tq if f.field is None else tq):
            t += 1
            continue
        ft = f.specialize(tq)
        points.append(tq)
        values.append(discriminant(ft))
        t += 1
    return interpolate(points, values, "T", f.field)


def render_unipoly(f: UniPoly):
    """Ascending coefficient array of "p/q" strings (rational coeffs only)."""
    if f.field is not None:
        raise ValueError("text rendering is defined over Q")
    return [render_rational(c) for c in f.coeffs]


def render_bipoly(f: BiPoly):
    """Array of arrays; outer index = power of T."""
    if f.field is not None:
        raise ValueError("text rendering is defined over Q")
    return [[render_rational(c) for c in row] for row in f.rows]


def parse_unipoly(arr, var="X") -> UniPoly:
    return UniPoly([parse_rational(s) for s in arr], var)


def parse_bipoly(rows) -> BiPoly:
    return BiPoly([[parse_rational(s) for s in row] for row in rows])
