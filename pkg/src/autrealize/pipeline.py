"""End-to-end realization of a finite group as an automorphism group.

Given G as a subgroup of S_n, the pipeline:

1. builds the splitting field L of X^n - X - 1 (Galois group S_n),
2. pulls G back to G' inside Gal(L/Q) and computes a generator y of the
   fixed field of G',
3. forms the cubic family member with parameter y and the minimal
   polynomial q(T, X) over Q(T) of z = x + c*theta (theta the generator
   of L), computed as a resultant norm by interpolation,
4. specializes T to rational t0 outside the bad set and verifies,
   exactly, that the field Q[X]/(q(t0, X)) has automorphism group
   isomorphic to G, with an explicit isomorphism witness,
5. repeats until the requested number of pairwise-distinct verified
   fields is collected, and assembles a certificate.

Verification at each t0 walks the tower instead of factoring q(t0, X)
over the big field: automorphisms are enumerated as pairs (sigma, root)
with sigma an automorphism of L and the root drawn from a cubic, so the
largest norms that ever reach the factorization engine have degree
3 * [E_t0 : Q].
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BudgetExhaustedError,
    CapExceededError,
    SpecParseError,
    VerificationError,
)
from .exact import BiPoly, UniPoly, discriminant, interpolate, poly_gcd
from .factor import _record, factor_over_Q
from .family import BadSet, FamilyMember, S3Certificate, bad_set, build_member, certify_s3
from .numfield import (
    AutomorphismTable,
    NfElement,
    NumberField,
    SplittingField,
    fixed_field,
    roots_in_field,
    shift_sequence,
    splitting_field,
)
from .perm import AbstractGroup, PermGroup, are_isomorphic

logger = logging.getLogger(__name__)

SN_CAP = 4


def realize_sn(n: int, max_degree=24) -> SplittingField:
    """Splitting field of X^n - X - 1 with full Galois group S_n.

    For n = 1 the polynomial degenerates, so X - 1 stands in: L = Q with
    the trivial group acting on the single root.
    """
    if n < 1:
        raise SpecParseError(f"n must be >= 1, got {n}")
    if n > SN_CAP:
        raise CapExceededError(f"n = {n} exceeds the supported cap {SN_CAP}")
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    if fact > max_degree:
        raise CapExceededError(
            f"splitting field degree {fact} exceeds the cap {max_degree}"
        )
    if n == 1:
        f = UniPoly([Fraction(-1), Fraction(1)], "X")
    else:
        coeffs = [Fraction(-1), Fraction(-1)] + [Fraction(0)] * (n - 2) + [Fraction(1)]
        f = UniPoly(coeffs, "X")
    L = splitting_field(f, max_degree=max_degree)
    if L.galois.order != fact:
        raise VerificationError(
            f"Galois group of X^{n} - X - 1 has order {L.galois.order}, "
            f"expected {fact}"
        )
    return L


def subgroup_preimage(L: SplittingField, G: PermGroup) -> PermGroup:
    """G' inside Gal(L/Q): the Galois elements whose root permutation
    lies in G."""
    if G.degree != len(L.roots):
        raise SpecParseError(
            f"group degree {G.degree} does not match the {len(L.roots)} roots"
        )
    members = [p for p in L.galois.elements if p in G.elements]
    Gp = PermGroup.from_elements(members, G.degree)
    if Gp.order != G.order:
        raise VerificationError("preimage order mismatch: Galois group not full")
    return Gp


def compute_y(L: SplittingField, Gp: PermGroup):
    """Generator y of the fixed field of G' and its minimal polynomial.

    When G' is the full Galois group the fixed field is Q and y = 0 is
    the canonical choice (smallest certificate).
    """
    if Gp.order == L.galois.order:
        y = L.field.zero()
        return y, UniPoly.gen("X")
    return fixed_field(L, Gp)


@dataclass
class PipelineState:
    n: int
    G: PermGroup
    G_abstract: AbstractGroup
    L: SplittingField
    Gp: PermGroup
    y: NfElement
    y_minpoly: UniPoly
    member: FamilyMember
    s3_cert: S3Certificate
    c: int
    q: BiPoly
    bad: BadSet


def build_E_minpoly(L: SplittingField, y: NfElement):
    """Minimal polynomial q(T, X) over Q(T) of z = x + c*theta.

    q is the norm from L(T) down to Q(T) of X^3 + (T-y)(X+1) shifted by
    c*theta, computed by exact evaluation at rational (t, x) grid points
    and two-stage interpolation.  The first shift c making q squarefree
    as a polynomial in X over Q(T) wins; squarefreeness makes q
    irreducible (the norm of an irreducible polynomial is a power of an
    irreducible one).  Returns (c, q).
    """
    K = L.field
    N = K.degree
    member_poly_spec = None  # cached specializations per t

    if N == 1:
        root0 = K.gen().coords[0]
        yq = y.to_poly().eval(root0)
        q = BiPoly.from_terms(
            [
                (0, 3, Fraction(1)),
                (1, 1, Fraction(1)),
                (0, 1, -yq),
                (1, 0, Fraction(1)),
                (0, 0, -yq),
            ]
        )
        return 0, q
    theta = K.gen()
    member = _cubic_over(K, y)
    deg_t, deg_x = N, 3 * N
    for c in shift_sequence():
        if c == 0:
            continue
        cols = []
        t_points = [Fraction(t) for t in range(deg_t + 1)]
        x_points = [Fraction(x) for x in range(deg_x + 1)]
        ok = True
        rows_by_t = []
        for tq in t_points:
            spec = member.specialize(tq)  # cubic in X over K
            values = []
            for xq in x_points:
                e = spec.eval(K.from_rational(xq) - theta * c)
                values.append(K.norm(e))
            rows_by_t.append(interpolate(x_points, values, "X"))
        # interpolate each X-coefficient across t
        rows = []
        for j in range(deg_x + 1):
            vals = [p[j] for p in rows_by_t]
            rows.append(interpolate(t_points, vals, "T"))
        q = BiPoly(
            [
                [rows[j][i] for j in range(deg_x + 1)]
                for i in range(max(p.degree for p in rows) + 1)
            ]
        )
        if q.deg_X != deg_x or q.lc_X().degree != 0 or q.coeff(0, deg_x) != 1:
            raise VerificationError("norm is not monic of the expected degree")
        # squarefree over Q(T): some specialization has nonzero discriminant
        found = False
        for t in range(6 * deg_x * deg_x + 2):
            q_t = q.specialize(Fraction(t))
            if q_t.degree == deg_x and discriminant(q_t) != 0:
                found = True
                break
        if found:
            _record("primitive_shift", c)
            return c, q
        logger.debug("shift c=%d gives a non-squarefree norm; trying next", c)
    raise VerificationError("unreachable: no primitive shift found")


def _cubic_over(K, y):
    one = K.one()
    return BiPoly.from_terms(
        [(0, 3, one), (1, 1, one), (0, 1, -y), (1, 0, one), (0, 0, -y)],
        K,
    )


@dataclass
class SpecializationRecord:
    t0: Fraction
    status: str  # "accepted" or "rejected"
    reason: str | None = None
    q0: UniPoly | None = None
    field: NumberField | None = None
    theta0: NfElement | None = None
    aut: AutomorphismTable | None = None
    witness: tuple | None = None


def build_state(G: PermGroup, n: int, max_splitting_degree=24) -> PipelineState:
    L = realize_sn(n, max_degree=max_splitting_degree)
    Gp = subgroup_preimage(L, G)
    y, y_min = compute_y(L, Gp)
    expected = L.degree // Gp.order
    if y_min.degree != expected:
        raise VerificationError(
            f"fixed-field generator degree {y_min.degree}, expected {expected}"
        )
    member = build_member(L.field, y)
    s3_cert = certify_s3(member)
    c, q = build_E_minpoly(L, y)
    if q.deg_X != 3 * L.degree:
        raise VerificationError("q has the wrong X-degree")
    bad = bad_set(q)
    return PipelineState(
        n=n,
        G=G,
        G_abstract=G.to_abstract()[0],
        L=L,
        Gp=Gp,
        y=y,
        y_minpoly=y_min,
        member=member,
        s3_cert=s3_cert,
        c=c,
        q=q,
        bad=bad,
    )


def specialize_and_verify(state: PipelineState, t0) -> SpecializationRecord:
    """Verify one candidate specialization exactly; never trusts the
    existence theorem for any individual t0."""
    t0 = Fraction(t0)
    if state.bad.contains_rational(t0):
        return SpecializationRecord(t0, "rejected", "bad set: multiple root")
    q0 = state.q.specialize(t0)
    if q0.degree != state.q.deg_X or discriminant(q0) == 0:
        return SpecializationRecord(t0, "rejected", "bad set: multiple root")
    if not factor_over_Q(q0).is_irreducible:
        return SpecializationRecord(t0, "rejected", "q(t0, X) reducible over Q")
    E = NumberField(q0.with_var("Z"), trusted=True)
    z0 = E.gen()
    L, c = state.L, state.c
    theta0 = _embed_theta(state, E, t0)
    # enumerate automorphisms through the tower: q(t0, X) factors over L
    # as the product of the conjugate cubics shifted by c*sigma(theta),
    # so its roots in E are exactly xi + c*sigma(theta)-image with xi a
    # root in E of the corresponding conjugate cubic.
    cubic_roots = {}
    images = []
    for j in range(L.autos.order):
        y_img = L.autos.apply(j, state.y).to_poly().eval(theta0)
        key = y_img.coords
        if key not in cubic_roots:
            a = E.from_rational(t0) - y_img
            cubic = UniPoly([a, a, E.zero(), E.one()], "X", E)
            cubic_roots[key] = roots_in_field(cubic, E)
        theta0_j = L.autos.maps[j].to_poly().eval(theta0)
        for xi in cubic_roots[key]:
            w = xi + theta0_j * c
            if q0.eval(w):
                raise VerificationError("candidate image is not a root of q(t0, X)")
            images.append(w)
    unique = sorted(set(images), key=NfElement.sort_key)
    if len(unique) != state.G.order:
        return SpecializationRecord(
            t0,
            "rejected",
            f"automorphism count {len(unique)} != |G| = {state.G.order}",
        )
    aut = AutomorphismTable(E, unique)
    ok, witness = are_isomorphic(aut.group, state.G_abstract)
    if not ok:
        return SpecializationRecord(
            t0, "rejected", "automorphism group not isomorphic to G"
        )
    return SpecializationRecord(
        t0, "accepted", None, q0, E, theta0, aut, witness
    )


def _embed_theta(state: PipelineState, E: NumberField, t0: Fraction) -> NfElement:
    """Image of L's generator theta inside E_t0 = Q[Z]/(q(t0, Z)).

    theta0 is the unique common root of L's modulus and of the relation
    cubic (z0 - cW)^3 + (t0 - y(W))((z0 - cW) + 1): the gcd over E is
    linear.
    """
    L, c = state.L, state.c
    if L.degree == 1:
        return E.zero()
    z0 = E.gen()
    glE = L.field.modulus.with_var("W").to_field(E)
    yW = state.y.to_poly().with_var("W").to_field(E)
    lin = UniPoly([z0, E.from_rational(-c)], "W", E)  # z0 - c*W
    t0E = UniPoly.constant(E.from_rational(t0), "W", E)
    H = lin * lin * lin + (t0E - yW) * (lin + E.one())
    g = poly_gcd(glE, H)
    if g.degree != 1:
        raise VerificationError("generator embedding gcd is not linear")
    theta0 = -g.coeffs[0] / g.coeffs[1]
    if L.field.modulus.eval(theta0):
        raise VerificationError("embedded generator is not a root of the modulus")
    return theta0


# -- field distinctness -----------------------------------------------------


def fields_distinct_exact(a: SpecializationRecord, b: SpecializationRecord) -> bool:
    """Exact distinctness: neither defining polynomial has a root in the
    other field.  Both directions checked."""
    if roots_in_field(b.q0, a.field):
        return False
    if roots_in_field(a.q0, b.field):
        return False
    return True


EXACT_DISTINCTNESS_DEGREE = 6


@dataclass
class RealizationCertificate:
    group_n: int
    group_generators: tuple  # cycle-notation strings
    group_name: str | None
    group_order: int
    state: PipelineState
    accepted: tuple  # of SpecializationRecord
    transcript: tuple  # of (t0, status, reason)
    distinctness: tuple  # of (i, j, mode, detail)
    audit: tuple  # of (event, value)


def t0_sequence(t_max: int):
    """0, 1, -1, 2, -2, ..., then half-integers, bounded by height."""
    yield Fraction(0)
    for k in range(1, t_max + 1):
        yield Fraction(k)
        yield Fraction(-k)
    k = 1
    while k <= 2 * t_max:
        yield Fraction(k, 2)
        yield Fraction(-k, 2)
        k += 2


def run(
    G: PermGroup,
    n: int,
    count: int = 2,
    t_max: int = 200,
    distinct: str = "auto",
    max_splitting_degree: int = 24,
    group_generators=(),
    group_name=None,
) -> RealizationCertificate:
    if count < 1:
        raise SpecParseError(f"count must be >= 1, got {count}")
    if distinct not in ("exact", "auto", "assumed"):
        raise SpecParseError(f"unknown distinctness mode {distinct!r}")
    from .factor import audit_trail

    with audit_trail() as audit:
        state = build_state(G, n, max_splitting_degree=max_splitting_degree)
        use_exact = distinct == "exact" or (
            distinct == "auto" and state.q.deg_X <= EXACT_DISTINCTNESS_DEGREE
        )
        accepted = []
        transcript = []
        for t0 in t0_sequence(t_max):
            rec = specialize_and_verify(state, t0)
            if rec.status == "accepted" and use_exact:
                clash = next(
                    (p for p in accepted if not fields_distinct_exact(p, rec)),
                    None,
                )
                if clash is not None:
                    rec = SpecializationRecord(
                        t0,
                        "rejected",
                        f"field coincides with the one accepted at t0 = {clash.t0}",
                    )
            transcript.append((rec.t0, rec.status, rec.reason))
            if rec.status == "accepted":
                accepted.append(rec)
                if len(accepted) == count:
                    break
        if len(accepted) < count:
            raise BudgetExhaustedError(
                f"only {len(accepted)} of {count} fields found within "
                f"height {t_max}",
                transcript=transcript,
            )
        distinctness = []
        for i in range(len(accepted)):
            for j in range(i + 1, len(accepted)):
                if use_exact:
                    # already verified pairwise during collection
                    distinctness.append(
                        (i, j, "exact", "no shared root of defining polynomials")
                    )
                else:
                    distinctness.append(
                        (i, j, "guaranteed", "condition (eq)")
                    )
    return RealizationCertificate(
        group_n=n,
        group_generators=tuple(group_generators),
        group_name=group_name,
        group_order=G.order,
        state=state,
        accepted=tuple(accepted),
        transcript=tuple(transcript),
        distinctness=tuple(distinctness),
        audit=tuple(audit),
    )
