"""Certificate JSON: canonical emission, parsing, and validation.

The schema is text-first so certificates can be read, diffed, and
re-checked by other tools: rationals are "p/q" strings, univariate
polynomials are ascending coefficient arrays, bivariate polynomials are
arrays of arrays with the outer index the power of T, field elements are
coordinate arrays, permutations are cycle strings.  Emission is
canonical (sorted keys, fixed indentation), so equal runs produce
byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import SpecParseError
from .exact import (
    UniPoly,
    parse_bipoly,
    parse_rational,
    parse_unipoly,
    render_bipoly,
    render_rational,
    render_unipoly,
)
from .factor import EDF_SEED, is_irreducible_Q
from .numfield import NumberField
from .perm import AbstractGroup, PermGroup, parse_cycles, render_cycles

FORMAT_NAME = "autrealize-certificate"
FORMAT_VERSION = 1


def _render_coords(e):
    return [render_rational(c) for c in e.coords]


def _render_nf_unipoly(p):
    return [_render_coords(c) for c in p.coeffs]


def certificate_to_json(cert) -> dict:
    """Build the JSON object for a RealizationCertificate."""
    state = cert.state
    audit = {}
    for event, value in cert.audit:
        audit.setdefault(event, []).append(value)
    specs = []
    accepted_by_t0 = {rec.t0: rec for rec in cert.accepted}
    for t0, status, reason in cert.transcript:
        if status == "accepted" and t0 in accepted_by_t0:
            rec = accepted_by_t0[t0]
            specs.append(
                {
                    "t0": render_rational(t0),
                    "status": "accepted",
                    "defining_polynomial": render_unipoly(rec.q0),
                    "theta_image": _render_coords(rec.theta0),
                    "automorphisms": {
                        "generator_images": [
                            _render_coords(m) for m in rec.aut.maps
                        ],
                        "table": [list(row) for row in rec.aut.group.table],
                    },
                    "witness": list(rec.witness),
                }
            )
        else:
            specs.append(
                {
                    "t0": render_rational(t0),
                    "status": "rejected",
                    "reason": reason,
                }
            )
    distinctness = []
    for i, j, mode, detail in cert.distinctness:
        entry = {"pair": [i, j], "mode": mode}
        if mode == "guaranteed":
            entry["cite"] = detail
        else:
            entry["detail"] = detail
        distinctness.append(entry)
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "group": {
            "n": cert.group_n,
            "generators": list(cert.group_generators),
            "name": cert.group_name,
            "order": cert.group_order,
        },
        "pipeline": {
            "n": state.n,
            "splitting_polynomial": render_unipoly(state.L.poly),
            "field_modulus": render_unipoly(state.L.field.modulus),
            "galois_order": state.L.galois.order,
            "g_prime_order": state.Gp.order,
            "y": _render_coords(state.y),
            "y_minpoly": render_unipoly(state.y_minpoly),
            "primitive_shift": state.c,
            "q": render_bipoly(state.q),
            "bad_set_rational": [
                render_rational(t) for t in state.bad.rational_points
            ],
            "family": {
                "square_class_degree": state.s3_cert.square_class_degree,
                "irreducibility_transcript": [
                    list(line) for line in state.s3_cert.irreducibility
                ],
            },
        },
        "specializations": specs,
        "distinctness": distinctness,
        "metadata": {
            "audit": audit,
            "edf_seed": hex(EDF_SEED),
        },
    }


def dumps_canonical(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def emit_certificate(cert, path) -> str:
    text = dumps_canonical(certificate_to_json(cert))
    with open(path, "w") as fh:
        fh.write(text)
    return text


class ValidationReport:
    """Pass/fail lines, one per check."""

    def __init__(self):
        self.checks = []

    def add(self, name, ok, detail=""):
        self.checks.append((name, ok, detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def lines(self):
        out = []
        for name, ok, detail in self.checks:
            mark = "PASS" if ok else "FAIL"
            line = f"[{mark}] {name}"
            if detail:
                line += f": {detail}"
            out.append(line)
        return out


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecParseError(f"cannot read certificate: {exc}") from exc


def validate_certificate(path, deep=False) -> ValidationReport:
    """Re-check a certificate file.

    Shallow checks: schema, group closure, irreducibility of each
    defining polynomial, automorphism images are roots, table recomputes
    from the images and is a group law, witness is an isomorphism onto
    G, distinctness entries cover all accepted pairs.  With ``deep``,
    the whole pipeline is re-run and compared.
    """
    report = ValidationReport()
    data = _load(path)

    schema_ok = (
        isinstance(data, dict)
        and data.get("format") == FORMAT_NAME
        and data.get("version") == FORMAT_VERSION
        and all(
            k in data
            for k in ("group", "pipeline", "specializations", "distinctness")
        )
    )
    report.add("schema", schema_ok)
    if not schema_ok:
        return report

    try:
        n = int(data["group"]["n"])
        gens = [parse_cycles(s, n) for s in data["group"]["generators"]]
        G = PermGroup(gens, degree=n)
        report.add(
            "group order",
            G.order == data["group"]["order"],
            f"closure has order {G.order}",
        )
    except Exception as exc:
        report.add("group order", False, str(exc))
        return report
    G_abstract = G.to_abstract()[0]

    accepted = []
    for k, spec in enumerate(data["specializations"]):
        label = f"specialization t0={spec.get('t0')}"
        if spec.get("status") != "accepted":
            report.add(f"{label} rejected entry", "reason" in spec)
            continue
        try:
            q0 = parse_unipoly(spec["defining_polynomial"], "X")
            report.add(
                f"{label} irreducible",
                is_irreducible_Q(q0),
            )
            E = NumberField(q0.with_var("Z"), trusted=True)
            images = [
                E.element([parse_rational(s) for s in coords])
                for coords in spec["automorphisms"]["generator_images"]
            ]
            roots_ok = all(not E.modulus.eval(m) for m in images)
            report.add(f"{label} images are roots", roots_ok)
            index = {m.coords: i for i, m in enumerate(images)}
            table = spec["automorphisms"]["table"]
            recomputed = True
            for a_i, a in enumerate(images):
                for b_i, b in enumerate(images):
                    c = b.to_poly().eval(a)
                    if index.get(c.coords) != table[a_i][b_i]:
                        recomputed = False
            report.add(f"{label} table recomputes", recomputed)
            try:
                aut_group = AbstractGroup(table)
                report.add(f"{label} table is a group", True)
            except Exception as exc:
                report.add(f"{label} table is a group", False, str(exc))
                continue
            witness = spec["witness"]
            wit_ok = sorted(witness) == list(range(G.order)) and len(
                witness
            ) == aut_group.order
            if wit_ok:
                for i in range(aut_group.order):
                    for j in range(aut_group.order):
                        if (
                            witness[aut_group.mul(i, j)]
                            != G_abstract.mul(witness[i], witness[j])
                        ):
                            wit_ok = False
            report.add(f"{label} witness is an isomorphism", wit_ok)
            accepted.append(spec)
        except (KeyError, ValueError, SpecParseError) as exc:
            report.add(f"{label} well-formed", False, str(exc))

    pairs = {tuple(d["pair"]) for d in data["distinctness"]}
    want = {
        (i, j)
        for i in range(len(accepted))
        for j in range(i + 1, len(accepted))
    }
    report.add(
        "distinctness covers all pairs",
        pairs == want,
        f"{len(pairs)} entries for {len(accepted)} accepted fields",
    )
    modes_ok = all(
        d["mode"] in ("exact", "guaranteed")
        and ("cite" in d if d["mode"] == "guaranteed" else "detail" in d)
        for d in data["distinctness"]
    )
    report.add("distinctness modes labeled", modes_ok)

    if deep:
        _deep_validate(data, G, report)
    return report


def _deep_validate(data, G, report):
    from .pipeline import build_state, specialize_and_verify

    try:
        state = build_state(G, int(data["pipeline"]["n"]))
    except Exception as exc:
        report.add("deep: pipeline rebuild", False, str(exc))
        return
    report.add(
        "deep: q matches",
        render_bipoly(state.q) == data["pipeline"]["q"],
    )
    for spec in data["specializations"]:
        t0 = parse_rational(spec["t0"])
        rec = specialize_and_verify(state, t0)
        label = f"deep: t0={spec['t0']}"
        if spec["status"] == "accepted":
            ok = (
                rec.status == "accepted"
                and render_unipoly(rec.q0) == spec["defining_polynomial"]
                and [list(r) for r in rec.aut.group.table]
                == spec["automorphisms"]["table"]
            )
            report.add(f"{label} re-verifies", ok, rec.reason or "")
        else:
            report.add(
                f"{label} still rejected",
                rec.status == "rejected",
                rec.reason or "",
            )
