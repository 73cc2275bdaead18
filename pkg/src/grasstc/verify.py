"""Claim-by-claim verification of the closed forms against the engine.

Each check produces a ``VerificationRecord``.  A record carries the expected
value, where it comes from ("stated" for a closed-form claim, "derived" for
a consequence we computed ourselves), the computed value and a status.
Failures keep both values verbatim; nothing is rounded or reinterpreted.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, asdict
from math import comb

from . import cells
from .bounds import (
    bounds_report,
    closed_form_zcl,
    inherited_claims,
    monotonicity_report,
    predict_products,
    tc_upper,
    tc_upper_listed,
)
from .errors import InfeasibleError
from .flag import grassmann_nonzero_via_flag
from .ring import DEFAULT_CAP, build_ring, dual_class, presentation_relations, w_space
from .tensor import height_z, kernel_matches_ideal, rho, z_monomial_is_nonzero, zcl_basic, zcl_exact

PASS, FAIL, INAPPLICABLE, INFEASIBLE = "pass", "fail", "inapplicable", "infeasible"
FLAG_MAX_N = 9


@dataclass
class VerificationRecord:
    claim: str
    expected: object
    provenance: str  # "stated" or "derived"
    computed: object
    status: str
    note: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        out = f"{self.status.upper():12s} {self.claim}: expected {self.expected} [{self.provenance}], got {self.computed}"
        return out + (f" ({self.note})" if self.note else "")


def _rec(claim, expected, computed, provenance="stated", note="") -> VerificationRecord:
    return VerificationRecord(claim, expected, provenance, computed, PASS if expected == computed else FAIL, note)


def _fmt(k: int, exps) -> str:
    return w_space(k).format_monomial(tuple(exps))


def presentation_records() -> list[VerificationRecord]:
    sp = w_space(2)
    out = [
        _rec("presentation/k2n6/wb3", "w1^3", str(dual_class(2, 3))),
        _rec("presentation/k2n6/wb4", "w1^4 + w1^2*w2 + w2^2", str(dual_class(2, 4))),
    ]
    rels = [str(p) for p in presentation_relations(2, 6)]
    out.append(_rec("presentation/k2n6/relations", ["w1^5 + w1*w2^2", "w1^4*w2 + w1^2*w2^2 + w2^3"], rels))
    ring = build_ring(2, 6)
    out.append(_rec("presentation/k2n6/annihilated", [False, False],
                    [ring.is_nonzero(sp.parse(r)) for r in rels], "derived"))
    return out


def pair_records(k: int, n: int, cap: int = DEFAULT_CAP, exact: bool = True) -> list[VerificationRecord]:
    """All per-(k, n) checks; an infeasible ring yields a single infeasible record."""
    tag = f"k{k}n{n}"
    try:
        ring = build_ring(k, n, cap)
        ring.build_all()
    except InfeasibleError as exc:
        return [VerificationRecord(f"ring/{tag}", None, "derived", None, INFEASIBLE, str(exc))]
    out: list[VerificationRecord] = []
    sp = ring.space

    out.append(_rec(f"ring/{tag}/total-rank", comb(n, k), sum(ring.basis_sizes()), "derived"))
    out.append(_rec(f"cells/{tag}/betti", cells.cell_counts(k, n), ring.basis_sizes(), "derived"))

    pred = predict_products(k, n)
    cup, _ = ring.max_monomial_cup_length()
    for c in pred.claims:
        label = c.label(k, n)
        if not c.applicable:
            out.append(VerificationRecord(label, c.nonzero, "stated", None, INAPPLICABLE, c.reason))
            continue
        got = ring.monomial_is_nonzero(c.exps)
        out.append(_rec(label, c.nonzero, got, note=_fmt(k, c.exps)))
        if c.equals is not None:
            diff = sp.monomial(c.exps) + sp.monomial(c.equals)
            out.append(_rec(f"{label}/equals/{_fmt(k, c.equals)}", True, not ring.is_nonzero(diff)))
        if c.maximal:
            out.append(_rec(f"{label}/maximal", sum(c.exps), cup, note="longest generator product"))
        if n <= FLAG_MAX_N:
            cert = grassmann_nonzero_via_flag(sp.monomial(c.exps), k, n)
            out.append(_rec(f"{label}/flag", c.nonzero, cert.nonzero, "derived"))
    for c in inherited_claims(k, n):
        out.append(_rec(f"{c.family}/{tag}/nonzero-from-n{c.inherited_from}", True,
                        ring.monomial_is_nonzero(c.exps), note=_fmt(k, c.exps)))

    if k <= 3 and n <= 10:
        for i in range(1, k + 1):
            expect = rho(ring.generator_height(i)) - 1
            out.append(_rec(f"z-height/{tag}/w{i}", expect, height_z(ring, i)))

    if k >= 2:
        out.append(_rec(f"tc-upper/{tag}", tc_upper_listed(k, n), tc_upper(k, n, ring)))

    cf = closed_form_zcl(k, n)
    basic = zcl_basic(ring)
    if cf.zcl is None:
        out.append(VerificationRecord(f"{cf.family}/{tag}", None, "stated", basic.zcl, INAPPLICABLE,
                                      cf.reason))
    elif cf.exact:
        out.append(_rec(f"{cf.family}/{tag}/zcl-basic", cf.zcl, basic.zcl))
        if exact:
            out.append(_rec(f"{cf.family}/{tag}/zcl-exact", cf.zcl, zcl_exact(ring).zcl))
    else:
        rec = _rec(f"{cf.family}/{tag}/zcl-lower", True, basic.zcl >= cf.zcl,
                   note=f"closed form {cf.zcl}, engine {basic.zcl}")
        if rec.status == PASS and basic.zcl > cf.zcl:
            rec.note += "; improvement found"
        out.append(rec)
    if cf.witness is not None:
        out.append(_rec(f"{cf.family}/{tag}/witness-nonzero", True, z_monomial_is_nonzero(ring, cf.witness),
                        note="z^" + ".".join(map(str, cf.witness))))

    rep = bounds_report(k, n, ring)
    out.append(_rec(f"bounds/{tag}/ordered", True,
                    rep.cat_lower <= rep.cat_upper and rep.tc_lower <= rep.tc_upper, "derived"))
    return out


def example_records() -> list[VerificationRecord]:
    out = []
    r = bounds_report(2, 4)
    out.append(_rec("example/tc/k2n4", [5, 7], [r.tc_lower, r.tc_upper]))
    r = bounds_report(2, 13)
    out.append(_rec("example/tc/k2n13/lower-at-least-23", True, r.tc_lower >= 23, note=f"engine {r.tc_lower}"))
    out.append(_rec("example/tc/k2n13/upper", 43, r.tc_upper))
    out.append(_rec("example/cat/k2n13/lower", 19, r.cat_lower))
    r = bounds_report(3, 11)
    out.append(_rec("example/tc/k3n11/lower-at-least-31", True, r.tc_lower >= 31, note=f"engine {r.tc_lower}"))
    out.append(_rec("example/cat/k3n11/lower", 20, r.cat_lower))
    ring = build_ring(5, 13)
    out.append(_rec("example/tc/k5n13/z1^15z2^15", True, z_monomial_is_nonzero(ring, (15, 15, 0, 0, 0))))
    r = bounds_report(5, 13, ring)
    out.append(_rec("example/tc/k5n13/lower-at-least-31", True, r.tc_lower >= 31, note=f"engine {r.tc_lower}"))
    out.append(_rec("example/cat/k5n13/lower-at-least-16", True, r.cat_lower >= 16, note=f"engine {r.cat_lower}"))
    m = monotonicity_report(2, 6, 9)
    out.append(_rec("monotonicity/k2m6n9/tc", True, m.get("TC", "closed-form").established))
    m = monotonicity_report(2, 7, 9)
    out.append(_rec("monotonicity/k2m7n9/tc-closed-form", False, m.get("TC", "closed-form").established,
                    note="inconclusive"))
    eng = m.get("TC", "engine")
    out.append(VerificationRecord("monotonicity/k2m7n9/tc-engine", None, "derived", eng.established, PASS,
                                  f"engine lower bound {eng.lower_bound} vs threshold {eng.threshold}"))
    failures = []
    for k in (1, 2, 3):
        for n in range(max(2 * k, 2), 17):
            for m_ in range(max(2 * k, 2), n + 1):
                if not monotonicity_report(k, m_, n, use_engine=False).get("cat", "closed-form").established:
                    failures.append((k, m_, n))
    out.append(_rec("monotonicity/cat/k1-3/n<=16", [], failures, note="chains without an established criterion"))
    for k, n in [(1, 3), (2, 4), (2, 5)]:
        ring = build_ring(k, n)
        out.append(_rec(f"kernel-ideal/k{k}n{n}", True,
                        all(kernel_matches_ideal(ring, d) for d in range(2 * ring.dim + 1)), "derived"))
    for k, n in [(2, 4), (3, 6)]:
        out.append(_rec(f"cells/k{k}n{n}/skeleton", True, cells.skeleton_agreement(k, n)))
    return out


def _pair_job(args):
    k, n, cap, exact = args
    return pair_records(k, n, cap, exact)


def run_suite(
    max_k: int = 3, max_n: int = 11, cap: int = DEFAULT_CAP, jobs: int = 1, exact: bool = True,
    extra_pairs: tuple[tuple[int, int], ...] = (),
) -> list[VerificationRecord]:
    """Every record for 2 <= k <= max_k, 2k <= n <= max_n, in (k, n) order."""
    pairs = [(k, n) for k in range(2, max_k + 1) for n in range(max(2 * k, 4), max_n + 1)]
    pairs += [p for p in extra_pairs if p not in pairs]
    tasks = [(k, n, cap, exact) for k, n in pairs]
    records = presentation_records()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for recs in pool.map(_pair_job, tasks):
                records.extend(recs)
    else:
        for t in tasks:
            records.extend(_pair_job(t))
    records.extend(example_records())
    return records


def summarize(records: list[VerificationRecord]) -> dict[str, int]:
    out = {PASS: 0, FAIL: 0, INAPPLICABLE: 0, INFEASIBLE: 0}
    for r in records:
        out[r.status] += 1
    return out
