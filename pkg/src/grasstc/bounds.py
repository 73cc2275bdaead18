"""Closed-form predictions, cat/TC sandwiches and monotonicity criteria.

Closed forms are stated in terms of s with 2^s < n <= 2^(s+1) and a case
offset t that depends on the family.  Every predicted product is emitted as
a ``ProductClaim`` so the engine can check it; claims whose parameters fall
outside the range where they make sense are kept but marked inapplicable.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

from .errors import InfeasibleError, UsageError
from .gf2poly import Monomial
from .ring import GrassmannRing, build_ring
from .tensor import rho, zcl_basic, zcl_exact

__all__ = [
    "rho",
    "s_of",
    "ProductClaim",
    "ClosedFormPrediction",
    "ZclPrediction",
    "BoundsReport",
    "predict_products",
    "inherited_claims",
    "closed_form_zcl",
    "lemma_bound",
    "tc_upper",
    "tc_upper_listed",
    "bounds_report",
    "MonotonicityCheck",
    "MonotonicityReport",
    "complex_tc",
    "monotonicity_report",
]


def s_of(n: int) -> int:
    """The integer s with 2^s < n <= 2^(s+1)."""
    if n < 2:
        raise UsageError(f"s is defined for n >= 2, got {n}")
    return (n - 1).bit_length() - 1


def _vec(k: int, *exps: int) -> Monomial:
    out = list(exps[:k]) + [0] * (k - len(exps))
    return tuple(out)


@dataclass(frozen=True)
class ProductClaim:
    family: str
    exps: Monomial
    nonzero: bool
    maximal: bool = False  # claimed to be a longest nonzero generator product
    equals: Monomial | None = None  # claimed equal to this monomial
    applicable: bool = True
    reason: str = ""
    inherited_from: int | None = None  # n at which the claim was stated

    def label(self, k: int, n: int) -> str:
        tag = "nonzero" if self.nonzero else "zero"
        return f"{self.family}/k{k}n{n}/{tag}/{'.'.join(map(str, self.exps))}"


@dataclass
class ClosedFormPrediction:
    k: int
    n: int
    s: int
    t: int | None
    claims: list[ProductClaim] = field(default_factory=list)

    def applicable(self) -> list[ProductClaim]:
        return [c for c in self.claims if c.applicable]


def _height_w1(k: int, n: int) -> int:
    s = s_of(n)
    if k == 2 or (k == 3 and n == 2**s + 1):
        return 2 ** (s + 1) - 2
    return 2 ** (s + 1) - 1


def _claim(k: int, n: int, family: str, exps: Monomial, nonzero: bool, **kw) -> ProductClaim:
    """Mark a claim inapplicable if a nonzero prediction cannot fit below the top degree."""
    dim = k * (n - k)
    deg = sum((i + 1) * e for i, e in enumerate(exps))
    if any(e < 0 for e in exps):
        return ProductClaim(family, tuple(max(e, 0) for e in exps), nonzero, applicable=False,
                            reason="negative exponent at this n")
    if nonzero and deg > dim and "reason" not in kw:
        return ProductClaim(family, exps, nonzero, applicable=False,
                            reason=f"degree {deg} exceeds top degree {dim}", **kw)
    return ProductClaim(family, exps, nonzero, **kw)


def _stong_g3(n: int) -> list[ProductClaim]:
    s = s_of(n)
    top = 2 ** (s + 1)
    if n == top:
        return [_claim(3, n, "g3-maximal", (top - 1, top - 4, 0), True, maximal=True)]
    for p in range(1, s + 1):
        if n == top - 2**p + 1:
            return [_claim(3, n, "g3-maximal", (top - 2, top - 3 * 2 ** (p - 1) - 2, 0), True, maximal=True)]
    for p in range(2, s + 1):
        t = n - (top - 2**p + 1)
        if 0 < t < 2 ** (p - 1):
            a2 = top - 3 * 2 ** (p - 1) - 1
            return [
                _claim(3, n, "g3-maximal", (top - 1, a2, t - 1), True, maximal=True),
                # the misprinted variant carries one extra w2 and overshoots the top degree
                ProductClaim("g3-maximal-misprint", (top - 1, a2 + 1, t - 1), False,
                             reason="misprinted exponent; degree exceeds the top degree"),
            ]
    return []


def _stong_g4(n: int) -> list[ProductClaim]:
    s = s_of(n)
    top = 2 ** (s + 1)
    if n == 2**s + 1:
        return [
            _claim(4, n, "g4-maximal", (top - 2, 2**s - 5, 0, 0), True, maximal=True),
            _claim(4, n, "g4-maximal", (top - 1, 2**s - 7, 1, 0), True, maximal=True),
        ]
    for r in range(s):
        t = n - (2**s + 2**r + 1)
        if 0 <= t < 2**r:
            out = [_claim(4, n, "g4-maximal", (top - 2, 2**s + 2 ** (r + 1) - 5, 0, t), True, maximal=True)]
            if r > 0:
                out.append(_claim(4, n, "g4-maximal", (top - 1, 2**s + 2 ** (r + 1) - 7, 1, t), True,
                                  maximal=True))
            return out
    return []


def predict_products(k: int, n: int) -> ClosedFormPrediction:
    """Every product claim that is stated for exactly this (k, n)."""
    if k < 1 or 2 * k > n:
        raise UsageError(f"predictions need 1 <= k <= n/2, got k={k}, n={n}")
    s = s_of(n)
    pred = ClosedFormPrediction(k, n, s, None)
    claims = pred.claims
    v = lambda *e: _vec(k, *e)  # noqa: E731

    if k >= 2:
        h = _height_w1(k, n)
        claims.append(_claim(k, n, "height-w1", v(h), True))
        claims.append(_claim(k, n, "height-w1", v(h + 1), False))

    if k == 2:
        pred.t = n - 2**s
        claims.append(_claim(k, n, "g2-product", v(2**s, n - 2**s - 1), True))
        claims.append(_claim(k, n, "g2-product", v(2**s, n - 2**s), False))
        claims.append(_claim(k, n, "g2-maximal", v(2 ** (s + 1) - 2, n - 2**s - 1), True, maximal=True))

    if k == 3:
        t = n - 2**s
        pred.t = t
        if t == 1:
            claims.append(_claim(k, n, "g3-product", v(2**s, 2 ** (s - 1), 0), True))
            claims.append(_claim(k, n, "g3-product", v(2**s, 2 ** (s - 1), 1), False))
        elif t == 2:
            claims.append(_claim(k, n, "g3-product", v(2**s, 2 ** (s - 1), 1), True))
            claims.append(_claim(k, n, "g3-product", v(2**s, 2 ** (s - 1), 2), False))
            if not claims[-2].applicable:
                claims[-1] = ProductClaim("g3-product", v(2**s, 2 ** (s - 1), 2), False, applicable=False,
                                          reason="companion of an inapplicable nonzero claim")
        else:
            claims.append(_claim(k, n, "g3-product", v(2**s, 2**s, t - 3), True))
        claims.extend(_stong_g3(n))

    if k >= 3:
        # w1^(2^p) w2^(2^p) = w3^(2^p) on G_k(R^(2^p + k)), p the exponent with 3 <= k <= 2^p
        p = s
        if n == 2**p + k and k <= 2**p:
            claims.append(_claim(k, n, "w1w2w3", v(2**p, 2**p), True, equals=v(0, 0, 2**p)))
            claims.append(_claim(k, n, "w1w2w3", v(2**p, 2**p, 2**p), False))
        if n == 2**p + 2 ** (p - 1) + k and k <= 2 ** (p - 1):
            claims.append(_claim(k, n, "w1w2w3", v(2**p, 2**p, 2 ** (p - 1)), True))

    if k == 4:
        t = n - 2**s - 2 ** (s - 1)
        pred.t = t
        exps = v(2**s, 2**s, 2 ** (s - 1), max(t - 3, 0))
        if 3 <= t <= 2 ** (s - 1):
            claims.append(_claim(k, n, "g4-product", exps, True))
        else:
            claims.append(ProductClaim("g4-product", exps, True, applicable=False,
                                       reason=f"t={t} outside 3..{2 ** (s - 1)}"))
        claims.extend(_stong_g4(n))

    return pred


def inherited_claims(k: int, n: int) -> list[ProductClaim]:
    """Nonzero claims stated for smaller n; they persist because the relation ideal shrinks."""
    out = []
    for m in range(2 * k, n):
        for c in predict_products(k, m).applicable():
            if c.nonzero:
                out.append(ProductClaim(c.family, c.exps, True, inherited_from=m))
    return out


# -- zero-divisor cup-length -------------------------------------------------


@dataclass(frozen=True)
class ZclPrediction:
    k: int
    n: int
    zcl: int | None
    witness: Monomial | None
    exact: bool
    family: str
    reason: str = ""

    @property
    def tc_lower(self) -> int | None:
        return None if self.zcl is None else self.zcl + 1


def lemma_bound(exps: Monomial) -> tuple[int, Monomial]:
    """From w^a != 0: the z-monomial with exponents rho(a_i) - 1 and its length."""
    m = tuple(rho(a) - 1 if a else 0 for a in exps)
    return sum(m), m


def closed_form_zcl(k: int, n: int) -> ZclPrediction:
    if k < 1 or 2 * k > n:
        raise UsageError(f"closed forms need 1 <= k <= n/2, got k={k}, n={n}")
    s = s_of(n)
    top = 2 ** (s + 1)
    v = lambda *e: _vec(k, *e)  # noqa: E731

    if k == 2:
        b = rho(n - 1 - 2**s)
        return ZclPrediction(k, n, top + b - 2, v(top - 1, b - 1), True, "zcl-g2")

    if k == 3:
        t = n - 2**s
        if t == 1:
            return ZclPrediction(k, n, 3 * 2**s - 2, v(top - 1, 2**s - 1, 0), True, "zcl-g3")
        if t == 2:
            if s < 3:
                return ZclPrediction(k, n, None, None, False, "zcl-g3",
                                     "the underlying nonzero product exceeds the top degree at this n")
            return ZclPrediction(k, n, 3 * 2**s - 1, v(top - 1, 2**s - 1, 1), True, "zcl-g3")
        b = rho(t - 3)
        return ZclPrediction(k, n, 4 * 2**s + b - 3, v(top - 1, top - 1, b - 1), True, "zcl-g3")

    if k == 4:
        t = n - 2**s - 2 ** (s - 1)
        if 3 <= t <= 2 ** (s - 1):
            b = rho(t - 3)
            return ZclPrediction(k, n, 5 * 2**s + b - 4, v(top - 1, top - 1, 2**s - 1, b - 1), True, "zcl-g4")

    if k >= 4 and k <= 2 ** (s - 1) and 2**s + k <= n:
        if n <= 2**s + 2 ** (s - 1) + 2:
            return ZclPrediction(k, n, 4 * 2**s - 2, v(top - 1, top - 1), False, "zcl-gk")
        return ZclPrediction(k, n, 5 * 2**s - 3, v(top - 1, top - 1, 2**s - 1), False, "zcl-gk")

    if k >= 3:
        # largest p with 3 <= k <= 2^p and 2^p + k <= n makes w1^(2^p) w2^(2^p) nonzero
        best = None
        p = 1
        while 2**p + k <= n:
            if k <= 2**p:
                best = p
            p += 1
        if best is not None:
            value, m = lemma_bound(v(2**best, 2**best))
            return ZclPrediction(k, n, value, m, False, "zcl-w1w2")

    return ZclPrediction(k, n, None, None, False, "none", "no closed form covers this (k, n)")


# -- upper bounds and reports ------------------------------------------------


def tc_upper(k: int, n: int, ring: GrassmannRing | None = None) -> int:
    """2 dim - 1 when w1^dim vanishes, otherwise 2 dim."""
    dim = k * (n - k)
    if dim == 0:
        return 1
    if ring is None:
        ring = build_ring(k, n)
    a = [0] * ring.k
    a[0] = dim
    return 2 * dim if ring.monomial_is_nonzero(tuple(a)) else 2 * dim - 1


def tc_upper_listed(k: int, n: int) -> int:
    """The upper bound as an exception list: 2 dim only for k=1, n=2^d or k=2, n=2^d+1."""
    dim = k * (n - k)
    pow2 = lambda x: x > 0 and x & (x - 1) == 0  # noqa: E731
    if (k == 1 and pow2(n)) or (k == 2 and pow2(n - 1)):
        return 2 * dim
    return 2 * dim - 1


def complex_tc(k: int, n: int) -> int:
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n, got k={k}, n={n}")
    return 2 * k * (n - k) + 1


@dataclass
class BoundsReport:
    k: int
    n: int
    dim: int
    cat_lower: int
    cat_upper: int
    tc_lower: int
    tc_upper: int
    cup_length: int | None = None
    cat_witness: Monomial | None = None
    zcl: int | None = None
    zcl_witness: Monomial | None = None
    zcl_exact: int | None = None
    exceptions: list[str] = field(default_factory=list)
    partial: bool = False
    closed_form: ZclPrediction | None = None

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "n": self.n,
            "dim": self.dim,
            "cat": {
                "lower": self.cat_lower,
                "upper": self.cat_upper,
                "witness": list(self.cat_witness) if self.cat_witness is not None else None,
            },
            "tc": {
                "lower": self.tc_lower,
                "upper": self.tc_upper,
                "witness": list(self.zcl_witness) if self.zcl_witness is not None else None,
                "zcl": self.zcl,
            },
            "exceptions": list(self.exceptions),
        }
        if self.zcl_exact is not None:
            out["tc"]["zcl_exact"] = self.zcl_exact
        if self.partial:
            out["partial"] = True
        if self.closed_form is not None and self.closed_form.zcl is not None:
            cf = asdict(self.closed_form)
            cf["witness"] = list(cf["witness"])
            out["closed_form"] = {"zcl": cf["zcl"], "witness": cf["witness"], "exact": cf["exact"],
                                  "family": cf["family"]}
        return out


def _exceptions(k: int, n: int) -> list[str]:
    out = []
    if k == 2 and n > 2 and ((n - 1) & (n - 2)) == 0:
        out.append("w1^dim != 0: upper bound 2*dim; whether it is attained is open")
    if k == 1:
        out.append("projective space: sharp values are governed by the immersion problem")
    return out


def bounds_report(
    k: int,
    n: int,
    ring: GrassmannRing | None = None,
    *,
    exact: bool = False,
    cap: int | None = None,
) -> BoundsReport:
    """cat in [cup+1, dim+1]; TC in [max(zcl+1, cat_lower), min(tc_upper, 2 cat_upper - 1)].

    If the ring cannot be built within the cap a partial report is returned,
    built from the closed forms only.
    """
    if k < 1 or 2 * k > n:
        raise UsageError(f"bounds need 1 <= k <= n/2, got k={k}, n={n}")
    dim = k * (n - k)
    cat_upper = dim + 1
    cf = closed_form_zcl(k, n)
    try:
        if ring is None:
            ring = build_ring(k, n) if cap is None else build_ring(k, n, cap)
        cup, cup_w = ring.max_monomial_cup_length()
        zr = zcl_basic(ring)
        ze = zcl_exact(ring).zcl if exact else None
        upper = tc_upper(k, n, ring)
    except InfeasibleError:
        lower = 1 + (cf.zcl or 0)
        return BoundsReport(k, n, dim, 1, cat_upper, max(lower, 1), min(2 * dim, 2 * cat_upper - 1),
                            exceptions=_exceptions(k, n) + ["ring build infeasible: closed forms only"],
                            partial=True, closed_form=cf)
    cat_lower = cup + 1
    tc_lower = max(zr.zcl + 1, cat_lower, (ze or 0) + 1)
    return BoundsReport(
        k, n, dim, cat_lower, cat_upper, tc_lower, min(upper, 2 * cat_upper - 1),
        cup_length=cup, cat_witness=cup_w, zcl=zr.zcl, zcl_witness=zr.witness, zcl_exact=ze,
        exceptions=_exceptions(k, n), closed_form=cf,
    )


# -- monotonicity ----------------------------------------------------------------


@dataclass
class MonotonicityCheck:
    invariant: str  # "cat" or "TC"
    lower_bound: int | None
    threshold: int  # criterion: lower_bound > threshold
    source: str
    established: bool

    def message(self, k: int, m: int, n: int) -> str:
        if self.established:
            return f"established: {self.invariant}(G_{k}(R^{m})) <= {self.invariant}(G_{k}(R^{n}))"
        return "criterion not met (inconclusive)"


@dataclass
class MonotonicityReport:
    k: int
    m: int
    n: int
    checks: list[MonotonicityCheck]

    def get(self, invariant: str, source: str) -> MonotonicityCheck:
        for c in self.checks:
            if c.invariant == invariant and c.source == source:
                return c
        raise KeyError((invariant, source))

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "n": self.n,
            "checks": [
                {
                    "invariant": c.invariant,
                    "source": c.source,
                    "lower_bound": c.lower_bound,
                    "threshold": c.threshold,
                    "result": c.message(self.k, self.m, self.n),
                }
                for c in self.checks
            ],
        }


def _closed_form_cat_lower(k: int, n: int) -> int | None:
    """cup-length + 1 from the maximal-product families, when one is stated."""
    best = None
    for c in predict_products(k, n).applicable():
        if c.nonzero and c.maximal:
            best = max(best or 0, sum(c.exps) + 1)
    if k == 1:
        best = n
    return best


def monotonicity_report(
    k: int, m: int, n: int, ring: GrassmannRing | None = None, *, use_engine: bool = True
) -> MonotonicityReport:
    """Sufficient criteria for cat/TC of G_k(R^m) <= those of G_k(R^n), never a negative.

    The criteria read cat(G_k(R^n)) > (k-1)(m-k)+1 and TC(G_k(R^n)) > (2k-1)(m-k)+1,
    evaluated both with the closed-form lower bounds and, when ``use_engine``,
    with the bounds computed by the engine.
    """
    if not (1 <= k and 2 * k <= m <= n):
        raise UsageError(f"monotonicity needs 2k <= m <= n, got k={k}, m={m}, n={n}")
    cat_thr = (k - 1) * (m - k) + 1
    tc_thr = (2 * k - 1) * (m - k) + 1
    checks = []

    cat_cf = _closed_form_cat_lower(k, n)
    cf = closed_form_zcl(k, n)
    tc_cf = None if cf.zcl is None else max(cf.zcl + 1, cat_cf or 0)
    if tc_cf is None and cat_cf is not None:
        tc_cf = cat_cf
    checks.append(MonotonicityCheck("cat", cat_cf, cat_thr, "closed-form",
                                    cat_cf is not None and cat_cf > cat_thr))
    checks.append(MonotonicityCheck("TC", tc_cf, tc_thr, "closed-form",
                                    tc_cf is not None and tc_cf > tc_thr))
    if use_engine:
        rep = bounds_report(k, n, ring)
        checks.append(MonotonicityCheck("cat", rep.cat_lower, cat_thr, "engine", rep.cat_lower > cat_thr))
        checks.append(MonotonicityCheck("TC", rep.tc_lower, tc_thr, "engine", rep.tc_lower > tc_thr))
    return MonotonicityReport(k, m, n, checks)
