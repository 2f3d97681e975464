"""Equivariant Chern-Mather classes of K-orbit closures by localization.

The pushforward of c^T(TZ) from a resolution Z -> X_v is computed fixed point
by fixed point: every fixed point q of Z contributes
prod(1 + beta) / prod(beta) over its tangent weights beta, and the sums over
fibers give the localized coefficients b_y.  Those are then rewritten in the
Schubert basis.  Two rewriting routes exist and can be cross-checked:

* ``basis``: c_w = sum_y b_y m_{yw}, with m the point-class expansions.
* ``restriction``: restrictions r_u = b_u e_u are solved against the
  Schubert restriction matrix directly.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .clan import format_clan, parse_clan
from .exactalg import Poly, RationalFunction, rf_is_polynomial, rf_sum, weight_to_alpha
from .resolution import (
    build_spec, fiber_fixed_points, is_small, target_fixed_points, tangent_weights,
)
from .schubert import (
    SchubertExpansion, euler_class, point_class_expansion, positivity_check,
    restriction_row, solve_from_restrictions, tangent_weights_flag,
)
from .weyl import length, parse_permutation

METHODS = ("restriction", "basis")


class NonPolynomialError(ArithmeticError):
    pass


def _weights_rf(weights, n, shifted):
    m = n - 1
    num = Poly.const(1, m)
    den = {}
    for lam in weights:
        f = weight_to_alpha(lam)
        if f.is_zero():
            raise ZeroDivisionError("zero tangent weight")
        if shifted:
            num = num * f.shifted(1).to_poly()
        den[f] = den.get(f, 0) + 1
    return RationalFunction(num, den)


def chern_factor(spec, x):
    """C(x) = prod(1 + beta) / prod(beta) over the tangent weights at x."""
    return _weights_rf(tangent_weights(spec, x, check=False), spec.n, True)


def multiplicity_factor(spec, x):
    """Equivariant multiplicity of a smooth fixed point, 1 / prod(beta)."""
    return _weights_rf(tangent_weights(spec, x, check=False), spec.n, False)


class LocalizedClass:
    """Map y -> b_y for y in X_v^T."""

    def __init__(self, contributions, n):
        self.n = n
        self.contributions = dict(contributions)

    def __getitem__(self, y):
        return self.contributions[y]

    def items(self):
        return sorted(self.contributions.items(), key=lambda t: (length(t[0]), t[0].entries))

    def keys(self):
        return self.contributions.keys()

    def __len__(self):
        return len(self.contributions)

    def __eq__(self, other):
        if not isinstance(other, LocalizedClass) or self.n != other.n:
            return False
        if set(self.contributions) != set(other.contributions):
            return False
        return all(self.contributions[y] == other.contributions[y] for y in self.contributions)

    __hash__ = None

    def to_json(self):
        return [{"y": str(y), "b": r.to_json()} for y, r in self.items()]

    @classmethod
    def from_json(cls, data, n):
        return cls({parse_permutation(t["y"]): RationalFunction.from_json(t["b"], n - 1)
                    for t in data}, n)


def _fiber_sum(spec, y, shifted):
    pts, _ = fiber_fixed_points(spec, y)
    f = chern_factor if shifted else multiplicity_factor
    return rf_sum([f(spec, x) for x in pts])


def _worker(args):
    v0_text, I, ys, shifted = args
    spec = build_spec(parse_clan(v0_text), I)
    return [(str(y), _fiber_sum(spec, parse_permutation(y), shifted).to_json()) for y in ys]


def _localize(spec, shifted, threads):
    ys = sorted(target_fixed_points(spec))
    if threads <= 1 or len(ys) < 2:
        return LocalizedClass({y: _fiber_sum(spec, y, shifted) for y in ys}, spec.n)
    chunks = [ys[k::threads] for k in range(threads)]
    jobs = [(format_clan(spec.v0), tuple(sorted(spec.I)), [str(y) for y in c], shifted)
            for c in chunks if c]
    out = {}
    with ProcessPoolExecutor(max_workers=threads) as ex:
        for part in ex.map(_worker, jobs):
            for y, data in part:
                out[parse_permutation(y)] = RationalFunction.from_json(data, spec.n - 1)
    return LocalizedClass(out, spec.n)


def pushforward_chern(spec, threads=1):
    return _localize(spec, True, threads)


def pushforward_fundamental(spec, threads=1):
    return _localize(spec, False, threads)


def evaluate_pushforward(spec, point, shifted=True):
    """{y: b_y at a rational point}, summed numerically over fibers."""
    out = {}
    for y in sorted(target_fixed_points(spec)):
        pts, _ = fiber_fixed_points(spec, y)
        total = Fraction(0)
        for x in pts:
            term = Fraction(1)
            for lam in tangent_weights(spec, x, check=False):
                b = Fraction(weight_to_alpha(lam).evaluate(point))
                if b == 0:
                    raise ZeroDivisionError("tangent weight vanishes at the point")
                term *= (1 + b) / b if shifted else 1 / b
            total += term
        out[y] = total
    return out


def restriction_value(b, u):
    """b * e_u as a polynomial, or None.

    e_u is a product of roots, so denominator factors of b cancel against it
    directly; only leftovers need trial division.
    """
    sign = 1
    avail = {}
    for lam in tangent_weights_flag(u):
        sg, f = weight_to_alpha(lam).normalized()
        sign *= sg
        avail[f] = avail.get(f, 0) + 1
    left = {}
    for f, m in b.den.items():
        k = min(m, avail.get(f, 0))
        if k:
            avail[f] -= k
        if m > k:
            left[f] = m - k
    num = b.num if sign > 0 else -b.num
    for f, k in avail.items():
        for _ in range(k):
            num = num * f.to_poly()
    return rf_is_polynomial(RationalFunction(num, left)) if left else num


def expand_localized(loc, method="restriction"):
    """Rewrite sum_y b_y [yB] in the Schubert basis; coefficients must be polynomial."""
    n = loc.n
    if method == "basis":
        terms = {}
        for y, b in loc.items():
            for w, m in point_class_expansion(y).items():
                terms.setdefault(w, []).append(b * m)
        coeffs = {}
        for w, ts in terms.items():
            c = rf_sum(ts).is_polynomial()
            if c is None:
                raise NonPolynomialError(f"coefficient at {w} is not a polynomial")
            coeffs[w] = c
        return SchubertExpansion(coeffs, n)
    if method == "restriction":
        restr = {}
        for u, b in loc.items():
            r = restriction_value(b, u)
            if r is None:
                raise NonPolynomialError(f"restriction at {u} is not a polynomial")
            restr[u] = r
        try:
            coeffs = solve_from_restrictions(restr, n)
        except ArithmeticError as exc:
            raise NonPolynomialError(str(exc)) from exc
        return SchubertExpansion(coeffs, n)
    raise ValueError(f"unknown method {method!r}")


def random_points(n, count, seed):
    rng = random.Random(seed)
    return [[Fraction(rng.randint(-97, 97), rng.randint(1, 13)) for _ in range(n - 1)]
            for _ in range(count)]


def identity_check(loc, expansion, seed=0, count=3):
    """Check restriction identities at random rational points.

    For every fixed point u, sum_w c_w [Y_w](u) must equal b_u e_u.
    Points where a denominator vanishes are redrawn.
    """
    n = loc.n
    rng_seed = seed
    pts = []
    while len(pts) < count:
        for pt in random_points(n, count, rng_seed):
            try:
                for b in loc.contributions.values():
                    b.evaluate(pt)
            except ZeroDivisionError:
                continue
            pts.append(pt)
        rng_seed += 1
    from .weyl import all_permutations
    for pt in pts[:count]:
        for u in all_permutations(n):
            lhs = sum((Fraction(c.evaluate(pt)) * Fraction(s.evaluate(pt))
                       for w, s in restriction_row(u).items()
                       for c in [expansion[w]] if not c.is_zero()), Fraction(0))
            b = loc.contributions.get(u)
            rhs = Fraction(0) if b is None else Fraction(b.evaluate(pt)) * Fraction(euler_class(u).evaluate(pt))
            if lhs != rhs:
                return False
    return True


@dataclass
class ConjectureReport:
    verdict: bool
    witnesses: list = field(default_factory=list)  # (w, exponents, coefficient)

    def to_json(self):
        return {"verdict": "PASS" if self.verdict else "FAIL",
                "witnesses": [{"w": str(w), "exps": list(e), "coeff": str(c)}
                              for w, e, c in self.witnesses]}


def check_expansion(expansion):
    witnesses = []
    for w, p in expansion.items():
        r = positivity_check(p)
        if not r.ok:
            witnesses.append((w, r.witness[0], r.witness[1]))
    return ConjectureReport(not witnesses, witnesses)


@dataclass
class ChernMatherResult:
    spec: object
    small: bool
    localized: LocalizedClass
    expansion: SchubertExpansion
    positivity: ConjectureReport

    @property
    def label(self):
        return "Chern-Mather class" if self.small else "pushforward class, not certified Chern-Mather"

    def to_json(self):
        return {
            "spec": self.spec.to_json(),
            "small": self.small,
            "label": self.label,
            "b": self.localized.to_json(),
            "expansion": self.expansion.to_json(),
            "positivity": self.positivity.to_json(),
        }


def chern_mather(spec, method="restriction", threads=1):
    small = is_small(spec).small
    loc = pushforward_chern(spec, threads=threads)
    exp = expand_localized(loc, method)
    return ChernMatherResult(spec, small, loc, exp, check_expansion(exp))


def fundamental_class(spec, method="restriction"):
    return expand_localized(pushforward_fundamental(spec), method)


def verify_conjecture(spec, method="restriction", threads=1):
    return chern_mather(spec, method, threads).positivity
