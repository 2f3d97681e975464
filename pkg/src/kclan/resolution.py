"""Resolutions Z = G_{v0} x^B P_I/B of K-orbit closures.

A spec is a smooth clan v0 and a set I of commuting simple reflections that
straddle block boundaries of v0 and avoid tau(v0).  Torus fixed points of Z are
triples [x0, x1, x2] with x0 in W(v0) and minimal modulo W_{tau(v0)}, x1 in
W_{tau(v0)} and x2 in W_I.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple

from .clan import (
    Clan, ClanError, RootType, closure_leq, closure_set, enumerate_clans,
    format_clan, is_smooth, monoid_act_word, orbit_dimension, parse_clan,
    root_type, tau, w_u,
)
from .weyl import (
    Permutation, act_on_weight, compose, is_positive,
    levi_positive_roots, min_coset_rep, parabolic_data, parse_permutation,
    root, roots_of_K,
)


class SpecError(ValueError):
    pass


class InternalCheckError(AssertionError):
    """Two independent computations disagreed; indicates a bug."""


@dataclass(frozen=True)
class ResolutionSpec:
    v0: Clan
    I: frozenset
    blocks: object
    v: Clan

    @property
    def n(self):
        return self.v0.n

    @property
    def p(self):
        return self.v0.p

    @property
    def q(self):
        return self.v0.q

    @property
    def dim(self):
        return orbit_dimension(self.v0) + len(self.I)

    def to_json(self):
        return {
            "v0": format_clan(self.v0, self.blocks),
            "blocks": self.blocks.to_json(),
            "I": sorted(self.I),
            "v": format_clan(self.v),
            "small": is_small(self).small,
        }


def spec_from_json(data):
    spec = build_spec(parse_clan(data["v0"]), frozenset(data["I"]))
    if format_clan(spec.v) != data["v"]:
        raise SpecError(f"target mismatch: {data['v']} vs {format_clan(spec.v)}")
    return spec


def build_spec(v0, I):
    I = frozenset(int(i) for i in I)
    blocks = is_smooth(v0)
    if blocks is None:
        raise SpecError(f"{format_clan(v0)} is not smooth")
    bad = [i for i in I if not 1 <= i < v0.n]
    if bad:
        raise SpecError(f"simple indices {sorted(bad)} out of range for n={v0.n}")
    for i, j in itertools.combinations(sorted(I), 2):
        if j - i < 2:
            raise SpecError(f"s{i} and s{j} do not commute")
    hit = I & tau(v0)
    if hit:
        raise SpecError(f"I meets tau(v0) in {sorted(hit)}")
    for i in sorted(I):
        if not blocks.straddles(i):
            raise SpecError(f"s{i} does not straddle two blocks of {format_clan(v0, blocks)}")
    v = monoid_act_word(v0, I)
    return ResolutionSpec(v0, I, blocks, v)


# --- smallness --------------------------------------------------------------

@dataclass(frozen=True)
class SmallnessReport:
    small: bool
    violations: tuple  # ((i, pattern), ...)
    codim_ok: bool

    def to_json(self):
        return {"small": self.small,
                "violations": [{"i": i, "pattern": pat} for i, pat in self.violations],
                "codim_ok": self.codim_ok}


def _is_sign(v, pos):
    return 1 <= pos <= v.n and v.is_sign(pos)


def _is_num(v, pos):
    return 1 <= pos <= v.n and not v.is_sign(pos)


def small_violations(v0, I):
    """Boundary patterns  e|aa, aa|e, e|ae, ea|e  at each bar i|i+1, i in I.

    ``e`` is a sign and ``a`` a pair id; a repeated letter means the same
    symbol, so ``e|ae`` needs equal signs on both sides of the number.
    """
    out = []
    for i in sorted(I):
        if _is_sign(v0, i) and _is_num(v0, i + 1) and _is_num(v0, i + 2) and v0[i + 1] == v0[i + 2]:
            out.append((i, "e|aa"))
        if _is_num(v0, i - 1) and _is_num(v0, i) and v0[i - 1] == v0[i] and _is_sign(v0, i + 1):
            out.append((i, "aa|e"))
        if _is_sign(v0, i) and _is_num(v0, i + 1) and _is_sign(v0, i + 2) and v0[i] == v0[i + 2]:
            out.append((i, "e|ae"))
        if _is_sign(v0, i - 1) and _is_num(v0, i) and _is_sign(v0, i + 1) and v0[i - 1] == v0[i + 1]:
            out.append((i, "ea|e"))
    return tuple(out)


def codimension_test(v0, I):
    """l(y * w_I) = l(y) + |I| for every y <= v0 of codimension one."""
    d0 = orbit_dimension(v0)
    for y in closure_set(v0):
        if orbit_dimension(y) == d0 - 1:
            if orbit_dimension(monoid_act_word(y, I)) != d0 - 1 + len(I):
                return False
    return True


def is_small(spec):
    violations = small_violations(spec.v0, spec.I)
    codim_ok = codimension_test(spec.v0, spec.I)
    if (not violations) != codim_ok:
        raise InternalCheckError(
            f"smallness tests disagree for {format_clan(spec.v0)}, I={sorted(spec.I)}")
    return SmallnessReport(not violations, violations, codim_ok)


# --- fixed points -----------------------------------------------------------

def _block_profile(w, blocks, p):
    return tuple(sum(1 for pos in range(a, b + 1) if w(pos) <= p) for a, b in blocks.blocks)


def in_W_of_v0(w, v0, blocks=None):
    blocks = blocks or is_smooth(v0)
    return _block_profile(w, blocks, v0.p) == tuple(pk for pk, _ in blocks.signatures)


def W_of_v0(v0):
    """Permutations whose k-th block holds p_k values <= p."""
    blocks = is_smooth(v0)
    if blocks is None:
        raise SpecError(f"{format_clan(v0)} is not smooth")
    n, p = v0.n, v0.p
    sizes_lo = [pk for pk, _ in blocks.signatures]
    sizes_hi = [qk for _, qk in blocks.signatures]

    def splits(values, sizes):
        if not sizes:
            yield []
            return
        for first in itertools.combinations(values, sizes[0]):
            rest = [x for x in values if x not in first]
            for tail in splits(rest, sizes[1:]):
                yield [first] + tail

    out = []
    for lo in splits(list(range(1, p + 1)), sizes_lo):
        for hi in splits(list(range(p + 1, n + 1)), sizes_hi):
            per_block = [list(a) + list(b) for a, b in zip(lo, hi)]
            for arr in itertools.product(*(itertools.permutations(vals) for vals in per_block)):
                out.append(Permutation(itertools.chain.from_iterable(arr)))
    return frozenset(out)


def W_of_v0_min(v0):
    """W(v0) intersected with the minimal representatives modulo W_{tau(v0)}."""
    t = tau(v0)
    return frozenset(w for w in W_of_v0(v0) if all(w(i) < w(i + 1) for i in t))


class ZFixedPoint(NamedTuple):
    x0: Permutation
    x1: Permutation
    x2: Permutation

    def image(self):
        return mu_image(self)

    def to_json(self, spec=None):
        out = {"x0": str(self.x0), "x1": str(self.x1), "x2": str(self.x2),
               "image": str(mu_image(self))}
        if spec is not None:
            out["weights"] = [list(wt) for wt in tangent_weights(spec, self)]
        return out

    @classmethod
    def from_json(cls, data):
        return cls(parse_permutation(data["x0"]), parse_permutation(data["x1"]),
                   parse_permutation(data["x2"]))


def mu_image(x):
    return compose(compose(x.x0, x.x1), x.x2)


def z_fixed_points(spec):
    t = tau(spec.v0)
    W_t, _, _ = parabolic_data(t, spec.n)
    W_I, _, _ = parabolic_data(spec.I, spec.n)
    return [ZFixedPoint(a, b, c)
            for a in sorted(W_of_v0_min(spec.v0)) for b in W_t for c in W_I]


def check_fixed_point(spec, x):
    t = tau(spec.v0)
    if not in_W_of_v0(x.x0, spec.v0, spec.blocks) or any(x.x0(i) > x.x0(i + 1) for i in t):
        raise SpecError(f"x0={x.x0} is not a minimal element of W(v0)")
    for perm, J, name in ((x.x1, t, "x1"), (x.x2, spec.I, "x2")):
        if perm not in parabolic_data(J, spec.n)[0]:
            raise SpecError(f"{name}={perm} not in W_{sorted(J)}")


def _in_parabolic(alpha, J):
    """alpha in Phi(p_J) = Phi^+ union Phi^-_J."""
    if is_positive(alpha):
        return True
    a = alpha.index(1) + 1
    b = alpha.index(-1) + 1
    lo, hi = min(a, b), max(a, b)
    return all(k in J for k in range(lo, hi))


def tangent_weights(spec, x, check=True):
    """Weights of T_x Z as a list (multiset) of epsilon-basis tuples."""
    if check:
        check_fixed_point(spec, x)
    n = spec.n
    t = tau(spec.v0)
    x0inv = x.x0.inverse()
    out = []
    for alpha in sorted(roots_of_K(n, spec.p)):
        if not _in_parabolic(act_on_weight(x0inv, alpha), t):
            out.append(alpha)
    x01 = compose(x.x0, x.x1)
    for a, b in _levi_pairs(t, n):
        out.append(act_on_weight(x01, root(b, a, n)))
    x012 = compose(x01, x.x2)
    for i in sorted(spec.I):
        out.append(act_on_weight(x012, root(i + 1, i, n)))
    return out


def _levi_pairs(J, n):
    out = []
    for lam in levi_positive_roots(J, n):
        out.append((lam.index(1) + 1, lam.index(-1) + 1))
    return out


# --- fibers -----------------------------------------------------------------

def fiber_index_set(spec, y):
    p = spec.p
    return frozenset(i for i in spec.I if (y(i) <= p) == (y(i + 1) <= p))


def target_fixed_points(spec):
    """X_v^T = {w x : w in W(v0), x in W_I}."""
    W_I, _, _ = parabolic_data(spec.I, spec.n)
    return frozenset(compose(w, x) for w in W_of_v0(spec.v0) for x in W_I)


def fiber_fixed_points(spec, y):
    """(fixed points of Z over yB, I_y).  Raises if y is not in X_v^T."""
    W_I, _, _ = parabolic_data(spec.I, spec.n)
    t = tau(spec.v0)
    pts = []
    for x2 in W_I:
        w = compose(y, x2.inverse())
        if in_W_of_v0(w, spec.v0, spec.blocks):
            x0, x1 = min_coset_rep(w, t)
            pts.append(ZFixedPoint(x0, x1, x2))
    if not pts:
        raise SpecError(f"{y} is not a fixed point of X_v")
    return sorted(pts), fiber_index_set(spec, y)


def group_by_image(points):
    out = {}
    for x in points:
        out.setdefault(mu_image(x), []).append(x)
    return out


def fiber_type_over_orbit(spec, y):
    """k with fiber (P^1)^k over the orbit of y, y <= v0."""
    if (y.p, y.q) != (spec.p, spec.q) or not closure_leq(y, spec.v0):
        raise SpecError(f"{format_clan(y)} is not below {format_clan(spec.v0)}")
    return len(spec.I & tau(y))


def fiber_table(spec, orbits=None):
    """Rows (y, k, 2^k) for the given orbits, default all y <= v0."""
    if orbits is None:
        orbits = sorted(closure_set(spec.v0), key=lambda c: (-orbit_dimension(c), c.sort_key()))
    rows = []
    for y in orbits:
        k = fiber_type_over_orbit(spec, y)
        rows.append((y, k, 2 ** k))
    return rows


# --- alternative presentations ---------------------------------------------

@dataclass(frozen=True)
class AltPresentation:
    v0: Clan
    I: frozenset
    M: frozenset
    spec: ResolutionSpec


def alternative_presentation(spec, N):
    N = frozenset(N)
    if not N <= spec.I:
        raise SpecError(f"N={sorted(N)} is not a subset of I")
    for s in N:
        if root_type(spec.v0, s) is not RootType.NONCOMPACT_IMAGINARY:
            raise SpecError(f"s{s} is not noncompact imaginary for {format_clan(spec.v0)}")
    tv, t0 = tau(spec.v), tau(spec.v0)
    if (tv & t0) | spec.I != tv or (tv & t0) & spec.I:
        raise InternalCheckError(f"tau(v) is not (tau(v) & tau(v0)) + I for {format_clan(spec.v0)}")
    v0p = monoid_act_word(spec.v0, N)
    Ip = spec.I - N
    new = build_spec(v0p, Ip)
    if new.v != spec.v:
        raise InternalCheckError("alternative presentation changed the target")
    return AltPresentation(v0p, Ip, tau(v0p) & tv, new)


def noncompact_subsets(spec):
    nc = sorted(s for s in spec.I if root_type(spec.v0, s) is RootType.NONCOMPACT_IMAGINARY)
    for r in range(len(nc) + 1):
        for c in itertools.combinations(nc, r):
            yield frozenset(c)


# --- birational locus -------------------------------------------------------

def closed_orbits_in_birational_locus(spec):
    """Closed u <= v whose fibers are points (I_w empty for w = w_u)."""
    out = []
    for u in enumerate_clans(spec.p, spec.q):
        if u.is_closed() and closure_leq(u, spec.v) and not fiber_index_set(spec, w_u(u)):
            out.append(u)
    return sorted(out)


def all_specs(n):
    """Every valid (v0, I) with v0 smooth, over all signatures of size n."""
    out = []
    for p in range(n + 1):
        q = n - p
        for v0 in enumerate_clans(p, q) if p + q >= 1 else ():
            blocks = is_smooth(v0)
            if blocks is None:
                continue
            t = tau(v0)
            cand = [i for i in blocks.cuts if i not in t]
            for r in range(len(cand) + 1):
                for I in itertools.combinations(cand, r):
                    if all(b - a >= 2 for a, b in zip(I, I[1:])):
                        out.append(build_spec(v0, I))
    return out


__all__ = [
    "ResolutionSpec", "SpecError", "InternalCheckError", "SmallnessReport", "ZFixedPoint",
    "AltPresentation", "build_spec", "is_small", "small_violations", "codimension_test",
    "W_of_v0", "W_of_v0_min", "z_fixed_points", "tangent_weights", "mu_image",
    "fiber_index_set", "fiber_fixed_points", "target_fixed_points", "fiber_type_over_orbit",
    "fiber_table", "alternative_presentation", "closed_orbits_in_birational_locus",
    "all_specs", "spec_from_json", "noncompact_subsets", "check_fixed_point", "group_by_image",
    "in_W_of_v0", "ClanError",
]
