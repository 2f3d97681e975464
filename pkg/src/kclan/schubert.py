"""Equivariant Schubert calculus on G/B for G = GL(n).

Conventions: [Y_w]_T is the class of the B-orbit closure of wB (dimension
l(w)).  Its restriction to uB is w0 applied to the Billey polynomial
xi^{w0 w}(w0 u).  The tangent space T_u(G/B) has weights u(-gamma), gamma > 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .exactalg import LinearForm, Poly, sub_products, weight_to_alpha
from .weyl import (
    Permutation, act_on_weight, all_permutations, bruhat_leq, compose, length,
    positive_roots, reduced_word, simple_root,
)


def root_poly(lam):
    """An epsilon-basis weight as a linear polynomial in a_1..a_{n-1}."""
    return weight_to_alpha(lam).to_poly()


def _betas(word, n):
    """beta_j = s_{a_1} ... s_{a_{j-1}} (alpha_{a_j}) for a word."""
    out = []
    prefix = Permutation.identity(n)
    for a in word:
        out.append(act_on_weight(prefix, simple_root(a, n)))
        prefix = prefix.right_simple(a)
    return out


def billey_row(u, word=None):
    """{v: xi^v(u)} for every v <= u, by dynamic programming over the word.

    States are reduced subword products; taking letter j multiplies by beta_j
    and is allowed only when it lengthens the product.
    """
    n = u.n
    if word is None:
        word = reduced_word(u)
    m = n - 1
    states = {Permutation.identity(n): Poly.const(1, m)}
    for a, beta in zip(word, _betas(word, n)):
        bp = root_poly(beta)
        new = dict(states)
        for v, poly in states.items():
            if v(a) < v(a + 1):
                nv = v.right_simple(a)
                term = poly * bp
                prev = new.get(nv)
                new[nv] = term if prev is None else prev + term
        states = new
    return {v: p for v, p in states.items() if not p.is_zero()}


def billey_xi(v, u, word=None):
    if v.n != u.n:
        raise ValueError("size mismatch")
    return billey_row(u, word).get(v, Poly.zero(u.n - 1))


def billey_xi_bruteforce(v, u, word=None):
    """Direct sum over index subsets; exponential, used as an oracle."""
    n = u.n
    if word is None:
        word = reduced_word(u)
    betas = [root_poly(b) for b in _betas(word, n)]
    total = Poly.zero(n - 1)
    lv = length(v)
    for idx in itertools.combinations(range(len(word)), lv):
        w = Permutation.identity(n)
        for j in idx:
            w = w.right_simple(word[j])
        if w == v:
            term = Poly.const(1, n - 1)
            for j in idx:
                term = term * betas[j]
            total = total + term
    return total


@lru_cache(maxsize=None)
def _w0_images(n):
    # w0 sends alpha_i to -alpha_{n-i}
    return [Poly.var(n - i, n - 1).scale(-1) for i in range(1, n)]


def apply_w0(poly, n):
    if n == 1:
        return poly
    return poly.substitute(_w0_images(n))


def act_on_poly(w, poly):
    """The Weyl group action on H_T^* = Q[a_1..a_{n-1}]."""
    n = w.n
    images = [root_poly(act_on_weight(w, simple_root(i, n))) for i in range(1, n)]
    return poly.substitute(images)


@lru_cache(maxsize=None)
def restriction_row(u):
    """{w: [Y_w]_T restricted to uB}, nonzero entries only (all w >= u)."""
    n = u.n
    w0 = Permutation.longest(n)
    row = billey_row(compose(w0, u))
    return {compose(w0, v): apply_w0(p, n) for v, p in row.items()}


def schubert_restriction(w, u):
    if w.n != u.n:
        raise ValueError("size mismatch")
    return restriction_row(u).get(w, Poly.zero(u.n - 1))


def diagonal_restriction(w):
    """Product of -delta over delta > 0 with w^{-1} delta > 0."""
    n = w.n
    winv = w.inverse()
    out = Poly.const(1, n - 1)
    for d in positive_roots(n):
        img = act_on_weight(winv, d)
        if img.index(1) < img.index(-1):
            out = out * root_poly(tuple(-c for c in d))
    return out


def diagonal_factors(w):
    n = w.n
    winv = w.inverse()
    out = []
    for d in positive_roots(n):
        img = act_on_weight(winv, d)
        if img.index(1) < img.index(-1):
            out.append(weight_to_alpha(tuple(-c for c in d)))
    return out


def tangent_weights_flag(u):
    return [act_on_weight(u, tuple(-c for c in g)) for g in positive_roots(u.n)]


@lru_cache(maxsize=None)
def euler_class(u):
    out = Poly.const(1, u.n - 1)
    for lam in tangent_weights_flag(u):
        out = out * root_poly(lam)
    return out


@lru_cache(maxsize=None)
def bruhat_order_desc(n):
    """All of S_n sorted by decreasing length (a linear extension, reversed)."""
    return tuple(sorted(all_permutations(n), key=lambda w: (-length(w), w.entries)))


def divide_by_factors(poly, factors):
    for f in factors:
        q = poly.divide_linear(f)
        if q is None:
            raise ArithmeticError(f"{f} does not divide the polynomial exactly")
        poly = q
    return poly


def solve_from_restrictions(restr, n):
    """Coefficients c_w with sum_w c_w [Y_w](u) = restr[u] for all u.

    ``restr`` maps u to a polynomial; missing keys mean zero.  The solve runs
    top-down in Bruhat order and divides by the diagonal restrictions.
    """
    m = n - 1
    coeffs = {}
    for u in bruhat_order_desc(n):
        pairs = [(coeffs[w], s) for w, s in restriction_row(u).items()
                 if w != u and w in coeffs]
        acc = sub_products(restr.get(u, Poly.zero(m)), pairs)
        if acc.is_zero():
            continue
        c = divide_by_factors(acc, diagonal_factors(u))
        coeffs[u] = c
    return coeffs


@lru_cache(maxsize=None)
def point_class_expansion(y):
    """m_{y,w}: the class of the point yB in the Schubert basis."""
    return SchubertExpansion(solve_from_restrictions({y: euler_class(y)}, y.n), y.n)


def _perm_key(w):
    return (length(w), w.entries)


class SchubertExpansion:
    """A class sum_w c_w [Y_w]_T with polynomial coefficients."""

    def __init__(self, coeffs, n):
        self.n = n
        self.coeffs = {w: p for w, p in coeffs.items() if not p.is_zero()}

    def __getitem__(self, w):
        return self.coeffs.get(w, Poly.zero(self.n - 1))

    def __contains__(self, w):
        return w in self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: _perm_key(t[0]))

    def __eq__(self, other):
        return isinstance(other, SchubertExpansion) and self.n == other.n and self.coeffs == other.coeffs

    __hash__ = None

    def restrict(self, u):
        """Restriction of the class to the fixed point uB."""
        acc = Poly.zero(self.n - 1)
        for w, s in restriction_row(u).items():
            c = self.coeffs.get(w)
            if c is not None:
                acc = acc + c * s
        return acc

    def nonequivariant(self):
        """Coefficients with every a_i set to 0."""
        return {w: p.constant_term() for w, p in self.items() if p.constant_term()}

    def to_json(self):
        return [{"w": str(w), "coeff": p.to_json()} for w, p in self.items()]

    @classmethod
    def from_json(cls, data, n):
        from .weyl import parse_permutation
        return cls({parse_permutation(t["w"]): Poly.from_json(t["coeff"], n - 1) for t in data}, n)

    def __repr__(self):
        return "SchubertExpansion({" + ", ".join(f"{w}: {p}" for w, p in self.items()) + "})"


@dataclass(frozen=True)
class PositivityResult:
    ok: bool
    witness: object = None  # (exponents, coefficient) of an offending term

    def __bool__(self):
        return self.ok


def positivity_check(poly):
    """Every coefficient a nonnegative integer."""
    for exps, c in sorted(poly.items(), key=lambda t: t[0]):
        if c < 0 or getattr(c, "denominator", 1) != 1:
            return PositivityResult(False, (exps, c))
    return PositivityResult(True)


def bruhat_interval_check(n):
    """Pairs (w, u) violating triangularity; used in tests."""
    bad = []
    for u in all_permutations(n):
        for w in restriction_row(u):
            if not bruhat_leq(u, w):
                bad.append((w, u))
    return bad


__all__ = [
    "billey_row", "billey_xi", "billey_xi_bruteforce", "schubert_restriction",
    "restriction_row", "diagonal_restriction", "euler_class", "point_class_expansion",
    "solve_from_restrictions", "SchubertExpansion", "positivity_check", "PositivityResult",
    "act_on_poly", "apply_w0", "root_poly", "LinearForm",
]
