"""Brute-force reference implementations used only by the tests."""

import itertools
from math import comb

from kclan.weyl import (
    Permutation, act_on_weight, compose, from_word, length, reduced_word, root,
    roots_of_K,
)


def double_factorial(k):
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def clan_count(p, q):
    n = p + q
    return sum(comb(n, 2 * k) * double_factorial(2 * k - 1) * comb(n - 2 * k, p - k)
               for k in range(min(p, q) + 1))


def subword_products(w):
    word = reduced_word(w)
    out = set()
    for mask in itertools.product((0, 1), repeat=len(word)):
        out.add(from_word([a for a, m in zip(word, mask) if m], w.n))
    return out


def bruhat_leq_subword(u, w):
    return u in subword_products(w)


def other_reduced_word(w):
    """A reduced word built by stripping the largest descent first."""
    word = []
    cur = list(w.entries)
    while True:
        for i in range(len(cur) - 2, -1, -1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i + 1)
                break
        else:
            break
    return tuple(reversed(word))


def _pair(lam, gamma):
    return sum(a * b for a, b in zip(lam, gamma))


def _dominant(J, n):
    """c_i - c_{i+1} = 0 for i in J, 1 otherwise."""
    c = [0] * n
    for i in range(n - 2, -1, -1):
        c[i] = c[i + 1] + (0 if (i + 1) in J else 1)
    return tuple(c)


def _act_cochar(w, gamma):
    return act_on_weight(w, gamma)


def tangent_weights_cocharacter(spec, x):
    """Tangent weights via sign conditions on pairings with cocharacters."""
    from kclan.clan import tau
    n = spec.n
    t = tau(spec.v0)
    all_roots = [root(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    g_t = _dominant(t, n)
    g_I = _dominant(spec.I, n)
    g_reg = _dominant(frozenset(), n)
    # chi_J pairs to zero exactly with the roots of the J-Levi: same as gamma_J
    x0, x01 = x.x0, compose(x.x0, x.x1)
    x012 = compose(x01, x.x2)
    out = []
    for a in sorted(roots_of_K(n, spec.p)):
        if _pair(a, _act_cochar(x0, g_t)) < 0:
            out.append(a)
    for a in all_roots:
        if _pair(a, _act_cochar(x0, g_t)) == 0 and _pair(a, _act_cochar(x01, g_reg)) < 0:
            out.append(a)
    for a in all_roots:
        if _pair(a, _act_cochar(x01, g_I)) == 0 and _pair(a, _act_cochar(x012, g_reg)) < 0:
            out.append(a)
    return out


def all_perms(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def is_reduced(word, w):
    return len(word) == length(w) and from_word(word, w.n) == w
