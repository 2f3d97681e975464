"""Type A Weyl group combinatorics.

Permutations are stored in one-line notation with values 1..n.  Weights are
plain integer tuples in the epsilon basis, so ``(1, -1, 0)`` is the simple
root alpha_1 of GL(3).  Sets of simple reflections are frozensets of indices
in 1..n-1.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class Permutation:
    """An element of S_n in one-line notation, ``w = (w(1), ..., w(n))``."""

    __slots__ = ("entries", "_hash")

    def __init__(self, entries):
        entries = tuple(int(e) for e in entries)
        if sorted(entries) != list(range(1, len(entries) + 1)):
            raise ValueError(f"not a permutation of 1..{len(entries)}: {entries}")
        self.entries = entries
        self._hash = hash(entries)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def simple(cls, i, n):
        if not 1 <= i < n:
            raise ValueError(f"simple index {i} out of range for n={n}")
        e = list(range(1, n + 1))
        e[i - 1], e[i] = e[i], e[i - 1]
        return cls(e)

    @classmethod
    def longest(cls, n):
        return cls(range(n, 0, -1))

    @property
    def n(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __call__(self, i):
        return self.entries[i - 1]

    def __getitem__(self, k):
        return self.entries[k]

    def __iter__(self):
        return iter(self.entries)

    def __mul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.entries == other.entries

    def __lt__(self, other):
        return self.entries < other.entries

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Permutation({self.entries})"

    def __str__(self):
        return ",".join(str(e) for e in self.entries)

    def inverse(self):
        inv = [0] * self.n
        for i, e in enumerate(self.entries, 1):
            inv[e - 1] = i
        return Permutation(inv)

    def right_simple(self, i):
        """``w * s_i``: swap positions i and i+1."""
        e = list(self.entries)
        e[i - 1], e[i] = e[i], e[i - 1]
        return Permutation(e)

    def is_identity(self):
        return all(e == i for i, e in enumerate(self.entries, 1))


def parse_permutation(text):
    """Parse ``"2,4,1,3"``; block bars and parentheses are ignored.

    A string of single digits without commas (``"2413"``) is also accepted.
    """
    s = text.strip().strip("()[]").replace("|", ",")
    if "," in s or " " in s:
        parts = [t for t in s.replace(" ", ",").split(",") if t]
    else:
        parts = list(s)
    return Permutation(int(t) for t in parts)


def compose(u, v):
    """``(u o v)(i) = u(v(i))``."""
    if u.n != v.n:
        raise ValueError(f"size mismatch: {u.n} vs {v.n}")
    ue = u.entries
    return Permutation(ue[j - 1] for j in v.entries)


def length(w):
    """Number of inversions."""
    e = w.entries
    n = len(e)
    return sum(1 for i in range(n) for j in range(i + 1, n) if e[i] > e[j])


def descent_set(w):
    e = w.entries
    return frozenset(i for i in range(1, len(e)) if e[i - 1] > e[i])


def _rank_matrix(w):
    # r[i][j] = #{a <= i : w(a) >= j}, for 1 <= i, j <= n
    n = w.n
    r = [[0] * (n + 2) for _ in range(n + 1)]
    for i in range(1, n + 1):
        wi = w(i)
        row, prev = r[i], r[i - 1]
        for j in range(1, n + 1):
            row[j] = prev[j] + (1 if wi >= j else 0)
    return r


def bruhat_leq(u, w):
    """Bruhat order via the rank-matrix (dot counting) criterion."""
    if u.n != w.n:
        raise ValueError(f"size mismatch: {u.n} vs {w.n}")
    ru, rw = _rank_matrix(u), _rank_matrix(w)
    n = u.n
    return all(ru[i][j] <= rw[i][j] for i in range(1, n + 1) for j in range(1, n + 1))


def reduced_word(w):
    """A reduced word (a_1, ..., a_l) with ``w = s_{a_1} ... s_{a_l}``.

    Strips the smallest right descent repeatedly.
    """
    word = []
    cur = list(w.entries)
    while True:
        for i in range(len(cur) - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word.append(i + 1)
                break
        else:
            break
    return tuple(reversed(word))


def from_word(word, n):
    w = Permutation.identity(n)
    for a in word:
        w = w.right_simple(a)
    return w


def monoid_star(w, i):
    """Demazure product ``w * s_i``."""
    if w(i) < w(i + 1):
        return w.right_simple(i)
    return w


@lru_cache(maxsize=None)
def all_permutations(n):
    return tuple(Permutation(p) for p in itertools.permutations(range(1, n + 1)))


def _check_indices(I, n):
    I = frozenset(int(i) for i in I)
    bad = [i for i in I if not 1 <= i < n]
    if bad:
        raise ValueError(f"simple indices {sorted(bad)} invalid for n={n}")
    return I


def interval_blocks(J, n):
    """Maximal runs of positions 1..n joined by the reflections in J."""
    J = _check_indices(J, n)
    blocks, start = [], 1
    for i in range(1, n):
        if i not in J:
            blocks.append((start, i))
            start = i + 1
    blocks.append((start, n))
    return blocks


@lru_cache(maxsize=None)
def parabolic_data(I, n):
    """``(W_I elements, w_I, W^I)`` for the parabolic subgroup generated by I.

    W^I is the set of minimal length left coset representatives of W/W_I:
    permutations increasing on every block of consecutive positions joined
    by I.
    """
    I = _check_indices(I, n)
    blocks = interval_blocks(I, n)
    factors = []
    for a, b in blocks:
        factors.append(list(itertools.permutations(range(a, b + 1))))
    elems = []
    for combo in itertools.product(*factors):
        elems.append(Permutation(itertools.chain.from_iterable(combo)))
    longest = Permutation(itertools.chain.from_iterable(range(b, a - 1, -1) for a, b in blocks))
    reps = tuple(w for w in all_permutations(n)
                 if all(w(i) < w(i + 1) for i in I))
    return tuple(sorted(elems)), longest, reps


def min_coset_rep(w, J):
    """Minimal representative of ``w W_J`` (sort each J-block) and the W_J part."""
    e = list(w.entries)
    for a, b in interval_blocks(J, w.n):
        e[a - 1:b] = sorted(e[a - 1:b])
    x0 = Permutation(e)
    return x0, compose(x0.inverse(), w)


def act_on_weight(w, lam):
    """``w . eps_i = eps_{w(i)}``."""
    if len(lam) != w.n:
        raise ValueError(f"size mismatch: {w.n} vs {len(lam)}")
    out = [0] * w.n
    for i, c in enumerate(lam, 1):
        out[w(i) - 1] = c
    return tuple(out)


def root(i, j, n):
    """The weight eps_i - eps_j."""
    v = [0] * n
    v[i - 1] += 1
    v[j - 1] -= 1
    return tuple(v)


def simple_root(i, n):
    return root(i, i + 1, n)


@lru_cache(maxsize=None)
def positive_roots(n):
    return tuple(root(i, j, n) for i in range(1, n + 1) for j in range(i + 1, n + 1))


@lru_cache(maxsize=None)
def all_roots(n):
    return tuple(root(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def is_root(lam):
    return sorted(lam) == [-1] + [0] * (len(lam) - 2) + [1]


def is_positive(lam):
    """For a root eps_i - eps_j: positive iff i < j."""
    for c in lam:
        if c:
            return c > 0
    return False


@lru_cache(maxsize=None)
def roots_of_K(n, p):
    """Roots of GL(p) x GL(q) inside GL(n)."""
    if not 0 <= p <= n:
        raise ValueError(f"p={p} out of range for n={n}")
    return frozenset(root(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1)
                     if i != j and ((i <= p) == (j <= p)))


def levi_positive_roots(J, n):
    """Positive roots of the Levi of P_J (roots inside a single J-block)."""
    out = []
    for a, b in interval_blocks(J, n):
        for i in range(a, b + 1):
            for j in range(i + 1, b + 1):
                out.append(root(i, j, n))
    return out


def format_word(word):
    return ",".join(str(a) for a in word)


def parse_index_set(text):
    """``"3,5"`` -> frozenset({3, 5}); empty string gives the empty set."""
    text = text.strip().strip("{}()")
    if not text:
        return frozenset()
    return frozenset(int(t) for t in text.replace(" ", ",").split(",") if t)
