"""Clans for K = GL(p) x GL(q) acting on the flag variety of GL(n).

A clan is stored canonically as a tuple of tokens: the strings ``"+"`` and
``"-"`` and positive ints, with pair ids renumbered in order of first
occurrence.  The signature (p, q) rides along on the object.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache

from .weyl import Permutation, interval_blocks, reduced_word, parabolic_data

SIGNS = ("+", "-")


class ClanError(ValueError):
    pass


def canonicalize(tokens):
    ren, out = {}, []
    for t in tokens:
        if t in SIGNS:
            out.append(t)
        else:
            if t not in ren:
                ren[t] = len(ren) + 1
            out.append(ren[t])
    return tuple(out)


def _signature(tokens):
    plus = tokens.count("+")
    minus = tokens.count("-")
    pairs = (len(tokens) - plus - minus) // 2
    return plus + pairs, minus + pairs


class Clan:
    __slots__ = ("tokens", "p", "q", "_hash")

    def __init__(self, tokens, p=None, q=None):
        tokens = tuple(tokens)
        if not tokens:
            raise ClanError("empty clan")
        counts = {}
        for t in tokens:
            if t in SIGNS:
                continue
            if isinstance(t, bool) or not isinstance(t, int) or t < 0:
                raise ClanError(f"bad token {t!r}")
            counts[t] = counts.get(t, 0) + 1
        bad = sorted(k for k, c in counts.items() if c != 2)
        if bad:
            raise ClanError(f"pair id(s) {bad} must occur exactly twice")
        tokens = canonicalize(tokens)
        sp, sq = _signature(tokens)
        if (p is not None and p != sp) or (q is not None and q != sq):
            raise ClanError(f"clan has signature ({sp},{sq}), expected ({p},{q})")
        self.tokens = tokens
        self.p, self.q = sp, sq
        self._hash = hash(tokens)

    @property
    def n(self):
        return len(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __getitem__(self, i):
        """1-based access, matching the indexing of simple roots."""
        return self.tokens[i - 1]

    def __eq__(self, other):
        return isinstance(other, Clan) and self.tokens == other.tokens

    def __hash__(self):
        return self._hash

    def sort_key(self):
        return tuple(str(t) for t in self.tokens)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Clan({format_clan(self)})"

    def __str__(self):
        return format_clan(self)

    def is_sign(self, i):
        return self.tokens[i - 1] in SIGNS

    def is_closed(self):
        return all(t in SIGNS for t in self.tokens)

    def mates(self):
        """Position (1-based) of the mate at every pair position, None for signs."""
        first, out = {}, [None] * self.n
        for i, t in enumerate(self.tokens, 1):
            if t in SIGNS:
                continue
            if t in first:
                j = first[t]
                out[i - 1], out[j - 1] = j, i
            else:
                first[t] = i
        return out

    def compact(self):
        if any(t not in SIGNS and t >= 10 for t in self.tokens):
            return format_clan(self)
        return "(" + "".join(str(t) for t in self.tokens) + ")"


def format_clan(v, blocks=None):
    """``(1,+,1,2,2)``; with a BlockStructure, bars are placed at the cuts."""
    cuts = set(blocks.cuts) if blocks is not None else set()
    out = []
    for i, t in enumerate(v.tokens, 1):
        out.append(str(t))
        if i < v.n:
            out.append("|" if i in cuts else ",")
    return "(" + "".join(out) + ")"


def parse_clan(text, p=None, q=None):
    """Accepts ``(1,+,2,1,2,-,+)``, bars, and compact ``(1+1|22)`` input."""
    s = text.strip().replace("−", "-")
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if "," in s:
        raw = [t.strip() for t in s.replace("|", ",").split(",")]
        if any(not t for t in raw):
            raise ClanError(f"empty token in {text!r}")
    else:
        raw = [ch for ch in s if not ch.isspace() and ch != "|"]
    tokens = []
    for t in raw:
        if t in SIGNS:
            tokens.append(t)
        elif t.isdigit():
            tokens.append(int(t))
        else:
            raise ClanError(f"malformed token {t!r} in {text!r}")
    return Clan(tokens, p, q)


def _perfect_matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        b = items[k]
        rest = items[1:k] + items[k + 1:]
        for m in _perfect_matchings(rest):
            yield [(a, b)] + m


@lru_cache(maxsize=None)
def enumerate_clans(p, q):
    """All clans of signature (p, q), sorted."""
    if p < 0 or q < 0 or p + q < 1:
        raise ClanError(f"invalid signature ({p},{q})")
    n = p + q
    out = set()
    for k in range(min(p, q) + 1):
        plus, minus = p - k, q - k
        for sign_pos in itertools.combinations(range(n), plus + minus):
            rest = [i for i in range(n) if i not in sign_pos]
            for plus_pos in itertools.combinations(sign_pos, plus):
                base = ["-"] * n
                for i in plus_pos:
                    base[i] = "+"
                for m in _perfect_matchings(rest):
                    tok = list(base)
                    for pid, (a, b) in enumerate(m, 1):
                        tok[a] = tok[b] = pid
                    out.add(Clan(tok))
    return tuple(sorted(out))


def phi(v):
    e = list(range(1, v.n + 1))
    for i, j in enumerate(v.mates(), 1):
        if j is not None:
            e[i - 1] = j
    return Permutation(e)


class RootType(enum.Enum):
    REAL = "real"
    COMPACT_IMAGINARY = "compact imaginary"
    NONCOMPACT_IMAGINARY = "noncompact imaginary"
    COMPLEX_ASCENT = "complex ascent"
    COMPLEX_DESCENT = "complex descent"


TAU_TYPES = frozenset({RootType.REAL, RootType.COMPACT_IMAGINARY, RootType.COMPLEX_DESCENT})


def _check_index(v, i):
    if not 1 <= i < v.n:
        raise ClanError(f"simple index {i} out of range for n={v.n}")


def root_type(v, i):
    _check_index(v, i)
    a, b = v[i], v[i + 1]
    sa, sb = a in SIGNS, b in SIGNS
    if sa and sb:
        return RootType.COMPACT_IMAGINARY if a == b else RootType.NONCOMPACT_IMAGINARY
    if a == b:
        return RootType.REAL
    m = v.mates()
    if not sa and not sb:
        ascent = m[i - 1] < m[i]
    elif sa:
        ascent = m[i] > i + 1
    else:
        ascent = m[i - 1] < i
    return RootType.COMPLEX_ASCENT if ascent else RootType.COMPLEX_DESCENT


def monoid_act(v, i):
    """The Richardson-Springer action ``v * s_i``."""
    t = root_type(v, i)
    tok = list(v.tokens)
    if t is RootType.COMPLEX_ASCENT:
        tok[i - 1], tok[i] = tok[i], tok[i - 1]
    elif t is RootType.NONCOMPACT_IMAGINARY:
        fresh = max((x for x in tok if x not in SIGNS), default=0) + 1
        tok[i - 1] = tok[i] = fresh
    else:
        return v
    return Clan(tok)


def monoid_act_word(v, word):
    """Act by a word, or by w_I when given a set of simple indices."""
    if isinstance(word, (set, frozenset)):
        _, w_I, _ = parabolic_data(frozenset(word), v.n)
        word = reduced_word(w_I)
    for i in word:
        v = monoid_act(v, i)
    return v


def tau(v):
    return frozenset(i for i in range(1, v.n) if root_type(v, i) in TAU_TYPES)


def max_clan(p, q):
    if p < 0 or q < 0 or p + q < 1:
        raise ClanError(f"invalid signature ({p},{q})")
    k = min(p, q)
    sign = "+" if p >= q else "-"
    mid = [sign] * (abs(p - q))
    return Clan(list(range(1, k + 1)) + mid + list(range(k, 0, -1)))


def w_u(u):
    """Permutation placing 1..p increasingly on + and p+1..n on -."""
    if not u.is_closed():
        raise ClanError(f"{u} is not an all-sign clan")
    lo, hi = 1, u.p + 1
    out = []
    for t in u.tokens:
        if t == "+":
            out.append(lo)
            lo += 1
        else:
            out.append(hi)
            hi += 1
    return Permutation(out)


@dataclass(frozen=True)
class BlockStructure:
    blocks: tuple  # ((start, end), ...) 1-based inclusive
    signatures: tuple  # ((p_k, q_k), ...)

    @property
    def cuts(self):
        return tuple(end for _, end in self.blocks[:-1])

    def straddles(self, i):
        """s_i straddles two blocks iff i is a cut position."""
        return i in self.cuts

    def block_of(self, pos):
        for k, (a, b) in enumerate(self.blocks):
            if a <= pos <= b:
                return k
        raise IndexError(pos)

    def to_json(self):
        return [[a, b] for a, b in self.blocks]


def sub_clan(v, a, b):
    return Clan(v.tokens[a - 1:b])


def is_smooth(v):
    """The finest decomposition of v into max clans, or None.

    A sign is its own block; a pair opening at i with mate j must span a
    block [i, j] that is itself a max clan.
    """
    m = v.mates()
    blocks, sigs = [], []
    i = 1
    while i <= v.n:
        j = i if v.is_sign(i) else m[i - 1]
        if j < i:
            return None
        toks = v.tokens[i - 1:j]
        # pair ids must not leave the block
        for pos in range(i, j + 1):
            mp = m[pos - 1]
            if mp is not None and not i <= mp <= j:
                return None
        sub = Clan(toks)
        if sub != max_clan(sub.p, sub.q):
            return None
        blocks.append((i, j))
        sigs.append((sub.p, sub.q))
        i = j + 1
    return BlockStructure(tuple(blocks), tuple(sigs))


def blocks_from_cuts(v, cuts):
    """A BlockStructure for explicit cut positions; ids may not cross cuts."""
    cuts = sorted(set(cuts))
    bounds, start = [], 1
    for c in cuts + [v.n]:
        bounds.append((start, c))
        start = c + 1
    sigs = []
    m = v.mates()
    for a, b in bounds:
        for pos in range(a, b + 1):
            mp = m[pos - 1]
            if mp is not None and not a <= mp <= b:
                raise ClanError(f"pair at position {pos} crosses a block boundary")
        sub = sub_clan(v, a, b)
        sigs.append((sub.p, sub.q))
    return BlockStructure(tuple(bounds), tuple(sigs))


# --- closure order -------------------------------------------------------

class _ClosureTable:
    """Memoized closure sets and dimensions for one signature."""

    def __init__(self, p, q):
        self.p, self.q = p, q
        self.clans = enumerate_clans(p, q)
        self._act = {}
        self._below = {}
        self._dim = {}

    def act(self, v, i):
        key = (v, i)
        r = self._act.get(key)
        if r is None:
            r = self._act[key] = monoid_act(v, i)
        return r

    def _descent(self, v):
        for i in range(1, v.n):
            t = root_type(v, i)
            if t is RootType.REAL or t is RootType.COMPLEX_DESCENT:
                return i, t
        return None

    def predecessors(self, v, i, t):
        tok = list(v.tokens)
        if t is RootType.COMPLEX_DESCENT:
            tok[i - 1], tok[i] = tok[i], tok[i - 1]
            return [Clan(tok)]
        out = []
        for a, b in (("+", "-"), ("-", "+")):
            tok[i - 1], tok[i] = a, b
            out.append(Clan(tok))
        return out

    def dim(self, v):
        d = self._dim.get(v)
        if d is None:
            step = self._descent(v)
            if step is None:
                d = self.p * (self.p - 1) // 2 + self.q * (self.q - 1) // 2
            else:
                u = self.predecessors(v, *step)[0]
                assert self.act(u, step[0]) == v
                d = self.dim(u) + 1
            self._dim[v] = d
        return d

    def below(self, v):
        r = self._below.get(v)
        if r is not None:
            return r
        step = self._descent(v)
        if step is None:
            r = frozenset([v])
        else:
            i, t = step
            results = []
            for u in self.predecessors(v, i, t):
                assert self.act(u, i) == v, (u, i, v)
                image = {self.act(y, i) for y in self.below(u)}
                results.append(frozenset(w for w in self.clans if self.act(w, i) in image))
            assert all(x == results[0] for x in results), f"closure recursion disagrees at {v}"
            r = results[0]
        self._below[v] = r
        return r


@lru_cache(maxsize=None)
def _table(p, q):
    return _ClosureTable(p, q)


def orbit_dimension(v):
    return _table(v.p, v.q).dim(v)


def closure_set(v):
    """All y with X_y contained in X_v."""
    return _table(v.p, v.q).below(v)


def closure_leq(y, v):
    if (y.p, y.q) != (v.p, v.q):
        raise ClanError(f"signature mismatch: {y} vs {v}")
    return y in closure_set(v)


def covers_below(v):
    """Elements covered by v in the closure order."""
    below = sorted(closure_set(v) - {v}, key=lambda y: (-orbit_dimension(y), y.sort_key()))
    covers = []
    for y in below:
        if not any(y in closure_set(c) for c in covers):
            covers.append(y)
    return covers


class OrbitPoset:
    def __init__(self, nodes):
        self.nodes = sorted(nodes, key=lambda c: (orbit_dimension(c), c.sort_key()))
        self.dims = {c: orbit_dimension(c) for c in self.nodes}
        node_set = set(self.nodes)
        self.covers = []
        for v in self.nodes:
            for y in covers_below(v):
                if y in node_set:
                    self.covers.append((y, v))
        self.covers.sort(key=lambda e: (self.dims[e[1]], e[1].sort_key(), e[0].sort_key()))

    def to_dot(self, name="orbits"):
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        ids = {c: f"n{k}" for k, c in enumerate(self.nodes)}
        for c in self.nodes:
            lines.append(f'  {ids[c]} [label="{format_clan(c)}"];')
        for y, v in self.covers:
            lines.append(f"  {ids[y]} -> {ids[v]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "nodes": [format_clan(c) for c in self.nodes],
            "covers": [[format_clan(y), format_clan(v)] for y, v in self.covers],
            "dims": {format_clan(c): self.dims[c] for c in self.nodes},
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def orbit_poset(p, q, below=None):
    """Closure poset of V_{p,q}, or of the lower interval under ``below``."""
    if below is not None:
        return OrbitPoset(closure_set(below))
    return OrbitPoset(enumerate_clans(p, q))


def orbit_poset_from_json(data):
    nodes = [parse_clan(s) for s in data["nodes"]]
    covers = [(parse_clan(a), parse_clan(b)) for a, b in data["covers"]]
    dims = {parse_clan(k): d for k, d in data["dims"].items()}
    return nodes, covers, dims
