"""Exact polynomials and rational functions in simple-root coordinates.

Polynomials live in Q[a_1, ..., a_m] where a_i stands for the simple root
alpha_i.  Exponent vectors are packed into a single Python int, ``_BITS`` bits
per variable, so monomial multiplication is integer addition.  Rational
functions only ever have products of linear forms in the denominator, so
simplification is trial division by those factors; no multivariate gcd.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction

_BITS = 12
_MASK = (1 << _BITS) - 1


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return int(c.numerator)
    return c


def _pack(exps):
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent {e} out of range")
        key |= e << (_BITS * i)
    return key


def _unpack(key, nvars):
    return tuple((key >> (_BITS * i)) & _MASK for i in range(nvars))


def _key_degree(key):
    d = 0
    while key:
        d += key & _MASK
        key >>= _BITS
    return d


class Poly:
    """Sparse polynomial with exact int/Fraction coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, terms, nvars):
        # terms: packed key -> nonzero coefficient (caller guarantees)
        self.terms = terms
        self.nvars = nvars

    # construction
    @classmethod
    def zero(cls, nvars):
        return cls({}, nvars)

    @classmethod
    def const(cls, c, nvars):
        c = _norm(c)
        return cls({0: c} if c else {}, nvars)

    @classmethod
    def var(cls, i, nvars):
        """The variable a_i, 1-based."""
        if not 1 <= i <= nvars:
            raise ValueError(f"variable a{i} out of range (nvars={nvars})")
        return cls({1 << (_BITS * (i - 1)): 1}, nvars)

    @classmethod
    def from_exps(cls, mapping, nvars):
        terms = {}
        for exps, c in mapping.items():
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length")
            c = _norm(c)
            if c:
                k = _pack(exps)
                terms[k] = _norm(terms.get(k, 0) + c)
                if not terms[k]:
                    del terms[k]
        return cls(terms, nvars)

    @classmethod
    def linear(cls, coeffs, const=0):
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                terms[1 << (_BITS * i)] = _norm(c)
        if const:
            terms[0] = _norm(const)
        return cls(terms, nvars)

    # inspection
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(k == 0 for k in self.terms)

    def constant_term(self):
        return self.terms.get(0, 0)

    def degree(self):
        return max((_key_degree(k) for k in self.terms), default=-1)

    def min_degree(self):
        return min((_key_degree(k) for k in self.terms), default=-1)

    def __len__(self):
        return len(self.terms)

    def items(self):
        """(exponent tuple, coefficient) pairs, graded lex, highest first."""
        out = [(_unpack(k, self.nvars), c) for k, c in self.terms.items()]
        out.sort(key=lambda t: (sum(t[0]), t[0]), reverse=True)
        return out

    def coefficient(self, exps):
        return self.terms.get(_pack(exps), 0)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        terms = dict(big)
        for k, c in small.items():
            s = terms.get(k, 0) + c
            if s:
                terms[k] = _norm(s)
            else:
                terms.pop(k, None)
        return Poly(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _norm(c)
        if not c:
            return Poly.zero(self.nvars)
        return Poly({k: _norm(v * c) for k, v in self.terms.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly.zero(self.nvars)
        if len(a) < len(b):
            a, b = b, a
        terms = {}
        get = terms.get
        b_items = list(b.items())
        for ka, ca in a.items():
            for kb, cb in b_items:
                k = ka + kb
                terms[k] = get(k, 0) + ca * cb
        if all(type(c) is int for c in b.values()) and all(type(c) is int for c in a.values()):
            return Poly({k: c for k, c in terms.items() if c}, self.nvars)
        return Poly({k: _norm(c) for k, c in terms.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("only nonnegative integer powers")
        out = Poly.const(1, self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def evaluate(self, point):
        """Exact value at a point (sequence of rationals)."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for k, c in self.terms.items():
            t = Fraction(c)
            for i in range(self.nvars):
                e = (k >> (_BITS * i)) & _MASK
                if e:
                    t *= Fraction(point[i]) ** e
            total += t
        return _norm(total)

    def substitute(self, images):
        """Replace a_i by the polynomial images[i-1]."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars if images else self.nvars
        out = Poly.zero(nv)
        powers = [dict() for _ in images]
        for k, c in self.terms.items():
            t = Poly.const(c, nv)
            for i in range(self.nvars):
                e = (k >> (_BITS * i)) & _MASK
                if e:
                    p = powers[i].get(e)
                    if p is None:
                        p = powers[i][e] = images[i] ** e
                    t = t * p
            out = out + t
        return out

    def divide_linear(self, form):
        """Exact quotient by a LinearForm, or None if it does not divide.

        Long division in the last variable x_k that occurs in the form:
        terms are cleared from the highest power of x_k downwards, and
        whatever is left without x_k must vanish.
        """
        if form.is_zero():
            raise ZeroDivisionError("division by the zero form")
        nv = self.nvars
        if not self.terms:
            return Poly.zero(nv)
        if form.is_constant():
            return self.scale(Fraction(1, 1) / form.const)
        k = max(i for i, c in enumerate(form.coeffs) if c)
        ck = form.coeffs[k]
        shift = _BITS * k
        unit = 1 << shift
        rest = [(1 << (_BITS * j), c) for j, c in enumerate(form.coeffs) if c and j != k]
        if form.const:
            rest.append((0, form.const))
        buckets = {}
        for key, c in self.terms.items():
            d = (key >> shift) & _MASK
            b = buckets.get(d)
            if b is None:
                buckets[d] = {key: c}
            else:
                b[key] = c
        quotient = {}
        for d in range(max(buckets), 0, -1):
            b = buckets.pop(d, None)
            if not b:
                continue
            lower = buckets.get(d - 1)
            if lower is None:
                lower = buckets[d - 1] = {}
            get = lower.get
            for key, c in b.items():
                if not c:
                    continue
                qk = key - unit
                qc = c // ck if type(c) is int and c % ck == 0 else Fraction(c) / ck
                quotient[qk] = qc
                for off, rc in rest:
                    t = qk + off
                    lower[t] = get(t, 0) - qc * rc
        if any(buckets.get(0, {}).values()):
            return None
        return Poly({key: _norm(c) for key, c in quotient.items()}, nv)

    # text and json
    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)

    def to_json(self):
        out = []
        for exps, c in self.items():
            c = Fraction(c)
            out.append({"exps": list(exps), "num": c.numerator, "den": c.denominator})
        return out

    @classmethod
    def from_json(cls, data, nvars):
        return cls.from_exps({tuple(t["exps"]): Fraction(t["num"], t["den"]) for t in data}, nvars)


def sub_products(base, pairs):
    """``base - sum(a * b for a, b in pairs)`` accumulated in one dict."""
    terms = dict(base.terms)
    get = terms.get
    for a, b in pairs:
        at, bt = a.terms, b.terms
        if len(at) < len(bt):
            at, bt = bt, at
        b_items = list(bt.items())
        for ka, ca in at.items():
            for kb, cb in b_items:
                k = ka + kb
                terms[k] = get(k, 0) - ca * cb
    return Poly({k: _norm(c) for k, c in terms.items() if c}, base.nvars)


def format_poly(p, var="a"):
    if not p.terms:
        return "0"
    pieces = []
    for exps, c in p.items():
        mono = "*".join(f"{var}{i + 1}" + (f"^{e}" if e > 1 else "")
                        for i, e in enumerate(exps) if e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text, nvars):
    """Inverse of :func:`format_poly`; also accepts spaces instead of ``*``."""
    s = text.strip()
    if s == "0":
        return Poly.zero(nvars)
    acc = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(1)
        exps = [0] * nvars
        for factor in re.split(r"[*\s]+", m.group(2).strip()):
            if not factor:
                continue
            fm = re.fullmatch(r"a(\d+)(?:\^(\d+))?", factor)
            if fm:
                i = int(fm.group(1))
                if not 1 <= i <= nvars:
                    raise ValueError(f"variable a{i} out of range")
                exps[i - 1] += int(fm.group(2) or 1)
            else:
                coeff *= Fraction(factor)
        key = tuple(exps)
        acc[key] = acc.get(key, 0) + sign * coeff
    return Poly.from_exps(acc, nvars)


class LinearForm:
    """``sum c_i a_i + const`` with integer coefficients."""

    __slots__ = ("coeffs", "const", "_hash")

    def __init__(self, coeffs, const=0):
        self.coeffs = tuple(coeffs)
        self.const = const
        self._hash = hash((self.coeffs, const))

    @property
    def nvars(self):
        return len(self.coeffs)

    def is_zero(self):
        return not self.const and not any(self.coeffs)

    def is_constant(self):
        return not any(self.coeffs)

    def normalized(self):
        """(sign, form) with the first nonzero root coefficient positive."""
        for c in self.coeffs:
            if c:
                if c > 0:
                    return 1, self
                return -1, LinearForm(tuple(-x for x in self.coeffs), -self.const)
        return 1, self

    def shifted(self, c):
        return LinearForm(self.coeffs, self.const + c)

    def __neg__(self):
        return LinearForm(tuple(-x for x in self.coeffs), -self.const)

    def to_poly(self):
        return Poly.linear(self.coeffs, self.const)

    def evaluate(self, point):
        return _norm(sum((Fraction(c) * Fraction(x) for c, x in zip(self.coeffs, point)), Fraction(self.const)))

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.coeffs == other.coeffs and self.const == other.const

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LinearForm({self.coeffs}, {self.const})"

    def __str__(self):
        return format_poly(self.to_poly())


def weight_to_alpha(lam):
    """Rewrite an epsilon-basis weight of the root lattice in simple roots.

    The coefficient of alpha_k is c_1 + ... + c_k.
    """
    if sum(lam) != 0:
        raise ValueError(f"weight {tuple(lam)} is not in the root lattice")
    out, run = [], 0
    for c in lam[:-1]:
        run += c
        out.append(run)
    return LinearForm(tuple(out))


class RationalFunction:
    """numerator / product of linear forms (with multiplicity)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = {}
        scale = Fraction(1)
        for f, m in (den or {}).items():
            if m <= 0:
                continue
            if f.is_zero():
                raise ZeroDivisionError("denominator factor is identically zero")
            if f.is_constant():
                scale /= Fraction(f.const) ** m
                continue
            s, g = f.normalized()
            if s < 0 and m % 2:
                scale = -scale
            self.den[g] = self.den.get(g, 0) + m
        if scale != 1:
            self.num = self.num.scale(scale)
        if self.num.is_zero():
            self.den = {}

    @property
    def nvars(self):
        return self.num.nvars

    @classmethod
    def from_poly(cls, p):
        return cls(p, {})

    @classmethod
    def zero(cls, nvars):
        return cls(Poly.zero(nvars), {})

    def is_zero(self):
        return self.num.is_zero()

    def __add__(self, other):
        return rf_add(self, _as_rf(other, self.nvars))

    __radd__ = __add__

    def __mul__(self, other):
        return rf_mul(self, _as_rf(other, self.nvars))

    __rmul__ = __mul__

    def __neg__(self):
        return RationalFunction(-self.num, dict(self.den))

    def __sub__(self, other):
        return self + (-_as_rf(other, self.nvars))

    def simplify(self):
        return rf_simplify(self)

    def is_polynomial(self):
        return rf_is_polynomial(self)

    def evaluate(self, point):
        d = Fraction(1)
        for f, m in self.den.items():
            v = f.evaluate(point)
            if v == 0:
                raise ZeroDivisionError("denominator vanishes at the point")
            d *= Fraction(v) ** m
        return _norm(Fraction(self.num.evaluate(point)) / d)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            if isinstance(other, (Poly, int, Fraction)):
                other = _as_rf(other, self.nvars)
            else:
                return NotImplemented
        # cross-multiply by the non-shared parts of the denominators
        lhs, rhs = self.num, other.num
        for f in set(self.den) | set(other.den):
            a, b = self.den.get(f, 0), other.den.get(f, 0)
            if b > a:
                lhs = lhs * f.to_poly() ** (b - a)
            elif a > b:
                rhs = rhs * f.to_poly() ** (a - b)
        return lhs == rhs

    __hash__ = None

    def degree_shape(self):
        return self.num.degree(), sum(self.den.values())

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if not self.den:
            return str(self.num)
        facs = []
        for f, m in sorted(self.den.items(), key=lambda t: (t[0].coeffs, t[0].const)):
            facs.append(f"({f})" + (f"^{m}" if m > 1 else ""))
        return f"({self.num}) / {'*'.join(facs)}"

    def to_json(self):
        den = []
        for f, m in sorted(self.den.items(), key=lambda t: (t[0].coeffs, t[0].const)):
            den.append({"coeffs": list(f.coeffs), "const": f.const, "mult": m})
        return {"num": self.num.to_json(), "den": den}

    @classmethod
    def from_json(cls, data, nvars):
        den = {LinearForm(tuple(d["coeffs"]), d["const"]): d["mult"] for d in data["den"]}
        return cls(Poly.from_json(data["num"], nvars), den)


def _as_rf(x, nvars):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x, {})
    if isinstance(x, (int, Fraction)):
        return RationalFunction(Poly.const(x, nvars), {})
    raise TypeError(f"cannot treat {type(x).__name__} as a rational function")


def _cofactor(den, target):
    p = None
    for f, m in target.items():
        extra = m - den.get(f, 0)
        if extra:
            q = f.to_poly() ** extra
            p = q if p is None else p * q
    return p


def rf_sum(terms, nvars=None, simplify=True):
    """Sum over the least common denominator (max multiplicity per factor)."""
    terms = list(terms)
    if not terms:
        if nvars is None:
            raise ValueError("need nvars for an empty sum")
        return RationalFunction.zero(nvars)
    nvars = terms[0].nvars
    lcd = Counter()
    for t in terms:
        if t.is_zero():
            continue
        for f, m in t.den.items():
            if m > lcd[f]:
                lcd[f] = m
    num = Poly.zero(nvars)
    for t in terms:
        if t.is_zero():
            continue
        co = _cofactor(t.den, lcd)
        num = num + (t.num if co is None else t.num * co)
    out = RationalFunction(num, dict(lcd))
    return rf_simplify(out) if simplify else out


def rf_add(a, b):
    return rf_sum([a, b])


def rf_mul(a, b):
    den = dict(a.den)
    for f, m in b.den.items():
        den[f] = den.get(f, 0) + m
    return RationalFunction(a.num * b.num, den)


def rf_simplify(r):
    """Cancel denominator factors that divide the numerator exactly."""
    num = r.num
    den = {}
    for f, m in r.den.items():
        while m and not num.is_zero():
            q = num.divide_linear(f)
            if q is None:
                break
            num, m = q, m - 1
        if m:
            den[f] = m
    return RationalFunction(num, den)


def rf_is_polynomial(r):
    """The numerator if the simplified denominator is empty, else None."""
    s = rf_simplify(r)
    return s.num if not s.den else None
