"""Exact scalar arithmetic: rationals, sparse multivariate Laurent polynomials,
and fractions of Laurent polynomials.

Everything here is immutable in spirit: operations return new objects and
never mutate their arguments.  Coefficients are ``fractions.Fraction`` (stored
as plain ``int`` whenever the denominator is 1), exponent vectors are tuples
of signed integers, one slot per variable of the owning :class:`VarTable`.

Canonical text form (used by all golden files):

    poly      := "0" | term (" + " term | " - " term)*
    term      := coeff | monomial | coeff "*" monomial
    coeff     := int | int "/" posint
    monomial  := factor ("*" factor)*
    factor    := name | name "^" int          (exponent 1 is left implicit)

Terms are ordered by descending lexicographic comparison of exponent
vectors under the fixed variable order.
"""

from __future__ import annotations

import re
from fractions import Fraction


def _norm(c):
    """Collapse integral Fractions to int; leave everything else alone."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class VarTable:
    """An ordered, immutable list of variable names.

    The order is fixed for the lifetime of a computation; exponent vectors,
    term ordering and printing all refer to it.
    """

    __slots__ = ("names", "index", "zero")

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names: %r" % (names,))
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.zero = (0,) * len(names)

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, VarTable) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return "VarTable%r" % (self.names,)

    def monomial(self, **powers):
        """Exponent tuple with the given variable powers, e.g. monomial(q=-2, u=1)."""
        exps = [0] * len(self.names)
        for name, p in powers.items():
            exps[self.index[name]] = p
        return tuple(exps)


QV = VarTable(("q",))
QUV = VarTable(("q", "u"))
QUVV = VarTable(("q", "u", "v"))


class VarTableMismatch(ValueError):
    pass


class ZeroDenominator(ZeroDivisionError):
    pass


class LaurentPoly:
    """Sparse multivariate Laurent polynomial over the rationals.

    ``terms`` maps exponent tuples to nonzero coefficients.  No zero
    coefficient is ever stored.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VarTable, terms=None):
        self.vars = vars
        if terms:
            self.terms = {e: _norm(c) for e, c in terms.items() if c != 0}
        else:
            self.terms = {}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(vars: VarTable, c) -> "LaurentPoly":
        c = _norm(Fraction(c))
        if c == 0:
            return LaurentPoly(vars)
        return LaurentPoly(vars, {vars.zero: c})

    @staticmethod
    def var(vars: VarTable, name: str, power: int = 1) -> "LaurentPoly":
        return LaurentPoly(vars, {vars.monomial(**{name: power}): 1})

    @staticmethod
    def monom(vars: VarTable, c, exps) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly(vars)
        return LaurentPoly(vars, {tuple(exps): _norm(Fraction(c))})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {self.vars.zero: 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {self.vars.zero: _norm(Fraction(other))}
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.vars != other.vars:
            raise VarTableMismatch(
                "variable tables differ: %r vs %r" % (self.vars, other.vars))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = _norm(s)
        out = LaurentPoly(self.vars)
        out.terms = terms
        return out

    def __neg__(self):
        out = LaurentPoly(self.vars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly(self.vars)
            out = LaurentPoly(self.vars)
            out.terms = {e: _norm(c * other) for e, c in self.terms.items()}
            return out
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s == 0:
                    terms.pop(e, None)
                else:
                    terms[e] = s
        out = LaurentPoly(self.vars)
        out.terms = {e: _norm(c) for e, c in terms.items()}
        return out

    __rmul__ = __mul__
    __radd__ = __add__

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, n: int):
        if n < 0:
            inv = self.inverse_monomial()
            return inv ** (-n)
        out = LaurentPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse_monomial(self) -> "LaurentPoly":
        """Inverse, defined only when self is a single term."""
        if len(self.terms) != 1:
            raise ValueError("only monomials are invertible in the Laurent ring")
        (e, c), = self.terms.items()
        return LaurentPoly.monom(self.vars, Fraction(1, 1) / Fraction(c),
                                 tuple(-x for x in e))

    def divide_exact(self, divisor: "LaurentPoly"):
        """Exact division; returns the quotient or None when not divisible.

        Single-divisor multivariate division with respect to the term order;
        sufficient for the monic normalisations used by rule orientation.
        """
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if divisor.is_monomial():
            inv = divisor.inverse_monomial()
            return self * inv
        lead_e = max(divisor.terms)
        lead_c = divisor.terms[lead_e]
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = tuple(a - b for a, b in zip(e, lead_e))
            qc = Fraction(c) / Fraction(lead_c)
            quot[qe] = _norm(quot.get(qe, 0) + qc)
            for de, dc in divisor.terms.items():
                ne = tuple(a + b for a, b in zip(qe, de))
                s = rem.get(ne, 0) - qc * dc
                if s == 0:
                    rem.pop(ne, None)
                else:
                    rem[ne] = _norm(s)
            # every step strictly lowers the maximal exponent tuple, or fails
            if rem and max(rem) >= e:
                return None
        out = LaurentPoly(self.vars)
        out.terms = {e: c for e, c in quot.items() if c != 0}
        return out

    # -- substitution ------------------------------------------------------

    def subst(self, name: str, coeff, exps) -> "LaurentPoly":
        """Substitute a single nonzero monomial for a variable.

        ``name`` maps to ``coeff * X^exps`` where exps is an exponent tuple
        over the same VarTable.  E.g. u -> q^-2 u or u -> u^-1.
        """
        if name not in self.vars.index:
            raise KeyError("unknown variable %r" % name)
        coeff = Fraction(coeff)
        if coeff == 0:
            raise ValueError("replacement monomial must be nonzero")
        idx = self.vars.index[name]
        exps = tuple(exps)
        out_terms = {}
        for e, c in self.terms.items():
            k = e[idx]
            base = list(e)
            base[idx] = 0
            ne = tuple(b + k * x for b, x in zip(base, exps))
            nc = c * coeff ** k
            s = out_terms.get(ne, 0) + nc
            if s == 0:
                out_terms.pop(ne, None)
            else:
                out_terms[ne] = _norm(s)
        out = LaurentPoly(self.vars)
        out.terms = out_terms
        return out

    def project(self, target: VarTable) -> "LaurentPoly":
        """Re-express over a different VarTable.

        Variables missing from the target must have exponent 0 everywhere.
        """
        mapping = []
        for i, n in enumerate(self.vars.names):
            mapping.append(target.index.get(n))
        out_terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(target)
            for i, x in enumerate(e):
                if x == 0:
                    continue
                j = mapping[i]
                if j is None:
                    raise VarTableMismatch(
                        "variable %r has nonzero exponent, cannot drop"
                        % self.vars.names[i])
                ne[j] = x
            out_terms[tuple(ne)] = c
        return LaurentPoly(target, out_terms)

    # -- printing / parsing ------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = self._fmt_monomial(e)
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else "%s*%s" % (_fmt_coeff(a), mono)
            else:
                body = _fmt_coeff(a)
            if not parts:
                parts.append("-" + body if neg else body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __repr__ = __str__

    def _fmt_monomial(self, e):
        factors = []
        for name, x in zip(self.vars.names, e):
            if x == 0:
                continue
            factors.append(name if x == 1 else "%s^%d" % (name, x))
        return "*".join(factors)


def _fmt_coeff(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return "%d/%d" % (c.numerator, c.denominator)
    return "%d" % c


_TERM_SPLIT = re.compile(r" ([+-]) ")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?$")
_COEFF = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_poly(vars: VarTable, text: str) -> LaurentPoly:
    """Parse the canonical text form back into a LaurentPoly."""
    text = text.strip()
    if text == "0":
        return LaurentPoly(vars)
    out = LaurentPoly(vars)
    first_sign = "+"
    if text.startswith("-"):
        first_sign = "-"
        text = text[1:].lstrip()
    pieces = [first_sign] + _TERM_SPLIT.split(text)
    for i in range(0, len(pieces), 2):
        sign = -1 if pieces[i] == "-" else 1
        term = pieces[i + 1]
        coeff = Fraction(1)
        exps = [0] * len(vars)
        for factor in term.split("*"):
            factor = factor.strip()
            m = _COEFF.match(factor)
            if m:
                num = int(m.group(1))
                den = int(m.group(2)) if m.group(2) else 1
                coeff *= Fraction(num, den)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError("cannot parse factor %r" % factor)
            name, p = m.group(1), m.group(2)
            if name not in vars.index:
                raise KeyError("unknown variable %r" % name)
            exps[vars.index[name]] += int(p) if p is not None else 1
        out = out + LaurentPoly.monom(vars, sign * coeff, tuple(exps))
    return out


class ScalarFraction:
    """Fraction of Laurent polynomials, compared by cross-multiplication.

    Only monomial and integer content is extracted; no multivariate gcd.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = None):
        if den is None:
            den = LaurentPoly.const(num.vars, 1)
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        num._check(den)
        self.num, self.den = _extract_content(num, den)

    def is_zero(self):
        return self.num.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ScalarFraction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            other = ScalarFraction(other)
        return ScalarFraction(self.num * other.num, self.den * other.den)

    def __add__(self, other):
        if isinstance(other, LaurentPoly):
            other = ScalarFraction(other)
        return ScalarFraction(self.num * other.den + other.num * self.den,
                              self.den * other.den)

    def __sub__(self, other):
        if isinstance(other, LaurentPoly):
            other = ScalarFraction(other)
        return ScalarFraction(self.num * other.den - other.num * self.den,
                              self.den * other.den)

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _extract_content(num: LaurentPoly, den: LaurentPoly):
    def content(p: LaurentPoly):
        if p.is_zero():
            return None
        exps = [min(e[i] for e in p.terms) for i in range(len(p.vars))]
        from math import gcd
        g = 0
        for c in p.terms.values():
            g = gcd(g, Fraction(c).numerator)
        return tuple(exps), g or 1

    cd = content(den)
    shift_e = cd[0]
    cn = content(num)
    if cn is not None:
        shift_e = tuple(min(a, b) for a, b in zip(cn[0], shift_e))
    inv = LaurentPoly.monom(num.vars, 1, tuple(-x for x in shift_e))
    num = num * inv
    den = den * inv
    # normalise the sign of the denominator's leading term
    lead = max(den.terms)
    if den.terms[lead] < 0:
        num = -num
        den = -den
    return num, den


def frac_eq(a: ScalarFraction, b: ScalarFraction) -> bool:
    """True iff a and b represent the same rational function."""
    return a == b
