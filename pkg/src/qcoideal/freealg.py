"""Free noncommutative polynomials over generator alphabets.

Generators are interned per :class:`Alphabet` and referenced by small integer
ids; a word is a tuple of ids.  An :class:`NcPoly` maps words to nonzero
:class:`~qcoideal.scalars.LaurentPoly` coefficients.

Word serialization: family letter + optional affine degree + "[i,j]", e.g.
``t[2,1]``, ``tb[1,2]``, ``s[3,2]``, ``si[1,2]`` (the inverse of s_{12}) and
``t3[2,1]`` for the affine generator of degree 3.  Letters of a word are
joined with ``*``; the empty word prints as ``1``.
"""

from __future__ import annotations

from .scalars import LaurentPoly, VarTable


def primed(i: int) -> int:
    """Index involution 1<->2, 3<->4, ...: (2k-1)' = 2k and (2k)' = 2k-1."""
    return i + 1 if i % 2 == 1 else i - 1


class GenSym:
    """A single generator symbol: family, matrix position, affine degree.

    degree is None for the finite families and a nonnegative int for the
    affine ones.
    """

    __slots__ = ("family", "i", "j", "degree")

    def __init__(self, family: str, i: int, j: int, degree=None):
        self.family = family
        self.i = i
        self.j = j
        self.degree = degree

    def key(self):
        return (self.family, self.i, self.j, self.degree)

    def __eq__(self, other):
        return isinstance(other, GenSym) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __str__(self):
        d = "" if self.degree is None else str(self.degree)
        return "%s%s[%d,%d]" % (self.family, d, self.i, self.j)

    __repr__ = __str__


class Alphabet:
    """An interned set of generators with stable ids."""

    def __init__(self, name: str, syms):
        self.name = name
        self.syms = list(syms)
        self.ids = {s.key(): gid for gid, s in enumerate(self.syms)}

    def __len__(self):
        return len(self.syms)

    def __contains__(self, sym: GenSym):
        return sym.key() in self.ids

    def gid(self, family, i, j, degree=None) -> int:
        key = (family, i, j, degree)
        if key not in self.ids:
            raise KeyError("no generator %s%s[%d,%d] in alphabet %s"
                           % (family, "" if degree is None else degree, i, j,
                              self.name))
        return self.ids[key]

    def sym(self, gid: int) -> GenSym:
        return self.syms[gid]

    def word_str(self, word) -> str:
        if not word:
            return "1"
        return "*".join(str(self.syms[g]) for g in word)


def uqgl_alphabet(N: int) -> Alphabet:
    """t_ij for i >= j and tb_ij for i <= j (the paper's zero patterns are
    excluded at construction)."""
    syms = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i >= j:
                syms.append(GenSym("t", i, j))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i <= j:
                syms.append(GenSym("tb", i, j))
    return Alphabet("uqgl:%d" % N, syms)


def tworth_alphabet(N: int) -> Alphabet:
    """s_ij for i > j only: s_ii = 1 and s_{i<j} = 0 never enter the alphabet."""
    syms = [GenSym("s", i, j)
            for i in range(1, N + 1) for j in range(1, N + 1) if i > j]
    return Alphabet("tworth:%d" % N, syms)


def twsympl_alphabet(N: int) -> Alphabet:
    """Block-triangular alphabet: s_ij for i >= j, s_{i,i'} and its inverse
    for odd i."""
    if N % 2 != 0:
        raise ValueError("symplectic case needs even N")
    syms = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i >= j or (i % 2 == 1 and j == primed(i)):
                syms.append(GenSym("s", i, j))
    for i in range(1, N + 1, 2):
        syms.append(GenSym("si", i, primed(i)))
    return Alphabet("twsympl:%d" % N, syms)


def uqglhat_alphabet(N: int, window: int) -> Alphabet:
    """Affine generators of degree <= window, with the degree-0 zero patterns
    excluded."""
    syms = []
    for r in range(window + 1):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if r == 0 and i < j:
                    continue
                syms.append(GenSym("t", i, j, r))
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if r == 0 and i > j:
                    continue
                syms.append(GenSym("tb", i, j, r))
    return Alphabet("uqglhat:%d:%d" % (N, window), syms)


def tworthhat_alphabet(N: int, window: int) -> Alphabet:
    """Abstract twisted q-Yangian generators s^(r)_ij, degree <= window,
    with s^(0)_{i<j} excluded."""
    syms = []
    for r in range(window + 1):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if r == 0 and i < j:
                    continue
                syms.append(GenSym("s", i, j, r))
    return Alphabet("tworthhat:%d:%d" % (N, window), syms)


class AlphabetMismatch(ValueError):
    pass


class NcPoly:
    """Finite sum of scalar-weighted words in an alphabet's generators."""

    __slots__ = ("alphabet", "vars", "terms")

    def __init__(self, alphabet: Alphabet, vars: VarTable, terms=None):
        self.alphabet = alphabet
        self.vars = vars
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(alphabet, vars):
        return NcPoly(alphabet, vars)

    @staticmethod
    def one(alphabet, vars):
        return NcPoly(alphabet, vars, {(): LaurentPoly.const(vars, 1)})

    @staticmethod
    def gen(alphabet, vars, gid):
        return NcPoly(alphabet, vars, {(gid,): LaurentPoly.const(vars, 1)})

    @staticmethod
    def scalar(alphabet, vars, c: LaurentPoly):
        return NcPoly(alphabet, vars, {(): c})

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_scalar(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            return NotImplemented
        return (self.alphabet is other.alphabet and self.vars == other.vars
                and self.terms == other.terms)

    def _check(self, other):
        if self.alphabet is not other.alphabet:
            raise AlphabetMismatch("words over different alphabets: %s vs %s"
                                   % (self.alphabet.name, other.alphabet.name))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        out = NcPoly(self.alphabet, self.vars)
        out.terms = terms
        return out

    def __neg__(self):
        out = NcPoly(self.alphabet, self.vars)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = terms.get(w)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(w, None)
                else:
                    terms[w] = s
        out = NcPoly(self.alphabet, self.vars)
        out.terms = terms
        return out

    def scale(self, c):
        if isinstance(c, (int,)):
            c = LaurentPoly.const(self.vars, c)
        if c.is_zero():
            return NcPoly(self.alphabet, self.vars)
        out = NcPoly(self.alphabet, self.vars)
        out.terms = {w: k * c for w, k in self.terms.items()}
        return out

    def commutator(self, other) -> "NcPoly":
        """ab - ba, unreduced."""
        return self * other - other * self

    # -- inspection --------------------------------------------------------

    def words(self):
        return self.terms.keys()

    def coeff(self, word) -> LaurentPoly:
        return self.terms.get(tuple(word), LaurentPoly(self.vars))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            ws = self.alphabet.word_str(w)
            cs = str(c)
            if len(c.terms) > 1:
                body = "(%s)*%s" % (cs, ws)
            elif cs == "1":
                body = ws
            elif cs == "-1":
                body = "-" + ws
            elif w:
                body = "%s*%s" % (cs, ws)
            else:
                body = cs
            if not parts:
                parts.append(body)
            else:
                if body.startswith("-"):
                    parts.append(" - " + body[1:])
                else:
                    parts.append(" + " + body)
        return "".join(parts)

    __repr__ = __str__


class NcPoly2:
    """Element of A (x) A: a map (word, word) -> coefficient."""

    __slots__ = ("alphabet", "vars", "terms")

    def __init__(self, alphabet, vars, terms=None):
        self.alphabet = alphabet
        self.vars = vars
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not c.is_zero():
                    self.terms[w] = c

    @staticmethod
    def one(alphabet, vars):
        return NcPoly2(alphabet, vars,
                       {((), ()): LaurentPoly.const(vars, 1)})

    @staticmethod
    def tensor(a: NcPoly, b: NcPoly) -> "NcPoly2":
        out = NcPoly2(a.alphabet, a.vars)
        for w1, c1 in a.terms.items():
            for w2, c2 in b.terms.items():
                c = c1 * c2
                if not c.is_zero():
                    key = (w1, w2)
                    s = out.terms.get(key)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.terms.pop(key, None)
                    else:
                        out.terms[key] = s
        return out

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, NcPoly2):
            return NotImplemented
        return self.terms == other.terms and self.vars == other.vars

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        out = NcPoly2(self.alphabet, self.vars)
        out.terms = terms
        return out

    def __neg__(self):
        out = NcPoly2(self.alphabet, self.vars)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """(a (x) b)(c (x) d) = ac (x) bd, componentwise concatenation."""
        terms = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                c = c1 * c2
                s = terms.get(key)
                s = c if s is None else s + c
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s
        out = NcPoly2(self.alphabet, self.vars)
        out.terms = terms
        return out

    def scale(self, c):
        out = NcPoly2(self.alphabet, self.vars)
        out.terms = {w: k * c for w, k in self.terms.items()
                     if not (k * c).is_zero()}
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (w1, w2), c in sorted(self.terms.items(),
                                  key=lambda t: (len(t[0][0]), len(t[0][1]),
                                                 t[0])):
            parts.append("(%s) %s (x) %s" % (c, self.alphabet.word_str(w1),
                                             self.alphabet.word_str(w2)))
        return " + ".join(parts)

    __repr__ = __str__


class MissingGeneratorImage(KeyError):
    pass


def tensor2_apply_delta(x: NcPoly, rule) -> NcPoly2:
    """Extend a generator coproduct rule multiplicatively to an NcPoly.

    ``rule``: gid -> NcPoly2.  Words map to the product of their letters'
    images; sums extend linearly.
    """
    out = NcPoly2(x.alphabet, x.vars)
    for w, c in x.terms.items():
        img = NcPoly2.one(x.alphabet, x.vars)
        for g in w:
            if g not in rule:
                raise MissingGeneratorImage(
                    "no coproduct image for generator %s" % x.alphabet.sym(g))
            img = img * rule[g]
        out = out + img.scale(c)
    return out
