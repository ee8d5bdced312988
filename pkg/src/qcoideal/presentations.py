"""Rewrite systems and PBW normal forms for the presented algebras.

A presentation owns a total generator order, a weight function used for the
graded monomial order, and a set of oriented rewrite rules with left-hand
sides of length 1 or 2.  Rules are auto-generated from matrix relations;
nothing is hand-transcribed.  Confluence of the oriented systems is an
empirically tested hypothesis (see ``confluence_probe``), never assumed: the
rule set is not completed.

Words are compared by ``(weighted grade, rank sequence)`` where the rank
sequence comparison is positionwise with shorter-prefix-smaller.  Every rule
is validated at build time: each right-hand-side word must be strictly
smaller than the left-hand side.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .scalars import QV, LaurentPoly, VarTable
from .freealg import (Alphabet, GenSym, NcPoly, NcPoly2, primed,
                      tworth_alphabet, twsympl_alphabet, uqgl_alphabet,
                      uqglhat_alphabet)
from . import tensorcalc as tc


class NotOrientable(ValueError):
    pass


class ResourceLimitExceeded(RuntimeError):
    pass


class WindowInsufficiency(RuntimeError):
    """A reduction in a windowed presentation hit a dropped rule."""


class BuildError(RuntimeError):
    pass


_POISON = object()  # cache marker: normal form needs a dropped rule

DEFAULT_MAX_TERMS = 10 ** 6
DEFAULT_MAX_STEPS = 10 ** 5


def _env_cap(name, default):
    import os
    v = os.environ.get(name)
    return int(v) if v else default


class GeneratorOrder:
    """Total order (rank) and grading weight for an alphabet's generators."""

    def __init__(self, alphabet: Alphabet, ranked_gids, weights=None):
        if sorted(ranked_gids) != list(range(len(alphabet))):
            raise ValueError("ranking must be a permutation of all generators")
        self.alphabet = alphabet
        self.rank = [0] * len(alphabet)
        for pos, gid in enumerate(ranked_gids):
            self.rank[gid] = pos
        self.weight = weights if weights is not None else [1] * len(alphabet)

    def word_key(self, word):
        w = self.weight
        r = self.rank
        return (sum(w[g] for g in word), tuple(r[g] for g in word))

    def is_sorted(self, word) -> bool:
        r = self.rank
        return all(r[a] <= r[b] for a, b in zip(word, word[1:]))


class Presentation:
    """Alphabet + order + oriented rule set + normal-form engine."""

    def __init__(self, name, alphabet, order, vars=QV):
        self.name = name
        self.alphabet = alphabet
        self.order = order
        self.vars = vars
        self.rules1 = {}        # gid -> NcPoly
        self.rules2 = {}        # (gid, gid) -> NcPoly
        self.dropped_pairs = set()   # windowed: unruled out-of-order pairs
        self.dropped_log = []
        self.max_terms = _env_cap("QCOIDEAL_MAX_TERMS", DEFAULT_MAX_TERMS)
        self.max_steps = _env_cap("QCOIDEAL_MAX_STEPS", DEFAULT_MAX_STEPS)
        self._cache = {}

    # -- rule management ----------------------------------------------------

    def add_rule(self, lhs, rhs: NcPoly, validate=True):
        lhs = tuple(lhs)
        if validate:
            lk = self.order.word_key(lhs)
            for w in rhs.words():
                if not self.order.word_key(w) < lk:
                    raise NotOrientable(
                        "rhs word %s not smaller than lhs %s"
                        % (self.alphabet.word_str(w),
                           self.alphabet.word_str(lhs)))
        if len(lhs) == 1:
            if lhs[0] in self.rules1:
                raise BuildError("duplicate rule for %s"
                                 % self.alphabet.word_str(lhs))
            self.rules1[lhs[0]] = rhs
        elif len(lhs) == 2:
            if lhs in self.rules2:
                raise BuildError("duplicate rule for %s"
                                 % self.alphabet.word_str(lhs))
            self.rules2[lhs] = rhs
        else:
            raise NotOrientable("rule lhs must have length 1 or 2")
        self._cache.clear()

    def rule_count(self):
        return len(self.rules1) + len(self.rules2)

    # -- scalars / element helpers -------------------------------------------

    def zero(self):
        return NcPoly.zero(self.alphabet, self.vars)

    def one(self):
        return NcPoly.one(self.alphabet, self.vars)

    def gen(self, family, i, j, degree=None):
        return NcPoly.gen(self.alphabet, self.vars,
                          self.alphabet.gid(family, i, j, degree))

    def q(self, power=1):
        return LaurentPoly.var(self.vars, "q", power)

    # -- reduction ------------------------------------------------------------

    def _find_redex(self, w):
        rules1 = self.rules1
        rules2 = self.rules2
        n = len(w)
        for i in range(n):
            if w[i] in rules1:
                return i, 1
            if i + 1 < n and (w[i], w[i + 1]) in rules2:
                return i, 2
        return None

    def _expand(self, w, pos, length):
        rhs = self.rules1[w[pos]] if length == 1 else self.rules2[w[pos:pos + 2]]
        prefix = w[:pos]
        suffix = w[pos + length:]
        return [(prefix + rw + suffix, rc) for rw, rc in rhs.terms.items()]

    def _nf_word(self, w, steps):
        """Memoized full reduction of a single word (leftmost-outermost)."""
        cache = self._cache
        hit = cache.get(w)
        if hit is not None:
            return hit
        stack = [w]
        max_terms = self.max_terms
        while stack:
            cur = stack[-1]
            if cur in cache:
                stack.pop()
                continue
            red = self._find_redex(cur)
            if red is None:
                if self.dropped_pairs and any(
                        p in self.dropped_pairs
                        for p in zip(cur, cur[1:])):
                    cache[cur] = _POISON
                else:
                    nf = NcPoly(self.alphabet, self.vars)
                    nf.terms = {cur: LaurentPoly.const(self.vars, 1)}
                    cache[cur] = nf
                stack.pop()
                continue
            steps[0] += 1
            if steps[0] > self.max_steps:
                raise ResourceLimitExceeded(
                    "normal_form exceeded %d reduction steps in %s "
                    "(stuck near %s)" % (self.max_steps, self.name,
                                         self.alphabet.word_str(cur)))
            expansion = self._expand(cur, *red)
            pending = [w2 for w2, _ in expansion if w2 not in cache]
            if pending:
                stack.extend(pending)
                continue
            acc = {}
            poisoned = False
            for w2, c2 in expansion:
                child = cache[w2]
                if child is _POISON:
                    poisoned = True
                    break
                for w3, c3 in child.terms.items():
                    s = acc.get(w3)
                    s = c2 * c3 if s is None else s + c2 * c3
                    if s.is_zero():
                        acc.pop(w3, None)
                    else:
                        acc[w3] = s
                if len(acc) > max_terms:
                    raise ResourceLimitExceeded(
                        "normal_form exceeded %d terms in %s"
                        % (max_terms, self.name))
            if poisoned:
                cache[cur] = _POISON
            else:
                nf = NcPoly(self.alphabet, self.vars)
                nf.terms = acc
                cache[cur] = nf
            stack.pop()
        return cache[w]

    def normal_form(self, p: NcPoly) -> NcPoly:
        """Fixed point of exhaustive leftmost-outermost rule application."""
        if p.alphabet is not self.alphabet:
            raise ValueError("element %r not over alphabet %s"
                             % (p, self.alphabet.name))
        steps = [0]
        out = NcPoly(self.alphabet, self.vars)
        acc = {}
        for w, c in p.terms.items():
            nf = self._nf_word(w, steps)
            if nf is _POISON:
                raise WindowInsufficiency(
                    "reduction of %s needs a rule outside the window of %s"
                    % (self.alphabet.word_str(w), self.name))
            for w2, c2 in nf.terms.items():
                s = acc.get(w2)
                s = c * c2 if s is None else s + c * c2
                if s.is_zero():
                    acc.pop(w2, None)
                else:
                    acc[w2] = s
        out.terms = acc
        return out

    def normal_form2(self, p: NcPoly2) -> NcPoly2:
        """Componentwise normal form on a tensor-square element."""
        out = NcPoly2(p.alphabet, p.vars)
        steps = [0]
        acc = {}
        for (w1, w2), c in p.terms.items():
            n1 = self._nf_word(w1, steps)
            n2 = self._nf_word(w2, steps)
            if n1 is _POISON or n2 is _POISON:
                raise WindowInsufficiency("tensor reduction left the window")
            for a1, c1 in n1.terms.items():
                for a2, c2 in n2.terms.items():
                    key = (a1, a2)
                    cc = c * c1 * c2
                    s = acc.get(key)
                    s = cc if s is None else s + cc
                    if s.is_zero():
                        acc.pop(key, None)
                    else:
                        acc[key] = s
        out.terms = acc
        return out

    def is_zero(self, p: NcPoly) -> bool:
        return self.normal_form(p).is_zero()

    # -- strategy reduction (for the confluence probe) ------------------------

    def reduce_with_strategy(self, p: NcPoly, choose) -> NcPoly:
        """Reduce to a fixed point, one redex at a time, without memoization.

        ``choose(redexes)`` picks among the available (pos, len) redexes of a
        word.  Used by the probe to compare reduction strategies.
        """
        terms = dict(p.terms)
        steps = 0
        while True:
            target = None
            for w in sorted(terms, key=lambda w: (len(w), w)):
                redexes = self._all_redexes(w)
                if redexes:
                    target = (w, redexes)
                    break
            if target is None:
                out = NcPoly(self.alphabet, self.vars)
                out.terms = terms
                return out
            steps += 1
            if steps > self.max_steps:
                raise ResourceLimitExceeded(
                    "strategy reduction exceeded %d steps" % self.max_steps)
            w, redexes = target
            pos, length = choose(redexes)
            c = terms.pop(w)
            for w2, c2 in self._expand(w, pos, length):
                s = terms.get(w2)
                cc = c * c2
                s = cc if s is None else s + cc
                if s.is_zero():
                    terms.pop(w2, None)
                else:
                    terms[w2] = s
            if len(terms) > self.max_terms:
                raise ResourceLimitExceeded("strategy reduction blew up")

    def _all_redexes(self, w):
        out = []
        for i in range(len(w)):
            if w[i] in self.rules1:
                out.append((i, 1))
            if i + 1 < len(w) and (w[i], w[i + 1]) in self.rules2:
                out.append((i, 2))
        return out


# ---------------------------------------------------------------------------
# Relation derivation and orientation
# ---------------------------------------------------------------------------

def derive_relations(lhs: "tc.OperatorMatrix", rhs: "tc.OperatorMatrix"):
    """Entrywise differences of two matrices over a free algebra.

    Returns the nonzero entries of lhs - rhs as a list of NcPoly relations.
    """
    diff = lhs - rhs
    rels = []
    for key in sorted(diff.entries):
        e = diff.entries[key]
        if not e.is_zero():
            rels.append(e)
    return rels


def _monic_key(rel: NcPoly, order: GeneratorOrder):
    wmax = max(rel.terms, key=order.word_key)
    return wmax, rel.terms[wmax]


def dedupe_relations(rels, order):
    """Scale each relation monic at its maximal word; drop duplicates."""
    seen = {}
    out = []
    for rel in rels:
        if rel.is_zero():
            continue
        wmax, lead = _monic_key(rel, order)
        if lead.is_monomial():
            rel = rel.scale(lead.inverse_monomial())
        fp = frozenset((w, frozenset(c.terms.items()))
                       for w, c in rel.terms.items())
        if fp in seen:
            continue
        seen[fp] = True
        out.append(rel)
    return out


def orient(rel: NcPoly, pres: Presentation, qcentral=None):
    """Orient a relation into a rewrite rule lhs -> rhs.

    The maximal word must have length 2.  Occurrences of the maximal word
    embedded inside longer words are solved for linearly when their flanking
    letters q-commute with everything (the symplectic
    s_{ii'}-elimination pattern); the paper's spanning argument performs the
    same step.
    """
    order = pres.order
    if rel.is_zero():
        return None
    wmax = max(rel.terms, key=order.word_key)
    if len(wmax) != 2:
        raise NotOrientable(
            "maximal word %s of %s has length %d, expected 2"
            % (pres.alphabet.word_str(wmax), rel, len(wmax)))
    lead = rel.terms[wmax]
    rest = NcPoly(pres.alphabet, pres.vars)
    for w, c in rel.terms.items():
        if w == wmax:
            continue
        emb = _embedded_occurrence(w, wmax)
        if emb is None:
            rest.terms[w] = c
            continue
        lam = _flank_factor(w, wmax, emb, pres, qcentral or {})
        if lam is None:
            raise NotOrientable(
                "embedded occurrence of %s inside %s cannot be solved"
                % (pres.alphabet.word_str(wmax), pres.alphabet.word_str(w)))
        lead = lead + c * lam
    if lead.is_zero():
        raise NotOrientable("leading coefficient vanished for %s" % rel)
    rhs = NcPoly(pres.alphabet, pres.vars)
    for w, c in rest.terms.items():
        quot = (-c).divide_exact(lead)
        if quot is None:
            raise NotOrientable(
                "coefficient of %s is not divisible by the leading "
                "coefficient" % pres.alphabet.word_str(w))
        rhs.terms[w] = quot
    return wmax, rhs


def _embedded_occurrence(w, pat):
    """Index of pat inside w (w != pat), or None."""
    if len(w) <= len(pat):
        return None
    for i in range(len(w) - len(pat) + 1):
        if w[i:i + len(pat)] == pat:
            return i
    return None


def _flank_factor(w, pat, i, pres: Presentation, qcentral):
    """Scalar lam with  w = lam * pat  modulo the unit rules, assuming the
    flanks q-commute with everything.  None when not solvable."""
    left = w[:i]
    right = w[i + len(pat):]
    lam = LaurentPoly.const(pres.vars, 1)
    for g in reversed(left):
        for x in pat:
            c = qcentral.get((g, x))
            if c is None:
                return None
            lam = lam * c
    # now the word is pat + left + right; the tail must reduce to a scalar
    tail = NcPoly(pres.alphabet, pres.vars)
    tail.terms = {left + right: LaurentPoly.const(pres.vars, 1)}
    red = pres.normal_form(tail)
    if not red.is_scalar():
        return None
    return lam * red.coeff(())


def _qcentral_map(pres: Presentation, gids):
    """lam for pairs (g, x): g x = lam * x g, read off pure commutation rules."""
    out = {}
    n = len(pres.alphabet)
    for g in gids:
        for x in range(n):
            if x == g:
                out[(g, x)] = LaurentPoly.const(pres.vars, 1)
                continue
            r = pres.rules2.get((g, x))
            if r is not None and len(r.terms) == 1 and (x, g) in r.terms:
                out[(g, x)] = r.terms[(x, g)]
                continue
            r = pres.rules2.get((x, g))
            if r is not None and len(r.terms) == 1 and (g, x) in r.terms:
                out[(g, x)] = r.terms[(g, x)].inverse_monomial()
    return out


def _install_relations(pres: Presentation, rels, qcentral_gids=()):
    """Reduce, orient and add each relation, smallest leading word first."""
    rels = dedupe_relations(rels, pres.order)
    rels.sort(key=lambda r: pres.order.word_key(
        max(r.terms, key=pres.order.word_key)))
    for rel in rels:
        red = pres.normal_form(rel)
        if red.is_zero():
            continue
        qc = _qcentral_map(pres, qcentral_gids) if qcentral_gids else None
        lhs, rhs = orient(red, pres, qc)
        pres.add_rule(lhs, rhs)


def _coverage_check(pres: Presentation, windowed: bool):
    """Every out-of-order pair must be reducible; else error or window log."""
    n = len(pres.alphabet)
    rank = pres.order.rank
    for a in range(n):
        for b in range(n):
            if rank[a] <= rank[b]:
                continue
            if a in pres.rules1 or b in pres.rules1:
                continue
            if (a, b) in pres.rules2:
                continue
            if windowed:
                pres.dropped_pairs.add((a, b))
            else:
                raise BuildError(
                    "no rule for out-of-order pair %s %s in %s"
                    % (pres.alphabet.sym(a), pres.alphabet.sym(b), pres.name))


# ---------------------------------------------------------------------------
# Concrete presentations
# ---------------------------------------------------------------------------

def _uqgl_order(alphabet: Alphabet, N: int) -> GeneratorOrder:
    """Triangular order: strictly lower t's, interleaved diagonal unit pairs,
    strictly upper tb's.

    Sorting a word drags every t_ii next to its inverse tb_ii so the unit
    rules can cancel them; with the t-block-then-tb-block order the pair gets
    separated by intermediate letters and exhaustive reduction is provably
    strategy-dependent.
    """
    ranked = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i > j:
                ranked.append(alphabet.gid("t", i, j))
    for i in range(1, N + 1):
        ranked.append(alphabet.gid("t", i, i))
        ranked.append(alphabet.gid("tb", i, i))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i < j:
                ranked.append(alphabet.gid("tb", i, j))
    return GeneratorOrder(alphabet, ranked)


def build_uqgl(N: int, vars=QV) -> Presentation:
    """U_q(gl_N) in the RTT presentation, rules derived from the three
    matrix relations plus the diagonal unit pairs."""
    alphabet = uqgl_alphabet(N)
    pres = Presentation("uqgl:%d" % N, alphabet, _uqgl_order(alphabet, N),
                        vars)
    one = LaurentPoly.const(vars, 1)
    for i in range(1, N + 1):
        t = alphabet.gid("t", i, i)
        tb = alphabet.gid("tb", i, i)
        unit = NcPoly(alphabet, vars, {(): one})
        pres.add_rule((t, tb), unit)
        pres.add_rule((tb, t), unit)
    T = tc.t_matrix(pres, "t")
    Tb = tc.t_matrix(pres, "tb")
    R = tc.r_const(N, "R", vars).lift(alphabet, vars)
    rels = []
    for A, B in ((T, T), (Tb, Tb), (Tb, T)):
        lhs = R @ A.factor(1, 2) @ B.factor(2, 2)
        rhs = B.factor(2, 2) @ A.factor(1, 2) @ R
        rels.extend(derive_relations(lhs, rhs))
    _install_relations(pres, rels)
    _coverage_check(pres, windowed=False)
    return pres


def build_tworth(N: int, vars=QV) -> Presentation:
    """Abstract twisted orthogonal algebra: generators s_ij (i > j), rules
    from the reflection equation with s_ii = 1 and s_{i<j} = 0 substituted."""
    alphabet = tworth_alphabet(N)
    ranked = [alphabet.gid("s", i, j)
              for i in range(1, N + 1) for j in range(1, N + 1) if i > j]
    pres = Presentation("tworth:%d" % N, alphabet,
                        GeneratorOrder(alphabet, ranked), vars)
    S = tc.s_matrix_abstract(pres, "orth", N)
    rels = _reflection_relations(pres, S, N)
    _install_relations(pres, rels)
    _coverage_check(pres, windowed=False)
    return pres


def _reflection_relations(pres, S, N):
    R = tc.r_const(N, "R", pres.vars).lift(pres.alphabet, pres.vars)
    Rt = tc.r_const(N, "Rt", pres.vars).lift(pres.alphabet, pres.vars)
    S1 = S.factor(1, 2)
    S2 = S.factor(2, 2)
    return derive_relations(R @ S1 @ Rt @ S2, S2 @ Rt @ S1 @ R)


def _twsympl_order(alphabet, N, prime):
    """Block order of the symplectic spanning lemmas; the eliminated s_{i'i}
    letters are ranked above everything and carry a heavy grading weight so
    the elimination rule orients."""
    ranked = []
    eliminated = []
    for i in range(1, N + 1, 2):
        ip = i + 1
        for j in range(1, i + 1):
            ranked.append(alphabet.gid("s", i, j))
        ranked.append(alphabet.gid("s", i, ip))
        ranked.append(alphabet.gid("si", i, ip))
        if prime:
            for j in range(1, ip):
                ranked.append(alphabet.gid("s", ip, j))
            ranked.append(alphabet.gid("s", ip, ip))
        else:
            ranked.append(alphabet.gid("s", ip, ip))
            for j in range(1, ip - 1):
                ranked.append(alphabet.gid("s", ip, j))
            eliminated.append(alphabet.gid("s", ip, i))
    ranked.extend(eliminated)
    weights = [1] * len(alphabet)
    for i in range(1, N + 1, 2):
        weights[alphabet.gid("si", i, i + 1)] = -1
        if not prime:
            weights[alphabet.gid("s", i + 1, i)] = 4
    return GeneratorOrder(alphabet, ranked, weights)


def build_twsympl(N: int, vars=QV, prime=False) -> Presentation:
    """Abstract twisted symplectic algebra.

    With ``prime`` the quotient relation (the q-determinant-like central
    element set to q^3) is omitted: that is the algebra the centrality test
    runs in.  Without it, the relation enters through the elimination rule
    for s_{i'i} and the PBW monomials avoid that generator.
    """
    alphabet = twsympl_alphabet(N)
    name = "twsymplprime:%d" % N if prime else "twsympl:%d" % N
    pres = Presentation(name, alphabet, _twsympl_order(alphabet, N, prime),
                        vars)
    one = LaurentPoly.const(vars, 1)
    q = LaurentPoly.var(vars, "q")
    for i in range(1, N + 1, 2):
        s = alphabet.gid("s", i, i + 1)
        si = alphabet.gid("si", i, i + 1)
        unit = NcPoly(alphabet, vars, {(): one})
        pres.add_rule((s, si), unit)
        pres.add_rule((si, s), unit)
    if not prime:
        # s_{i'i} -> q^{-2} s_{i'i'} s_{ii} s_{ii'}^{-1} - q s_{ii'}^{-1},
        # solved from the central identity s_{i'i'} s_{ii} - q^2 s_{i'i}
        # s_{ii'} = q^3
        for i in range(1, N + 1, 2):
            ip = i + 1
            rhs = NcPoly(alphabet, vars, {
                (alphabet.gid("s", ip, ip), alphabet.gid("s", i, i),
                 alphabet.gid("si", i, ip)): LaurentPoly.var(vars, "q", -2),
                (alphabet.gid("si", i, ip),): -q,
            })
            pres.add_rule((alphabet.gid("s", ip, i),), rhs)
    S = tc.s_matrix_abstract(pres, "sympl", N)
    rels = _reflection_relations(pres, S, N)
    sinv_rels = _sympl_sinv_relations(pres, rels, N)
    qcentral_gids = tuple(alphabet.gid("s", i, i + 1)
                          for i in range(1, N + 1, 2)) + tuple(
        alphabet.gid("si", i, i + 1) for i in range(1, N + 1, 2))
    _install_relations(pres, rels + sinv_rels, qcentral_gids=qcentral_gids)
    _coverage_check(pres, windowed=False)
    return pres


def _sympl_sinv_relations(pres, rels, N):
    """Commutation relations for the inverse generators.

    s_{ii'} q-commutes with every generator (a consequence of the reflection
    relations); each pure commutation s_{ii'} x = lam x s_{ii'} found in the
    raw relation list is inverted into x s_{ii'}^{-1} = lam s_{ii'}^{-1} x.
    """
    alphabet = pres.alphabet
    vars = pres.vars
    out = []
    special = [(alphabet.gid("s", i, i + 1), alphabet.gid("si", i, i + 1))
               for i in range(1, N + 1, 2)]
    lam_map = {}
    for rel in dedupe_relations(rels, pres.order):
        if len(rel.terms) != 2:
            continue
        (w1, c1), (w2, c2) = rel.terms.items()
        if len(w1) != 2 or len(w2) != 2 or set(w1) != set(w2) or w1 == w2:
            continue
        for s, _si in special:
            if s in w1:
                x = w1[0] if w1[1] == s else w1[1]
                if x == s:
                    continue
                # c1 * w1 + c2 * w2 = 0 with w1 = (s, x), w2 = (x, s)
                if w1 == (s, x):
                    lam = (-c2).divide_exact(c1)
                    lam = None if lam is None else lam.inverse_monomial() \
                        if False else lam
                    # s x = (-c2/c1)^{-1}?  solve: c1 s x + c2 x s = 0
                    lam = (-c2) if False else None
                # solve uniformly below
        for s, _si in special:
            for a, b in ((w1, w2), (w2, w1)):
                if a[0] == s and a[1] != s and b == (a[1], s):
                    ca = rel.terms[a]
                    cb = rel.terms[b]
                    if not ca.is_monomial():
                        continue
                    lam = (-cb) * ca.inverse_monomial()
                    lam_map[(s, a[1])] = lam
    for (s, x), lam in sorted(lam_map.items()):
        si = dict(special)[s]
        if not lam.is_monomial():
            raise BuildError("s_{ii'} commutation with %s is not monomial"
                             % alphabet.sym(x))
        # s x = lam^{-1} x s  (from lam_map convention below)
        # lam_map stores lam with s x = lam x s
        rel = NcPoly(alphabet, vars, {
            (x, si): LaurentPoly.const(vars, 1),
            (si, x): -lam,
        })
        out.append(rel)
    # inverse-vs-inverse commutations: si_i si_j = lam si_j si_i when
    # s_i s_j = lam s_j s_i
    for (s1, si1) in special:
        for (s2, si2) in special:
            if s1 == s2:
                continue
            lam = lam_map.get((s1, s2))
            if lam is None:
                continue
            out.append(NcPoly(alphabet, vars, {
                (si1, si2): LaurentPoly.const(vars, 1),
                (si2, si1): -lam,
            }))
            # mixed: s1 si2 = lam^{-1} si2 s1
            out.append(NcPoly(alphabet, vars, {
                (s1, si2): LaurentPoly.const(vars, 1),
                (si2, s1): -lam.inverse_monomial(),
            }))
    return out


def _uqglhat_order(alphabet, N, window):
    ranked = []
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i > j:
                ranked.append(alphabet.gid("t", i, j, 0))
    for i in range(1, N + 1):
        ranked.append(alphabet.gid("t", i, i, 0))
        ranked.append(alphabet.gid("tb", i, i, 0))
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i < j:
                ranked.append(alphabet.gid("tb", i, j, 0))
    for r in range(1, window + 1):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                ranked.append(alphabet.gid("t", i, j, r))
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                ranked.append(alphabet.gid("tb", i, j, r))
    weights = []
    for s in alphabet.syms:
        weights.append(1 + s.degree)
    return GeneratorOrder(alphabet, ranked, weights)


def build_uqglhat(N: int, window: int, vars=QV) -> Presentation:
    """Degree-windowed quantum affine host.

    Relations are derived with one virtual degree (window + 1) so that every
    coefficient whose completeness depends on dropped generators is detected
    and logged instead of silently kept.  Out-of-order pairs left without a
    rule are recorded; reductions that get stuck on one raise
    WindowInsufficiency.
    """
    padded = uqglhat_alphabet(N, window + 1)
    alphabet = uqglhat_alphabet(N, window)
    pres = Presentation("uqglhat:%d:%d" % (N, window), alphabet,
                        _uqglhat_order(alphabet, N, window), vars)
    one = LaurentPoly.const(vars, 1)
    for i in range(1, N + 1):
        t = alphabet.gid("t", i, i, 0)
        tb = alphabet.gid("tb", i, i, 0)
        unit = NcPoly(alphabet, vars, {(): one})
        pres.add_rule((t, tb), unit)
        pres.add_rule((tb, t), unit)

    scratch = Presentation("scratch", padded,
                           _uqglhat_order(padded, N, window + 1), vars)
    Rm = tc.r_const(N, "R", vars).lift(padded, vars)
    Rt = tc.r_const(N, "Rtilde", vars).lift(padded, vars)

    def tmat(fam, r):
        return tc.t_matrix_affine(scratch, fam, r)

    rels_padded = []
    D = window + 1
    for a in range(0, D + 1):
        for b in range(-1, D + 1):
            # coefficient of u^{1-a} v^{-b} in R(u,v) T1(u) T2(v) = flip
            lhs = Rt @ tmat("t", a).factor(1, 2) @ tmat("t", b).factor(2, 2) \
                - Rm @ tmat("t", a - 1).factor(1, 2) \
                @ tmat("t", b + 1).factor(2, 2)
            rhs = tmat("t", b).factor(2, 2) @ tmat("t", a).factor(1, 2) @ Rt \
                - tmat("t", b + 1).factor(2, 2) \
                @ tmat("t", a - 1).factor(1, 2) @ Rm
            rels_padded.extend(derive_relations(lhs, rhs))
    for a in range(-1, D + 1):
        for b in range(-1, D + 1):
            lhs = Rt @ tmat("tb", a).factor(1, 2) \
                @ tmat("tb", b + 1).factor(2, 2) \
                - Rm @ tmat("tb", a + 1).factor(1, 2) \
                @ tmat("tb", b).factor(2, 2)
            rhs = tmat("tb", b + 1).factor(2, 2) \
                @ tmat("tb", a).factor(1, 2) @ Rt \
                - tmat("tb", b).factor(2, 2) \
                @ tmat("tb", a + 1).factor(1, 2) @ Rm
            rels_padded.extend(derive_relations(lhs, rhs))
    for p in range(-1, D + 1):
        for k in range(-1, D + 1):
            lhs = Rt @ tmat("tb", p).factor(1, 2) @ tmat("t", k).factor(2, 2) \
                - Rm @ tmat("tb", p + 1).factor(1, 2) \
                @ tmat("t", k + 1).factor(2, 2)
            rhs = tmat("t", k).factor(2, 2) @ tmat("tb", p).factor(1, 2) @ Rt \
                - tmat("t", k + 1).factor(2, 2) \
                @ tmat("tb", p + 1).factor(1, 2) @ Rm
            rels_padded.extend(derive_relations(lhs, rhs))

    kept = []
    for rel in rels_padded:
        if any(padded.sym(g).degree > window
               for w in rel.words() for g in w):
            pres.dropped_log.append(
                "dropped relation touching degree > %d: %s"
                % (window, rel))
            continue
        kept.append(_transplant(rel, alphabet, vars))
    _install_relations(pres, kept)
    _coverage_check(pres, windowed=True)
    return pres


def _transplant(p: NcPoly, alphabet: Alphabet, vars) -> NcPoly:
    """Rebuild an NcPoly over another alphabet containing the same symbols."""
    out = NcPoly(alphabet, vars)
    for w, c in p.terms.items():
        nw = tuple(alphabet.ids[p.alphabet.syms[g].key()] for g in w)
        out.terms[nw] = c
    return out


# ---------------------------------------------------------------------------
# Registry / naming
# ---------------------------------------------------------------------------

_REGISTRY = {}


def presentation(name: str, vars=QV) -> Presentation:
    """Presentation by CLI-style name: uqgl:N, tworth:N, twsympl:N,
    twsymplprime:N, uqglhat:N:D."""
    key = (name, vars.names)
    if key in _REGISTRY:
        return _REGISTRY[key]
    parts = name.split(":")
    kind = parts[0]
    if kind == "uqgl":
        pres = build_uqgl(int(parts[1]), vars)
    elif kind == "tworth":
        pres = build_tworth(int(parts[1]), vars)
    elif kind == "twsympl":
        pres = build_twsympl(int(parts[1]), vars)
    elif kind == "twsymplprime":
        pres = build_twsympl(int(parts[1]), vars, prime=True)
    elif kind == "uqglhat":
        pres = build_uqglhat(int(parts[1]), int(parts[2]), vars)
    else:
        raise KeyError("unknown presentation %r" % name)
    _REGISTRY[key] = pres
    return pres


def build_presentation(kind: str, N: int, window=None, vars=QV):
    if kind == "UqglN":
        return presentation("uqgl:%d" % N, vars)
    if kind == "TwOrth":
        return presentation("tworth:%d" % N, vars)
    if kind == "TwSympl":
        return presentation("twsympl:%d" % N, vars)
    if kind == "UqglHatWindow":
        return presentation("uqglhat:%d:%d" % (N, window), vars)
    raise KeyError("unknown presentation kind %r" % kind)


# ---------------------------------------------------------------------------
# Confluence probe and PBW rank
# ---------------------------------------------------------------------------

def confluence_probe(pres: Presentation, max_len: int, trials: int,
                     seed: int):
    """Reduce random words under leftmost, rightmost and seeded
    random-position strategies plus the memoized engine; report the first
    disagreement.

    Returns (passed, checked, witness).
    """
    rng = random.Random(seed)
    n = len(pres.alphabet)
    for trial in range(trials):
        length = rng.randint(0, max_len)
        word = tuple(rng.randrange(n) for _ in range(length))
        p = NcPoly(pres.alphabet, pres.vars,
                   {word: LaurentPoly.const(pres.vars, 1)})
        try:
            results = [
                pres.reduce_with_strategy(p, lambda rs: rs[0]),
                pres.reduce_with_strategy(p, lambda rs: rs[-1]),
            ]
            rng2 = random.Random(seed * 1_000_003 + trial)
            results.append(
                pres.reduce_with_strategy(
                    p, lambda rs: rs[rng2.randrange(len(rs))]))
            results.append(pres.normal_form(p))
        except WindowInsufficiency:
            continue
        base = results[0]
        for other in results[1:]:
            if other != base:
                return False, trial + 1, pres.alphabet.word_str(word)
    return True, trials, None


def ordered_monomials(pres: Presentation, gids, max_degree: int):
    """All rank-nondecreasing words in the given generators with length
    (weighted by nothing, plain length) up to max_degree."""
    gids = sorted(gids, key=lambda g: pres.order.rank[g])
    out = [()]
    def extend(prefix, start, remaining):
        if remaining == 0:
            return
        for idx in range(start, len(gids)):
            w = prefix + (gids[idx],)
            out.append(w)
            extend(w, idx, remaining - 1)
    extend((), 0, max_degree)
    return out


def independence_rank(monomials, embed, host: Presentation) -> int:
    """Rank of the host images of abstract monomials.

    ``embed``: gid-in-abstract -> NcPoly over the host.  Images are reduced
    to host normal form; the coefficient matrix over Q(q) is ranked by
    fraction-free elimination.
    """
    rows = []
    for word in monomials:
        img = host.one()
        for g in word:
            img = img * embed(g)
            img = host.normal_form(img)
        rows.append(host.normal_form(img))
    cols = sorted({w for r in rows for w in r.terms},
                  key=lambda w: (len(w), w))
    col_index = {w: i for i, w in enumerate(cols)}
    matrix = []
    for r in rows:
        row = {col_index[w]: c for w, c in r.terms.items()}
        matrix.append(row)
    return laurent_matrix_rank(matrix, len(cols), host.vars)


def laurent_matrix_rank(rows, ncols: int, vars: VarTable) -> int:
    """Fraction-free Gaussian elimination over Q(q, ...): rank of a sparse
    matrix given as a list of {col: LaurentPoly} rows."""
    rows = [dict(r) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = None
        for idx, r in enumerate(rows):
            if col in r and not r[col].is_zero():
                piv = idx
                break
        if piv is None:
            continue
        pivot_row = rows.pop(piv)
        pv = pivot_row[col]
        rank += 1
        new_rows = []
        for r in rows:
            c = r.get(col)
            if c is None or c.is_zero():
                new_rows.append(r)
                continue
            nr = {}
            for k in set(r) | set(pivot_row):
                val = r.get(k, LaurentPoly(vars)) * pv \
                    - pivot_row.get(k, LaurentPoly(vars)) * c
                if not val.is_zero():
                    nr[k] = val
            new_rows.append(nr)
        rows = [r for r in new_rows if r]
    return rank
