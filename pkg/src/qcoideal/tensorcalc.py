"""Operator calculus on (C^N)^{(x) r}: R-matrices, permutation operators,
q-antisymmetrizers, partial transposes and factor embeddings.

An :class:`OperatorMatrix` is a sparse square matrix whose rows and columns
are r-tuples over 1..N and whose entries live in any ring implementing
``+``, ``-``, ``*`` and ``is_zero`` (LaurentPoly or NcPoly here).  Matrix
products multiply entries left-to-right, so matrices over a noncommutative
ring behave correctly.
"""

from __future__ import annotations

import itertools
from math import factorial

from .scalars import QV, QUVV, LaurentPoly, VarTable
from .freealg import NcPoly, primed
from .report import VerificationReport


class OperatorMatrix:
    __slots__ = ("N", "r", "entries")

    def __init__(self, N: int, r: int, entries=None):
        self.N = N
        self.r = r
        self.entries = {}
        if entries:
            for k, v in entries.items():
                if not v.is_zero():
                    self.entries[k] = v

    def shape_check(self, other):
        if self.N != other.N or self.r != other.r:
            raise ValueError("operator dimension mismatch: %d^%d vs %d^%d"
                             % (self.N, self.r, other.N, other.r))

    def indices(self):
        return itertools.product(range(1, self.N + 1), repeat=self.r)

    def get(self, row, col):
        return self.entries.get((tuple(row), tuple(col)))

    def set(self, row, col, value):
        key = (tuple(row), tuple(col))
        if value.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = value

    def add_to(self, row, col, value):
        key = (tuple(row), tuple(col))
        cur = self.entries.get(key)
        s = value if cur is None else cur + value
        if s.is_zero():
            self.entries.pop(key, None)
        else:
            self.entries[key] = s

    def __add__(self, other):
        self.shape_check(other)
        out = OperatorMatrix(self.N, self.r, dict(self.entries))
        for k, v in other.entries.items():
            out.add_to(k[0], k[1], v)
        return out

    def __neg__(self):
        return OperatorMatrix(self.N, self.r,
                              {k: -v for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        self.shape_check(other)
        by_row = {}
        for (r2, c2), v2 in other.entries.items():
            by_row.setdefault(r2, []).append((c2, v2))
        out = OperatorMatrix(self.N, self.r)
        for (r1, c1), v1 in self.entries.items():
            for c2, v2 in by_row.get(c1, ()):
                out.add_to(r1, c2, v1 * v2)
        return out

    def scale(self, c):
        return OperatorMatrix(self.N, self.r,
                              {k: v * c for k, v in self.entries.items()})

    def map(self, fn):
        out = OperatorMatrix(self.N, self.r)
        for (row, col), v in self.entries.items():
            out.set(row, col, fn(v))
        return out

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        return (self.N, self.r) == (other.N, other.r) \
            and self.entries == other.entries

    def first_difference(self, other):
        keys = sorted(set(self.entries) | set(other.entries))
        for k in keys:
            a = self.entries.get(k)
            b = other.entries.get(k)
            if a is None or b is None or not (a - b).is_zero():
                return k, a, b
        return None

    def lift(self, alphabet, vars) -> "OperatorMatrix":
        """Wrap scalar entries as scalar NcPolys over the given alphabet."""
        out = OperatorMatrix(self.N, self.r)
        for (row, col), v in self.entries.items():
            out.set(row, col, NcPoly.scalar(alphabet, vars, v))
        return out

    def factor(self, position: int, r: int) -> "OperatorMatrix":
        """Embed a 1-factor (N x N) matrix at the given tensor position."""
        if self.r != 1:
            raise ValueError("factor() expects a 1-factor matrix")
        return embed(self, (position,), r)

    def transpose(self) -> "OperatorMatrix":
        out = OperatorMatrix(self.N, self.r)
        for (row, col), v in self.entries.items():
            out.set(col, row, v)
        return out


def identity(N: int, r: int, vars=QV, one=None) -> OperatorMatrix:
    one = one if one is not None else LaurentPoly.const(vars, 1)
    out = OperatorMatrix(N, r)
    for idx in out.indices():
        out.set(idx, idx, one)
    return out


def embed(M: OperatorMatrix, positions, r: int) -> OperatorMatrix:
    """Kronecker-style embedding of an f-factor operator at the given
    positions of an r-factor space, identity elsewhere."""
    positions = tuple(positions)
    if len(positions) != M.r:
        raise ValueError("need %d positions, got %d" % (M.r, len(positions)))
    if len(set(positions)) != len(positions):
        raise ValueError("positions must be distinct")
    if any(p < 1 or p > r for p in positions):
        raise ValueError("positions out of range for %d factors" % r)
    N = M.N
    rest = [p for p in range(1, r + 1) if p not in positions]
    out = OperatorMatrix(N, r)
    for (mrow, mcol), v in M.entries.items():
        for filler in itertools.product(range(1, N + 1), repeat=len(rest)):
            row = [0] * r
            col = [0] * r
            for p, a in zip(positions, mrow):
                row[p - 1] = a
            for p, a in zip(positions, mcol):
                col[p - 1] = a
            for p, a in zip(rest, filler):
                row[p - 1] = a
                col[p - 1] = a
            out.set(tuple(row), tuple(col), v)
    return out


def partial_transpose(M: OperatorMatrix, factor: int) -> OperatorMatrix:
    """Swap the chosen factor's index between row and column tuples."""
    if factor < 1 or factor > M.r:
        raise ValueError("factor %d out of range" % factor)
    out = OperatorMatrix(M.N, M.r)
    f = factor - 1
    for (row, col), v in M.entries.items():
        nrow = row[:f] + (col[f],) + row[f + 1:]
        ncol = col[:f] + (row[f],) + col[f + 1:]
        out.set(nrow, ncol, v)
    return out


# ---------------------------------------------------------------------------
# Constant and spectral R-matrices
# ---------------------------------------------------------------------------

def r_const(N: int, variant: str, vars=QV) -> OperatorMatrix:
    """The constant operators: R, Rtilde, P, Q, Pq on two factors, and the
    N x N matrix G (N even) on one factor.  Rt / Rtildet are the partial
    transposes in the first factor."""
    if N < 1:
        raise ValueError("N must be positive")
    q = LaurentPoly.var(vars, "q")
    qi = LaurentPoly.var(vars, "q", -1)
    one = LaurentPoly.const(vars, 1)
    if variant == "G":
        if N % 2 != 0:
            raise ValueError("G needs even N")
        out = OperatorMatrix(N, 1)
        for k in range(1, N // 2 + 1):
            out.set((2 * k - 1,), (2 * k,), q)
            out.add_to((2 * k,), (2 * k - 1,), -one)
        return out
    if variant in ("Rt", "Rtildet"):
        return partial_transpose(
            r_const(N, "R" if variant == "Rt" else "Rtilde", vars), 1)
    out = OperatorMatrix(N, 2)
    if variant == "R":
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                out.set((i, j), (i, j), q if i == j else one)
        for i in range(1, N + 1):
            for j in range(i + 1, N + 1):
                out.add_to((i, j), (j, i), q - qi)
    elif variant == "Rtilde":
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                out.set((i, j), (i, j), qi if i == j else one)
        for i in range(1, N + 1):
            for j in range(1, i):
                out.add_to((i, j), (j, i), qi - q)
    elif variant == "P":
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                out.set((i, j), (j, i), one)
    elif variant == "Q":
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                out.set((i, i), (j, j), one)
    elif variant == "Pq":
        for i in range(1, N + 1):
            out.set((i, i), (i, i), one)
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                if i > j:
                    out.set((i, j), (j, i), q)
                elif i < j:
                    out.set((i, j), (j, i), qi)
    else:
        raise ValueError("unknown variant %r" % variant)
    return out


def r_spectral(N: int, vars=QUVV, unames=("u", "v")) -> OperatorMatrix:
    """Trigonometric R-matrix R(u, v); satisfies R(u,v) = u Rtilde - v R."""
    un, vn = unames
    u = LaurentPoly.var(vars, un)
    v = LaurentPoly.var(vars, vn)
    q = LaurentPoly.var(vars, "q")
    qi = LaurentPoly.var(vars, "q", -1)
    out = OperatorMatrix(N, 2)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            out.set((i, j), (i, j), qi * u - q * v if i == j else u - v)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if i > j:
                out.add_to((i, j), (j, i), (qi - q) * u)
            elif i < j:
                out.add_to((i, j), (j, i), (qi - q) * v)
    return out


def r_spectral_at(N: int, vars: VarTable, arg1, arg2) -> OperatorMatrix:
    """R(u, v) with the formal arguments replaced by Laurent monomials."""
    base = r_spectral(N, _uv_scratch(vars))
    return _subst_uv(base, vars, arg1, arg2)


def _uv_scratch(vars: VarTable) -> VarTable:
    return VarTable(vars.names + ("@u", "@v"))


def _subst_uv(M: OperatorMatrix, vars: VarTable, arg1, arg2):
    scratch = _uv_scratch(vars)
    e1 = arg1.project(scratch) if isinstance(arg1, LaurentPoly) else arg1
    e2 = arg2.project(scratch) if isinstance(arg2, LaurentPoly) else arg2
    if not (e1.is_monomial() and e2.is_monomial()):
        raise ValueError("spectral substitution needs monomial arguments")
    (x1, c1), = e1.terms.items()
    (x2, c2), = e2.terms.items()
    out = OperatorMatrix(M.N, M.r)
    for (row, col), v in M.entries.items():
        w = v.subst("@u", c1, x1).subst("@v", c2, x2)
        out.set(row, col, w.project(vars))
    return out


def q_permutation_word(sigma):
    """Canonical reduced decomposition of a permutation (tuple of images of
    1..r) as adjacent transposition indices, via bubble sort."""
    arr = list(sigma)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(arr) - 1):
            if arr[i] > arr[i + 1]:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
                word.append(i + 1)
                changed = True
    return tuple(reversed(word))


def q_permutation_op(N: int, r: int, sigma, vars=QV) -> OperatorMatrix:
    """P^q_sigma built from the canonical reduced decomposition."""
    out = identity(N, r, vars)
    pq = r_const(N, "Pq", vars)
    for i in q_permutation_word(sigma):
        out = out @ embed(pq, (i, i + 1), r)
    return out


def q_antisymmetrizer(N: int, r: int, vars=QV) -> OperatorMatrix:
    """Signed sum of q-permutation operators over the symmetric group."""
    if r < 1:
        raise ValueError("r must be >= 1")
    out = OperatorMatrix(N, r)
    for sigma in itertools.permutations(range(1, r + 1)):
        length = len(q_permutation_word(sigma))
        sign = -1 if length % 2 else 1
        term = q_permutation_op(N, r, sigma, vars)
        out = out + term.scale(LaurentPoly.const(vars, sign))
    return out


def perm_length(sigma) -> int:
    return sum(1 for i in range(len(sigma)) for j in range(i + 1, len(sigma))
               if sigma[i] > sigma[j])


# ---------------------------------------------------------------------------
# Matrices of algebra generators (used by the presentation builders)
# ---------------------------------------------------------------------------

def t_matrix(pres, family: str) -> OperatorMatrix:
    """N x N matrix of the host generators, declared zeros omitted."""
    N = _alphabet_N(pres.alphabet)
    out = OperatorMatrix(N, 1)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            try:
                g = pres.alphabet.gid(family, i, j)
            except KeyError:
                continue
            out.set((i,), (j,), NcPoly.gen(pres.alphabet, pres.vars, g))
    return out


def t_matrix_affine(pres, family: str, degree: int) -> OperatorMatrix:
    N = _alphabet_N(pres.alphabet)
    out = OperatorMatrix(N, 1)
    if degree < 0:
        return out
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            try:
                g = pres.alphabet.gid(family, i, j, degree)
            except KeyError:
                continue
            out.set((i,), (j,), NcPoly.gen(pres.alphabet, pres.vars, g))
    return out


def s_matrix_abstract(pres, case: str, N: int) -> OperatorMatrix:
    """Generic reflection-equation matrix over the abstract alphabet: the
    declared zero entries are omitted, the orthogonal diagonal is 1."""
    out = OperatorMatrix(N, 1)
    one = NcPoly.one(pres.alphabet, pres.vars)
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            if case == "orth":
                if i == j:
                    out.set((i,), (j,), one)
                elif i > j:
                    out.set((i,), (j,), pres.gen("s", i, j))
            else:
                if i >= j or (i % 2 == 1 and j == primed(i)):
                    out.set((i,), (j,), pres.gen("s", i, j))
    return out


def _alphabet_N(alphabet) -> int:
    return max(s.i for s in alphabet.syms)


# ---------------------------------------------------------------------------
# The scalar-level identity suite
# ---------------------------------------------------------------------------

def verify_tensor_identities(N: int, gcases=True) -> VerificationReport:
    """Exact entrywise checks of every constant and spectral R-matrix
    identity the construction relies on."""
    rep = VerificationReport("tensor", {"N": N})
    vars = QV
    q = LaurentPoly.var(vars, "q")
    qi = LaurentPoly.var(vars, "q", -1)
    one = LaurentPoly.const(vars, 1)
    R = r_const(N, "R")
    Rt = r_const(N, "Rtilde")
    P = r_const(N, "P")
    Q = r_const(N, "Q")

    def eq(id, A, B):
        d = A.first_difference(B)
        rep.add(id, d is None,
                None if d is None else "entry %s: %s vs %s" % d)

    R12 = embed(R, (1, 2), 3)
    R13 = embed(R, (1, 3), 3)
    R23 = embed(R, (2, 3), 3)
    eq("ybe-const", R12 @ R13 @ R23, R23 @ R13 @ R12)

    uvw = VarTable(("q", "u", "v", "w"))
    Ruv = r_spectral(N, uvw, ("u", "v"))
    Ruw = r_spectral(N, uvw, ("u", "w"))
    Rvw = r_spectral(N, uvw, ("v", "w"))
    eq("ybe-spectral",
       embed(Ruv, (1, 2), 3) @ embed(Ruw, (1, 3), 3) @ embed(Rvw, (2, 3), 3),
       embed(Rvw, (2, 3), 3) @ embed(Ruw, (1, 3), 3) @ embed(Ruv, (1, 2), 3))

    eq("r-minus-rtilde", R - Rt, P.scale(q - qi))
    eq("rtilde-inverse", R @ P @ Rt @ P, identity(N, 2))

    quv = QUVV
    u = LaurentPoly.var(quv, "u")
    v = LaurentPoly.var(quv, "v")
    Rq = r_const(N, "R", quv)
    Rtq = r_const(N, "Rtilde", quv)
    eq("spectral-linear", r_spectral(N), Rtq.scale(u) - Rq.scale(v))

    eq("rrt-commute", R @ partial_transpose(R, 1),
       partial_transpose(R, 1) @ R)
    eq("p-squared", P @ P, identity(N, 2))
    eq("pq-qp-q", P @ Q, Q)
    eq("qp-q", Q @ P, Q)
    eq("q-squared", Q @ Q, Q.scale(LaurentPoly.const(vars, N)))
    eq("rtilde-q", Rt @ Q, Q.scale(qi))
    eq("q-rtilde", Q @ Rt, Q.scale(qi))

    for r in (2, 3):
        A = q_antisymmetrizer(N, r)
        lhs = identity(N, r, quv).map(lambda e: e)
        prod = identity(N, r, quv)
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                Rij = r_spectral_at(N, quv,
                                    LaurentPoly.monom(quv, 1,
                                                      quv.monomial(q=-2 * (i - 1))),
                                    LaurentPoly.monom(quv, 1,
                                                      quv.monomial(q=-2 * (j - 1))))
                prod = prod @ embed(Rij, (i, j), r)
        scal = one
        for i in range(r):
            for j in range(i + 1, r):
                scal = scal * (LaurentPoly.var(vars, "q", -2 * i)
                               - LaurentPoly.var(vars, "q", -2 * j))
        Aq = A.map(lambda e: e.project(quv))
        eq("antisymmetrizer-fusion-r%d" % r, prod,
           Aq.scale(scal.project(quv)))
        eq("antisymmetrizer-idempotent-r%d" % r, A @ A,
           A.scale(LaurentPoly.const(vars, factorial(r))))

    pq = r_const(N, "Pq")
    if N >= 1:
        b1 = embed(pq, (1, 2), 3)
        b2 = embed(pq, (2, 3), 3)
        eq("pq-braid", b1 @ b2 @ b1, b2 @ b1 @ b2)

    An = q_antisymmetrizer(N, N)
    ident = tuple(range(1, N + 1))
    entry = An.get(ident, ident)
    rep.add("antisymmetrizer-corner",
            entry is not None and entry == one,
            None if entry == one else "corner entry %s" % entry)

    if gcases and N % 2 == 0:
        G = r_const(N, "G")
        G1 = G.factor(1, 2)
        G2 = G.factor(2, 2)
        Rtt = r_const(N, "Rt")
        Rtilde_t = r_const(N, "Rtildet")
        eq("g-reflection", R @ G1 @ Rtt @ G2, G2 @ Rtt @ G1 @ R)
        eq("g-reflection-tilde-r", Rt @ G1 @ Rtt @ G2, G2 @ Rtt @ G1 @ Rt)
        eq("g-reflection-rt-tilde", R @ G1 @ Rtilde_t @ G2,
           G2 @ Rtilde_t @ G1 @ R)
        eq("g-reflection-tilde-tilde", Rt @ G1 @ Rtilde_t @ G2,
           G2 @ Rtilde_t @ G1 @ Rt)
        eq("g-q-exchange", R @ G1 @ Q @ G2, G2 @ Q @ G1 @ R)
        eq("g-rtilde-q", Rt @ G1 @ Q, (G2 @ Q).scale(-q))
        Ruv2 = r_spectral(N)
        Rt_uv = partial_transpose(
            r_spectral_at(N, QUVV,
                          LaurentPoly.var(QUVV, "u", -1),
                          LaurentPoly.var(QUVV, "v")), 1)
        Gq = G.map(lambda e: e.project(QUVV))
        G1q = Gq.factor(1, 2)
        G2q = Gq.factor(2, 2)
        eq("g-reflection-spectral",
           Ruv2 @ G1q @ Rt_uv @ G2q, G2q @ Rt_uv @ G1q @ Ruv2)
    return rep
