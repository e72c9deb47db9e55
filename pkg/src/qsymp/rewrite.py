"""
Words in the generators of U_q(gl_N) and U'_q(sp_2n), and reduction to PBW
normal form.

Both algebras are handled by one engine.  A monomial is kept internally as a
pair (letters, cartan): ``letters`` is a tuple of non-Cartan generators and
``cartan`` an exponent vector for the commuting invertible generators, which
are always parked at the right end.  Moving a Cartan generator past a letter
only costs a power of q, so the real work is sorting ``letters``.  Every
out-of-order adjacent pair is rewritten with a rule obtained by solving one
quadratic defining relation for that pair.

Cartan generators are t_ii (GL) and s_{i,i+1} for odd i (SP).  For SP, the
generator s_{i+1,i} (odd i) is not a basis letter: it is replaced on sight by
q^-2 (s_{i+1,i+1} s_ii - q^3) s_{i,i+1}^-1.
"""

import os
import random
import re
from dataclasses import dataclass
from fractions import Fraction

from .scalar import ONE, ZERO, Q, QDIFF, QScalar, as_scalar, qpow

DEFAULT_STEP_BUDGET = 10 ** 6


class RewriteError(ValueError):
    """Invalid generator, word or expression."""


class StepBudgetExceeded(RuntimeError):
    """Raised when a reduction uses more rule applications than allowed."""


def step_budget():
    raw = os.environ.get("QSYMP_STEP_BUDGET")
    if raw is None:
        return DEFAULT_STEP_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise RewriteError(f"QSYMP_STEP_BUDGET must be an integer, got {raw!r}")
    if value <= 0:
        raise RewriteError("QSYMP_STEP_BUDGET must be positive")
    return value


def _d(cond):
    return 1 if cond else 0


# ---------------------------------------------------------------------------
# generators, words, linear combinations
# ---------------------------------------------------------------------------

_KIND_NAMES = {"T": "t", "TBAR": "tb", "S": "s"}


@dataclass(frozen=True, order=True)
class Generator:
    algebra: str  # "GL" or "SP"
    kind: str     # "T", "TBAR" or "S"
    i: int
    j: int

    @property
    def name(self):
        return f"{_KIND_NAMES[self.kind]}[{self.i},{self.j}]"

    def __str__(self):
        return self.name

    def invertible(self):
        if self.algebra == "GL":
            return self.i == self.j
        return self.j == self.i + 1 and self.i % 2 == 1

    def validate(self, size):
        """``size`` is N for GL and n for SP."""
        i, j = self.i, self.j
        if self.algebra == "GL":
            if not (1 <= i <= size and 1 <= j <= size):
                raise RewriteError(f"{self} has an index outside 1..{size}")
            if self.kind == "T" and i < j:
                raise RewriteError(f"{self} is zero: t[i,j] needs i >= j")
            if self.kind == "TBAR" and i > j:
                raise RewriteError(f"{self} is zero: tb[i,j] needs i <= j")
            if self.kind not in ("T", "TBAR"):
                raise RewriteError(f"{self} is not a gl generator")
        else:
            N = 2 * size
            if self.kind != "S":
                raise RewriteError(f"{self} is not an sp generator")
            if not (1 <= i <= N and 1 <= j <= N):
                raise RewriteError(f"{self} has an index outside 1..{N}")
            if not sp_in_support(i, j):
                raise RewriteError(
                    f"{self} is zero: s[i,j] needs j <= i, or j = i+1 with i odd")


def S(i, j):
    return Generator("SP", "S", i, j)


def T(i, j):
    return Generator("GL", "T", i, j)


def TB(i, j):
    return Generator("GL", "TBAR", i, j)


def sp_in_support(i, j):
    return j <= i or (j == i + 1 and i % 2 == 1)


def sp_support(n):
    N = 2 * n
    return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if sp_in_support(i, j)]


class Word:
    """Ordered product of generator powers; adjacent equal generators merge."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors=()):
        merged = []
        for g, e in factors:
            e = int(e)
            if e == 0:
                continue
            if merged and merged[-1][0] == g:
                e += merged[-1][1]
                merged.pop()
                if e == 0:
                    continue
            merged.append((g, e))
        for g, e in merged:
            if e < 0 and not g.invertible():
                raise RewriteError(f"negative power of non-invertible {g}")
        self.factors = tuple(merged)
        self._hash = hash(self.factors)

    @classmethod
    def of(cls, *gens):
        return cls((g, 1) for g in gens)

    def __mul__(self, other):
        return Word(self.factors + other.factors)

    def __eq__(self, other):
        return isinstance(other, Word) and self.factors == other.factors

    def __hash__(self):
        return self._hash

    def __len__(self):
        return sum(abs(e) for _, e in self.factors)

    def is_empty(self):
        return not self.factors

    def sort_key(self):
        return tuple((g.kind, g.i, g.j, e) for g, e in self.factors)

    def __lt__(self, other):
        return (len(self), self.sort_key()) < (len(other), other.sort_key())

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for g, e in self.factors:
            parts.append(g.name if e == 1 else f"{g.name}^{e}")
        return "*".join(parts)

    __repr__ = __str__

    def letters(self):
        """Expand positive powers; negative powers stay as (generator, -1) items."""
        out = []
        for g, e in self.factors:
            step = 1 if e > 0 else -1
            out.extend([(g, step)] * abs(e))
        return out


class LinComb:
    """Finite linear combination of words with QScalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for w, c in terms.items():
                c = as_scalar(c)
                if c:
                    clean[w] = c
        self.terms = clean

    @classmethod
    def scalar(cls, c):
        return cls({Word(): c})

    @classmethod
    def word(cls, w, c=ONE):
        return cls({w: c})

    @classmethod
    def gen(cls, g, e=1):
        return cls({Word([(g, e)]): ONE})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        other = _as_lincomb(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out[w] + c if w in out else c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return LinComb._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LinComb._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_lincomb(other))

    def __rsub__(self, other):
        return _as_lincomb(other) - self

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return LinComb()
        return LinComb._raw({w: s * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, LinComb):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 * w2
                    s = out.get(w, ZERO) + c1 * c2
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
            return LinComb._raw(out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __pow__(self, e):
        if e < 0:
            raise RewriteError("negative powers of linear combinations are not supported")
        out = LinComb.scalar(ONE)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QScalar)):
            other = LinComb.scalar(other)
        return isinstance(other, LinComb) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def items(self):
        return sorted(self.terms.items(), key=lambda t: t[0])

    def scalar_part(self):
        return self.terms.get(Word(), ZERO)

    def is_scalar(self):
        return all(w.is_empty() for w in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            if w.is_empty():
                parts.append(f"({c})")
            elif c.is_one():
                parts.append(str(w))
            else:
                parts.append(f"({c})*{w}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [[str(w), c.to_json()] for w, c in self.items()]


def _as_lincomb(x):
    if isinstance(x, LinComb):
        return x
    return LinComb.scalar(x)


# ---------------------------------------------------------------------------
# generic normalizer
# ---------------------------------------------------------------------------

class _Normalizer:
    """Sorting engine shared by the GL and SP algebras.

    Subclasses provide: ``ncartan``, ``cartan_index(g)``, ``cartan_shift(p, g)``
    (the integer a with C_p g = q^a g C_p), ``key(g)``, ``eliminate(g)`` (an
    internal expansion or None), ``relation(y, x)`` (raw right-hand side of the
    rule y x -> ...), and ``layout(letters, cartan)``.
    """

    def __init__(self):
        self._insert_memo = {}
        self._rule_memo = {}
        self._shift_memo = {}
        self._steps = 0
        self._budget = None

    # bookkeeping --------------------------------------------------------

    def _zero_cartan(self):
        return (0,) * self.ncartan

    def _shift(self, cartan, g):
        """Exponent a with C^cartan g = q^a g C^cartan."""
        row = self._shift_memo.get(g)
        if row is None:
            row = self._shift_memo[g] = tuple(self.cartan_shift(p, g)
                                              for p in range(self.ncartan))
        return sum(c * a for c, a in zip(cartan, row))

    def _tick(self):
        self._steps += 1
        if self._budget is not None and self._steps > self._budget:
            raise StepBudgetExceeded(
                f"reduction exceeded {self._budget} rule applications; "
                "set QSYMP_STEP_BUDGET to raise the limit")

    @staticmethod
    def _acc(out, key, c):
        s = out[key] + c if key in out else c
        if s:
            out[key] = s
        else:
            del out[key]

    # raw words -> internal terms ------------------------------------------

    def expand(self, items):
        """Internal form of a product of (generator, +-1) items, unsorted letters."""
        terms = {((), self._zero_cartan()): ONE}
        for g, e in items:
            p = self.cartan_index(g)
            new = {}
            if p is not None:
                for (u, c), coef in terms.items():
                    c2 = list(c)
                    c2[p] += e
                    self._acc(new, (u, tuple(c2)), coef)
            else:
                if e != 1:
                    raise RewriteError(f"{g} is not invertible")
                elim = self.eliminate(g)
                if elim is None:
                    for (u, c), coef in terms.items():
                        self._acc(new, (u + (g,), c), coef * qpow(self._shift(c, g)))
                else:
                    for (u, c), coef in terms.items():
                        for (v, cv), c2 in elim.items():
                            k = coef * c2
                            for z in v:
                                k = k * qpow(self._shift(c, z))
                            self._acc(new, (u + v, tuple(a + b for a, b in zip(c, cv))), k)
            terms = new
        return terms

    def rule(self, y, x):
        """Internal expansion of the product y x for key(y) > key(x)."""
        r = self._rule_memo.get((y, x))
        if r is None:
            r = {}
            for coef, items in self.relation(y, x):
                for key, c in self.expand(items).items():
                    self._acc(r, key, coef * c)
            self._rule_memo[y, x] = r
        return r

    # sorting ------------------------------------------------------------

    def insert(self, u, x):
        """Normal form of (sorted letters u) * x as {(letters, cartan): coef}."""
        memo = self._insert_memo.get((u, x))
        if memo is not None:
            return memo
        if not u or self.key(u[-1]) <= self.key(x):
            out = {(u + (x,), self._zero_cartan()): ONE}
        else:
            self._tick()
            out = {}
            prefix = u[:-1]
            for (v, cv), coef in self.rule(u[-1], x).items():
                for (w, cw), c2 in self.sort_after(prefix, v).items():
                    self._acc(out, (w, tuple(a + b for a, b in zip(cw, cv))), coef * c2)
        self._insert_memo[u, x] = out
        return out

    def sort_after(self, prefix, letters):
        """Normal form of (sorted prefix) * letters."""
        terms = {(prefix, self._zero_cartan()): ONE}
        for z in letters:
            new = {}
            for (w, cw), coef in terms.items():
                k = coef * qpow(self._shift(cw, z)) if any(cw) else coef
                for (w2, c2), coef2 in self.insert(w, z).items():
                    self._acc(new, (w2, tuple(a + b for a, b in zip(c2, cw))), k * coef2)
            terms = new
        return terms

    def normalize_terms(self, terms):
        out = {}
        for (u, c), coef in terms.items():
            for (w, cw), c2 in self.sort_after((), u).items():
                self._acc(out, (w, tuple(a + b for a, b in zip(cw, c))), coef * c2)
        return out

    def normalize_word(self, word, budget=None):
        self._steps = 0
        self._budget = step_budget() if budget is None else budget
        try:
            return self.normalize_terms(self.expand(self.items_of(word)))
        finally:
            self._budget = None

    # alternative strategy: repeatedly rewrite one chosen descent ----------

    def normalize_word_local(self, word, choose="leftmost", seed=0, budget=None):
        """Rewrite one chosen descent at a time, remembering finished words.

        ``choose`` picks the descent: "leftmost", "rightmost" or "random".
        Shares only the rules with :meth:`normalize_word`; the memo lives for
        this call only.
        """
        budget = step_budget() if budget is None else budget
        rng = random.Random(seed)
        memo = {}
        steps = [0]

        def nf(u):
            hit = memo.get(u)
            if hit is not None:
                return hit
            descents = [p for p in range(len(u) - 1) if self.key(u[p]) > self.key(u[p + 1])]
            if not descents:
                out = {(u, self._zero_cartan()): ONE}
            else:
                steps[0] += 1
                if steps[0] > budget:
                    raise StepBudgetExceeded(f"local reduction exceeded {budget} steps")
                if choose == "leftmost":
                    p = descents[0]
                elif choose == "rightmost":
                    p = descents[-1]
                else:
                    p = rng.choice(descents)
                head, tail = u[:p], u[p + 2:]
                out = {}
                for (v, cv), c2 in self.rule(u[p], u[p + 1]).items():
                    k = c2
                    for z in tail:
                        k = k * qpow(self._shift(cv, z))
                    for (w, cw), c3 in nf(head + v + tail).items():
                        self._acc(out, (w, tuple(a + b for a, b in zip(cw, cv))), k * c3)
            memo[u] = out
            return out

        done = {}
        for (u, c), coef in self.expand(self.items_of(word)).items():
            for (w, cw), c2 in nf(u).items():
                self._acc(done, (w, tuple(a + b for a, b in zip(cw, c))), coef * c2)
        return done

    # output ---------------------------------------------------------------

    def to_lincomb(self, terms):
        out = {}
        for (u, c), coef in terms.items():
            factors, scale = self.layout(u, c)
            w = Word(factors)
            self._acc(out, w, coef * scale)
        return LinComb._raw(out)

    def items_of(self, word):
        items = []
        for g, e in word.letters():
            items.append((g, e))
        return items


# ---------------------------------------------------------------------------
# U'_q(sp_2n)
# ---------------------------------------------------------------------------

def sp_pbw_letters(n):
    """Non-Cartan basis letters in normal-form order."""
    out = []
    for i in range(2 * n, 0, -2):
        out += [(i, j) for j in range(1, i - 1)] + [(i, i)]
    for i in range(1, 2 * n, 2):
        out += [(i, j) for j in range(1, i + 1)]
    return out


def sp_generator_weight(i, j, n):
    """Vector a with s_{2p-1,2p} s_ij = q^{a_p} s_ij s_{2p-1,2p}."""
    def part(k, p):
        return _d(k == 2 * p - 1) - _d(k == 2 * p)
    return tuple(part(i, p) + part(j, p) for p in range(1, n + 1))


class SPNormalizer(_Normalizer):
    def __init__(self, n):
        super().__init__()
        if n < 1:
            raise RewriteError("rank n must be at least 1")
        self.n = n
        self.N = 2 * n
        self.ncartan = n
        self._order = {S(i, j): r for r, (i, j) in enumerate(sp_pbw_letters(n))}
        # letters s_{2k,2k-1} sort between s_{2k,2k-2} and s_{2k,2k} in the
        # extended ordering used only to compare, never as output letters
        self._elim = {}
        for k in range(1, n + 1):
            i = 2 * k - 1
            self._elim[S(i + 1, i)] = {
                ((S(i + 1, i + 1), S(i, i)), self._unit(k - 1, -1)): Q ** -2,
                ((), self._unit(k - 1, -1)): -Q,
            }

    def _unit(self, p, e):
        c = [0] * self.n
        c[p] = e
        return tuple(c)

    def gen(self, i, j):
        g = S(i, j)
        g.validate(self.n)
        return g

    def cartan_index(self, g):
        if g.j == g.i + 1:
            return (g.i - 1) // 2
        return None

    def cartan_shift(self, p, g):
        return sp_generator_weight(g.i, g.j, self.n)[p]

    def key(self, g):
        return self._order[g]

    def eliminate(self, g):
        return self._elim.get(g)

    def s_value(self, i, j):
        """Raw item list for s_ij, or None when the generator is zero."""
        if not (1 <= i <= self.N and 1 <= j <= self.N) or not sp_in_support(i, j):
            return None
        return S(i, j)

    def relation(self, y, x):
        """Solve the quadratic relation for y = s_ia, x = s_jb."""
        i, a, j, b = y.i, y.j, x.i, x.j
        terms = {}

        def add(coef, g1, g2):
            if not coef:
                return
            if g1 is None or g2 is None:
                return
            key = (g1, g2)
            terms[key] = terms.get(key, ZERO) + coef

        s = self.s_value
        # lhs - rhs = 0, written as sum coef * word
        add(qpow(_d(a == j) + _d(i == j)), s(i, a), s(j, b))
        add(-qpow(_d(a == b) + _d(i == b)), s(j, b), s(i, a))
        add(-QDIFF * qpow(_d(a == i)) * (_d(b < a) - _d(i < j)), s(j, a), s(i, b))
        add(-QDIFF * qpow(_d(a == b)) * _d(b < i), s(j, i), s(b, a))
        add(QDIFF * qpow(_d(i == j)) * _d(a < j), s(i, j), s(a, b))
        add(-QDIFF * QDIFF * (_d(b < a < i) - _d(a < i < j)), s(j, i), s(a, b))
        lead = terms.pop((y, x), ZERO)
        if not lead:
            raise RewriteError(f"relation for {y}*{x} does not involve the pair")
        inv = -lead.inverse()
        return [(c * inv, [(g1, 1), (g2, 1)]) for (g1, g2), c in terms.items() if c]

    def layout(self, letters, cartan):
        """Place Cartan powers at their normal-form positions."""
        scale = 0
        # the Cartan of block p sits right after the letters of row 2p-1
        out = []
        odd_start = next((idx for idx, g in enumerate(letters) if g.i % 2 == 1), len(letters))
        out.extend((g, 1) for g in letters[:odd_start])
        rest = list(letters[odd_start:])
        for p in range(self.n):
            row = 2 * p + 1
            while rest and rest[0].i == row:
                out.append((rest.pop(0), 1))
            if cartan[p]:
                # moving C^c left past the remaining letters: g C = q^{-a} C g
                for g in rest:
                    scale -= cartan[p] * self.cartan_shift(p, g)
                out.append((S(row, row + 1), cartan[p]))
        out.extend((g, 1) for g in rest)
        return out, qpow(scale)


# ---------------------------------------------------------------------------
# U_q(gl_N)
# ---------------------------------------------------------------------------

class GLNormalizer(_Normalizer):
    def __init__(self, N):
        super().__init__()
        if N < 1:
            raise RewriteError("N must be at least 1")
        self.N = N
        self.ncartan = N

    def cartan_index(self, g):
        if g.i == g.j:
            return g.i - 1
        return None

    def items_of(self, word):
        items = []
        for g, e in word.letters():
            if g.i == g.j and g.kind == "TBAR":
                items.append((T(g.i, g.i), -e))
            else:
                items.append((g, e))
        return items

    def cartan_shift(self, p, g):
        i = p + 1
        return _d(i == g.i) - _d(i == g.j)

    def key(self, g):
        if g.kind == "T":
            return (0, -g.j, -g.i)
        return (1, g.i, g.j)

    def eliminate(self, g):
        return None

    def value(self, kind, i, j):
        if not (1 <= i <= self.N and 1 <= j <= self.N):
            return None
        if kind == "T":
            return T(i, j) if i >= j else None
        if i == j:
            return T(i, i), -1
        return TB(i, j) if i < j else None

    def relation(self, y, x):
        i, a, j, b = y.i, y.j, x.i, x.j
        terms = {}

        def item(v):
            if v is None:
                return None
            if isinstance(v, tuple):
                return v
            return (v, 1)

        def add(coef, v1, v2):
            v1, v2 = item(v1), item(v2)
            if not coef or v1 is None or v2 is None:
                return
            key = (v1, v2)
            terms[key] = terms.get(key, ZERO) + coef

        kt = "T"
        if y.kind == x.kind:
            k = y.kind
            add(qpow(_d(i == j)), self.value(k, i, a), self.value(k, j, b))
            add(-qpow(_d(a == b)), self.value(k, j, b), self.value(k, i, a))
            add(-QDIFF * (_d(b < a) - _d(i < j)), self.value(k, j, a), self.value(k, i, b))
        elif y.kind == "TBAR" and x.kind == kt:
            add(qpow(_d(i == j)), self.value("TBAR", i, a), self.value("T", j, b))
            add(-qpow(_d(a == b)), self.value("T", j, b), self.value("TBAR", i, a))
            add(-QDIFF * _d(b < a), self.value("T", j, a), self.value("TBAR", i, b))
            add(QDIFF * _d(i < j), self.value("TBAR", j, a), self.value("T", i, b))
        else:
            raise RewriteError(f"no rule needed for {y}*{x}")
        lead = terms.pop(((y, 1), (x, 1)), ZERO)
        if not lead:
            raise RewriteError(f"relation for {y}*{x} does not involve the pair")
        inv = -lead.inverse()
        return [(c * inv, [v1, v2]) for (v1, v2), c in terms.items() if c]

    def layout(self, letters, cartan):
        split = next((idx for idx, g in enumerate(letters) if g.kind == "TBAR"), len(letters))
        lower, upper = letters[:split], letters[split:]
        scale = 0
        for p, c in enumerate(cartan):
            if c:
                for g in upper:
                    scale -= c * self.cartan_shift(p, g)
        factors = [(g, 1) for g in lower]
        factors += [(T(p + 1, p + 1), c) for p, c in enumerate(cartan) if c]
        factors += [(g, 1) for g in upper]
        return factors, qpow(scale)


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

_NORMALIZERS = {}


def _normalizer(algebra, size):
    key = (algebra, size)
    nz = _NORMALIZERS.get(key)
    if nz is None:
        nz = _NORMALIZERS[key] = SPNormalizer(size) if algebra == "SP" else GLNormalizer(size)
    return nz


def _validate(x, algebra, size):
    for w in x.terms:
        for g, _ in w.factors:
            if g.algebra != algebra:
                raise RewriteError(f"{g} does not belong to the {algebra} algebra")
            g.validate(size)


def normalize_sp(x, n, budget=None):
    """PBW normal form of a linear combination of U'_q(sp_2n) words."""
    x = _as_lincomb(x)
    _validate(x, "SP", n)
    nz = _normalizer("SP", n)
    out = LinComb()
    for w, c in x.terms.items():
        out = out + nz.to_lincomb(nz.normalize_word(w, budget)).scale(c)
    return out


def normalize_gl(x, N, budget=None):
    """PBW normal form of a linear combination of U_q(gl_N) words."""
    x = _as_lincomb(x)
    _validate(x, "GL", N)
    nz = _normalizer("GL", N)
    out = LinComb()
    for w, c in x.terms.items():
        out = out + nz.to_lincomb(nz.normalize_word(w, budget)).scale(c)
    return out


def normalize_local(x, algebra, size, choose="leftmost", seed=0):
    """Normal form computed by rewriting single descents (second strategy)."""
    x = _as_lincomb(x)
    _validate(x, algebra, size)
    nz = _normalizer(algebra, size)
    out = LinComb()
    for w, c in x.terms.items():
        out = out + nz.to_lincomb(nz.normalize_word_local(w, choose, seed)).scale(c)
    return out


def normalize(x, algebra, size):
    if algebra == "SP":
        return normalize_sp(x, size)
    return normalize_gl(x, size)


def sp_normal_order(n):
    """All generators of the normal form, Cartans included, in order."""
    out = []
    for i, j in sp_pbw_letters(n):
        out.append(S(i, j))
        if i % 2 == 1 and j == i:
            out.append(S(i, i + 1))
    return out


def is_normal_sp(w, n):
    """True when the word is one of the PBW basis monomials of U'_q(sp_2n)."""
    rank = {g: r for r, g in enumerate(sp_normal_order(n))}
    last = -1
    for g, e in w.factors:
        if g not in rank or (e < 0 and not g.invertible()) or rank[g] <= last:
            return False
        last = rank[g]
    return True


def is_normal_gl(w, N):
    nz = _normalizer("GL", N)
    last = None
    for g, e in w.factors:
        if g.i == g.j:
            k = (0.5, g.i, 0)
        else:
            if e < 0:
                return False
            k = nz.key(g)
            k = (0, k) if k[0] == 0 else (1, k)
            k = (k[0], k[1], 0)
        if g.i == g.j and g.kind != "T":
            return False
        if last is not None and k <= last:
            return False
        last = k
    return True


def weight_of_word(w, n):
    """Exponents (a_1..a_n): s_{2k-1,2k} w = q^{a_k} w s_{2k-1,2k}."""
    total = [0] * n
    for g, e in w.factors:
        if g.algebra != "SP":
            raise RewriteError(f"{g} is not an sp generator")
        g.validate(n)
        for p, a in enumerate(sp_generator_weight(g.i, g.j, n)):
            total[p] += a * e
    return tuple(total)


def theta(i, n):
    """s_{i+1,i+1} s_ii - q^2 s_{i+1,i} s_{i,i+1} for odd i."""
    if i % 2 != 1 or not 1 <= i <= 2 * n - 1:
        raise RewriteError(f"theta needs an odd index in 1..{2 * n - 1}, got {i}")
    return (LinComb.word(Word.of(S(i + 1, i + 1), S(i, i)))
            - LinComb.word(Word.of(S(i + 1, i), S(i, i + 1)), Q ** 2))


def random_sp_word(rng, n, max_len=5, exponents=(-1, 1, 2)):
    """Random word in the sp generators; negative exponents only on Cartans."""
    gens = [S(i, j) for i, j in sp_support(n)]
    length = rng.randint(1, max_len)
    factors = []
    for _ in range(length):
        g = rng.choice(gens)
        choices = [e for e in exponents if e > 0 or g.invertible()]
        factors.append((g, rng.choice(choices)))
    return Word(factors)


# ---------------------------------------------------------------------------
# expression parser
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(tb|t|s|e|f)\[\s*(-?\d+)\s*(?:,\s*(-?\d+)\s*)?\]|(q)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise RewriteError(f"cannot parse expression at: {text[pos:]!r}")
        num, kind, i, j, q, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif kind is not None:
            out.append(("gen", kind, int(i), None if j is None else int(j)))
        elif q is not None:
            out.append(("q",))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text, algebra, size):
        self.toks = _tokenize(text)
        self.pos = 0
        self.algebra = algebra
        self.size = size

    def peek(self):
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take_op(self, op):
        t = self.peek()
        if t is not None and t[0] == "op" and t[1] == op:
            self.pos += 1
            return True
        return False

    def parse(self):
        val = self.expr()
        if self.peek() is not None:
            raise RewriteError(f"unexpected token {self.peek()}")
        return val

    def expr(self):
        val = self.term()
        while True:
            if self.take_op("+"):
                val = val + self.term()
            elif self.take_op("-"):
                val = val - self.term()
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            if self.take_op("*"):
                val = val * self.unary()
            elif self.take_op("/"):
                d = self.unary()
                if not d.is_scalar() or d.is_zero():
                    raise RewriteError("can only divide by a nonzero scalar")
                val = val.scale(d.scalar_part().inverse())
            else:
                return val

    def unary(self):
        if self.take_op("-"):
            return -self.unary()
        if self.take_op("+"):
            return self.unary()
        return self.power()

    def power(self):
        base, gen = self.atom()
        if self.take_op("^"):
            neg = self.take_op("-")
            t = self.peek()
            if t is None or t[0] != "num":
                raise RewriteError("exponent must be an integer")
            self.pos += 1
            e = -t[1] if neg else t[1]
            if gen is not None:
                if e < 0 and not gen.invertible():
                    raise RewriteError(f"{gen} is not invertible")
                return LinComb.gen(gen, e)
            if e < 0:
                if not base.is_scalar() or base.is_zero():
                    raise RewriteError("negative powers are only allowed on invertibles")
                return LinComb.scalar(base.scalar_part() ** e)
            return base ** e
        return base

    def atom(self):
        t = self.peek()
        if t is None:
            raise RewriteError("unexpected end of expression")
        self.pos += 1
        if t[0] == "num":
            return LinComb.scalar(t[1]), None
        if t[0] == "q":
            return LinComb.scalar(Q), None
        if t[0] == "op" and t[1] == "(":
            val = self.expr()
            if not self.take_op(")"):
                raise RewriteError("missing closing parenthesis")
            return val, None
        if t[0] == "gen":
            return self.generator(t[1], t[2], t[3])
        raise RewriteError(f"unexpected token {t}")

    def generator(self, kind, i, j):
        if self.algebra == "SP":
            if kind != "s" or j is None:
                raise RewriteError(f"sp expressions use s[i,j], got {kind}[...]")
            g = S(i, j)
            g.validate(self.size)
            return LinComb.gen(g), g
        if kind == "s":
            raise RewriteError("s[i,j] belongs to the sp algebra")
        if kind in ("t", "tb") and j is not None:
            if kind == "t" and i < j or kind == "tb" and i > j:
                return LinComb(), None
            g = T(i, j) if kind == "t" else TB(i, j)
            g.validate(self.size)
            return LinComb.gen(g), g
        # Chevalley-type symbols are translated into t, tb
        if kind == "t" and j is None:
            g = T(i, i)
            g.validate(self.size)
            return LinComb.gen(g), g
        if kind == "tb" or (kind == "f" and j is not None):
            raise RewriteError(f"malformed generator {kind}[...]; use e[i,j] for root vectors")
        if j is None:
            i, j = (i, i + 1) if kind == "e" else (i + 1, i)
        return gl_root_vector(i, j, self.size), None


def gl_root_vector(i, j, N):
    """e_ij in terms of t, tb: -tb_ij t_ii/(q-q^-1) (i<j), tb_jj t_ij/(q-q^-1) (i>j)."""
    if i == j or not (1 <= i <= N and 1 <= j <= N):
        raise RewriteError(f"e[{i},{j}] is not a root vector for N={N}")
    c = QDIFF.inverse()
    if i < j:
        return LinComb.word(Word([(TB(i, j), 1), (T(i, i), 1)]), -c)
    return LinComb.word(Word([(T(j, j), -1), (T(i, j), 1)]), c)


def parse_expr(text, algebra, size):
    """Parse an expression such as ``(q-q^-1)*s[1,1]*s[2,2]^2 + 3``."""
    algebra = algebra.upper()
    if algebra not in ("SP", "GL"):
        raise RewriteError(f"unknown algebra {algebra!r}")
    return _Parser(text, algebra, size).parse()
