"""
Finite-dimensional irreducible U_q(gl_N)-modules in the Gelfand-Tsetlin basis.

A pattern is stored bottom-up: ``rows[k-1]`` is row k (length k), so
``rows[-1]`` is the highest weight nu.  Basis vectors are ordered
lexicographically by the entries read bottom row up (nu_11, nu_21, nu_22,
nu_31, ...).
"""

from dataclasses import dataclass
from functools import lru_cache

from .scalar import ONE, Q, QDIFF, qint, qpow
from .tensor import OpMatrix


class WeightError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class GTPattern:
    rows: tuple

    @property
    def N(self):
        return len(self.rows)

    @property
    def top(self):
        return self.rows[-1]

    def entry(self, k, i):
        """nu_{ki}, 1-based."""
        return self.rows[k - 1][i - 1]

    def l(self, k, i):
        return self.rows[k - 1][i - 1] - i + 1

    def sort_key(self):
        return tuple(x for row in self.rows for x in row)

    def is_valid(self):
        for k in range(1, self.N):
            lower, upper = self.rows[k - 1], self.rows[k]
            for i in range(k):
                if not upper[i] >= lower[i] >= upper[i + 1]:
                    return False
        return True

    def shifted(self, k, i, delta):
        rows = list(self.rows)
        row = list(rows[k - 1])
        row[i - 1] += delta
        rows[k - 1] = tuple(row)
        return GTPattern(tuple(rows))

    def gl_weight(self):
        """(w_1, ..., w_N) with t_k acting by q^{w_k}."""
        sums = [0] + [sum(r) for r in self.rows]
        return tuple(sums[k] - sums[k - 1] for k in range(1, self.N + 1))

    def top_down(self):
        return [list(r) for r in reversed(self.rows)]

    def __str__(self):
        return " ; ".join(",".join(str(x) for x in r) for r in reversed(self.rows))


def check_weight(nu):
    nu = tuple(int(x) for x in nu)
    if not nu:
        raise WeightError("nu must be non-empty")
    for a, b in zip(nu, nu[1:]):
        if a < b:
            raise WeightError(f"nu must be weakly decreasing, got {nu}")
    return nu


def _below(row):
    """All rows interlacing under ``row``."""
    if len(row) == 1:
        yield ()
        return
    ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]

    def rec(i, acc):
        if i == len(ranges):
            yield tuple(acc)
            return
        for x in ranges[i]:
            acc.append(x)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def enumerate_patterns(nu):
    nu = check_weight(nu)
    out = []

    def rec(stack):
        if len(stack[-1]) == 1:
            out.append(GTPattern(tuple(reversed(stack))))
            return
        for r in _below(stack[-1]):
            rec(stack + [r])

    rec([nu])
    out.sort(key=GTPattern.sort_key)
    return out


def classical_gl_dim(nu):
    """Weyl dimension of the gl_N irrep with highest weight nu."""
    nu = check_weight(nu)
    N = len(nu)
    num = den = 1
    for i in range(N):
        for j in range(i + 1, N):
            num *= nu[i] - nu[j] + j - i
            den *= j - i
    return num // den


class GLModule:
    """V(nu) with lazily built, cached generator matrices."""

    def __init__(self, nu):
        self.nu = check_weight(nu)
        self.N = len(self.nu)
        self.basis = enumerate_patterns(self.nu)
        self.index = {p: n for n, p in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._cache = {}

    def _memo(self, key, fn):
        m = self._cache.get(key)
        if m is None:
            m = self._cache[key] = fn()
        return m

    def _check_k(self, k, top):
        if not 1 <= k <= top:
            raise IndexError(f"index {k} outside 1..{top}")

    # Chevalley generators ---------------------------------------------------

    def t(self, k, power=1):
        self._check_k(k, self.N)
        return self._memo(("t", k, power), lambda: OpMatrix.diagonal(
            [qpow(power * p.gl_weight()[k - 1]) for p in self.basis]))

    def e(self, k):
        self._check_k(k, self.N - 1)
        return self._memo(("e", k), lambda: self._raise_lower(k, +1))

    def f(self, k):
        self._check_k(k, self.N - 1)
        return self._memo(("f", k), lambda: self._raise_lower(k, -1))

    def _raise_lower(self, k, sign):
        entries = {}
        other = k + 1 if sign > 0 else k - 1
        for col, p in enumerate(self.basis):
            for i in range(1, k + 1):
                target = p.shifted(k, i, sign)
                row = self.index.get(target)
                if row is None:
                    continue
                lki = p.l(k, i)
                num = ONE
                for j in range(1, other + 1):
                    num = num * qint(p.l(other, j) - lki)
                den = ONE
                for j in range(1, k + 1):
                    if j != i:
                        den = den * qint(p.l(k, j) - lki)
                c = num / den
                entries[row, col] = -c if sign > 0 else c
        return OpMatrix(self.dim, self.dim, entries)

    def k_cartan(self, i, power=1):
        """k_i = t_i t_{i+1}^{-1}."""
        return self.t(i, power) @ self.t(i + 1, -power)

    # root vectors -----------------------------------------------------------

    def root_vector(self, i, j, k=None):
        """e_ij through intermediate index k (default: the neighbour of j)."""
        self._check_k(i, self.N)
        self._check_k(j, self.N)
        if i == j:
            raise ValueError("root vectors need i != j")
        if abs(i - j) == 1:
            return self.e(i) if i < j else self.f(j)
        if k is None:
            k = j - 1 if i < j else j + 1
        if not (i < k < j or i > k > j):
            raise ValueError(f"intermediate index {k} not strictly between {i} and {j}")
        key = ("e_root", i, j, k)
        coeff = Q if i < j else Q.inverse()

        def build():
            a = self.root_vector(i, k)
            b = self.root_vector(k, j)
            return a @ b - (b @ a).scale(coeff)

        return self._memo(key, build)

    def root_vector_all_k(self, i, j):
        """{k: e_ij computed through k} for every admissible k."""
        lo, hi = sorted((i, j))
        return {k: self.root_vector(i, j, k) for k in range(lo + 1, hi)}

    # R-matrix generators ----------------------------------------------------

    def tt(self, i, j):
        """t_ij (zero above the diagonal)."""
        if i < j:
            return OpMatrix.zeros(self.dim)
        if i == j:
            return self.t(i)

        # t_ij = (q - q^-1) t_jj e_ij for i > j
        return self._memo(("T", i, j), lambda: (
            self.t(j) @ self.root_vector(i, j)).scale(QDIFF))

    def tb(self, i, j):
        """t-bar_ij (zero below the diagonal)."""
        if i > j:
            return OpMatrix.zeros(self.dim)
        if i == j:
            return self.t(i, -1)

        # t-bar_ij = -(q - q^-1) e_ij t-bar_ii for i < j
        return self._memo(("TB", i, j), lambda: (
            self.root_vector(i, j) @ self.t(i, -1)).scale(-QDIFF))

    def highest_pattern(self):
        rows = tuple(self.nu[:k] for k in range(1, self.N + 1))
        return GTPattern(rows)


@lru_cache(maxsize=64)
def gl_module(nu):
    return GLModule(tuple(nu))


def act_chevalley(nu):
    """Matrices of t_k, t_k^{-1}, e_k, f_k keyed 't[k]', 'tinv[k]', 'e[k]', 'f[k]'."""
    V = gl_module(check_weight(nu))
    out = {}
    for k in range(1, V.N + 1):
        out[f"t[{k}]"] = V.t(k)
        out[f"tinv[{k}]"] = V.t(k, -1)
    for k in range(1, V.N):
        out[f"e[{k}]"] = V.e(k)
        out[f"f[{k}]"] = V.f(k)
    return out


def root_vectors(nu):
    """{(i, j): e_ij} for all i != j, using the default intermediate index."""
    V = gl_module(check_weight(nu))
    return {(i, j): V.root_vector(i, j)
            for i in range(1, V.N + 1) for j in range(1, V.N + 1) if i != j}


def rtf_generators(nu):
    """(T, TB): dicts {(i, j): matrix} of t_ij (i >= j) and t-bar_ij (i <= j)."""
    V = gl_module(check_weight(nu))
    N = V.N
    T = {(i, j): V.tt(i, j) for i in range(1, N + 1) for j in range(1, i + 1)}
    TB = {(i, j): V.tb(i, j) for i in range(1, N + 1) for j in range(i, N + 1)}
    return T, TB


def module_manifest(nu, gens=None):
    """JSON-ready description of V(nu); ``gens`` limits the generator list."""
    V = gl_module(check_weight(nu))
    mats = {}
    T, TB = rtf_generators(nu)
    for (i, j), m in T.items():
        mats[f"t[{i},{j}]"] = m
    for (i, j), m in TB.items():
        mats[f"tb[{i},{j}]"] = m
    for name, m in act_chevalley(nu).items():
        mats[name] = m
    if gens is not None:
        missing = [g for g in gens if g not in mats]
        if missing:
            raise KeyError(f"unknown generator(s): {', '.join(missing)}")
        mats = {g: mats[g] for g in gens}
    return {"nu": list(V.nu), "dim": V.dim,
            "patterns": [p.top_down() for p in V.basis],
            "matrices": {k: m.to_json() for k, m in sorted(mats.items())}}


def _delta(c):
    return 1 if c else 0


def check_gl_relations(V):
    """Every defining relation of both presentations on V.

    Returns a list of (relation name, indices) whose matrix residual is nonzero.
    """
    N = V.N
    d = V.dim
    rng = range(1, N + 1)
    fails = []
    T = {(i, j): V.tt(i, j) for i in rng for j in rng}
    TB = {(i, j): V.tb(i, j) for i in rng for j in rng}
    ident = OpMatrix.identity(d)

    def qp(e):
        return qpow(e)

    for i in rng:
        if not (T[i, i] @ TB[i, i]) == ident or not (TB[i, i] @ T[i, i]) == ident:
            fails.append(("inverse", (i,)))
    for i in rng:
        for a in rng:
            for j in rng:
                for b in rng:
                    c = QDIFF * (_delta(b < a) - _delta(i < j))
                    for name, X in (("defrelg[t]", T), ("defrelg[tb]", TB)):
                        lhs = (X[i, a] @ X[j, b]).scale(qp(_delta(i == j))) - \
                            (X[j, b] @ X[i, a]).scale(qp(_delta(a == b)))
                        rhs = (X[j, a] @ X[i, b]).scale(c)
                        if not (lhs - rhs).is_zero():
                            fails.append((name, (i, a, j, b)))
                    lhs = (TB[i, a] @ T[j, b]).scale(qp(_delta(i == j))) - \
                        (T[j, b] @ TB[i, a]).scale(qp(_delta(a == b)))
                    rhs = (T[j, a] @ TB[i, b]).scale(QDIFF * _delta(b < a)) - \
                        (TB[j, a] @ T[i, b]).scale(QDIFF * _delta(i < j))
                    if not (lhs - rhs).is_zero():
                        fails.append(("defrelg2", (i, a, j, b)))
    for i in rng:
        for j in rng:
            for b in rng:
                e = _delta(i == j) - _delta(i == b)
                for name, X in (("tiicom[t]", T), ("tiicom[tb]", TB)):
                    if not (T[i, i] @ X[j, b]) == (X[j, b] @ T[i, i]).scale(qp(e)):
                        fails.append((name, (i, j, b)))
    fails.extend(check_chevalley_relations(V))
    return fails


def check_chevalley_relations(V):
    N = V.N
    fails = []
    rng = range(1, N + 1)
    for i in rng:
        for j in range(1, N):
            e = _delta(i == j) - _delta(i == j + 1)
            if not V.t(i) @ V.e(j) @ V.t(i, -1) == V.e(j).scale(qpow(e)):
                fails.append(("t e t^-1", (i, j)))
            if not V.t(i) @ V.f(j) @ V.t(i, -1) == V.f(j).scale(qpow(-e)):
                fails.append(("t f t^-1", (i, j)))
    for i in range(1, N):
        for j in range(1, N):
            comm = V.e(i) @ V.f(j) - V.f(j) @ V.e(i)
            if i == j:
                target = (V.k_cartan(i) - V.k_cartan(i, -1)).scale(QDIFF.inverse())
            else:
                target = OpMatrix.zeros(V.dim)
            if not comm == target:
                fails.append(("[e,f]", (i, j)))
            for name, X in (("e", V.e), ("f", V.f)):
                a, b = X(i), X(j)
                if abs(i - j) > 1:
                    if not (a @ b - b @ a).is_zero():
                        fails.append((f"[{name},{name}]", (i, j)))
                elif abs(i - j) == 1:
                    serre = a @ a @ b - (a @ b @ a).scale(Q + Q.inverse()) + b @ a @ a
                    if not serre.is_zero():
                        fails.append((f"serre[{name}]", (i, j)))
    return fails
