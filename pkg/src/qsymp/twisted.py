"""
Modules over U'_q(sp_2n): the embedding into U_q(gl_2n), the irreducible
highest weight modules L(lambda) cut out of Gelfand-Tsetlin modules, the
closed-form rank-one modules, truncated Verma modules and relation checks.

Weights are bookkept additively.  A weight vector whose s_{2k-1,2k}
eigenvalues are sigma_k q^{m_k - omega_k} is said to have depth omega.
"""

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import classical
from .gtrep import GTPattern, gl_module
from .rewrite import S, sp_generator_weight, sp_in_support, sp_pbw_letters, sp_support
from .scalar import ONE, Q, QDIFF, QScalar, qpow
from .tensor import OpMatrix, generic_points, inverse


class NonDominantError(ValueError):
    """The highest weight violates m_1 <= m_2 <= ... <= m_n."""


class ModuleError(ValueError):
    pass


def _d(cond):
    return 1 if cond else 0


@dataclass(frozen=True)
class HighestWeight:
    """lambda = (sigma_1 q^{m_1}, ..., sigma_n q^{m_n})."""

    signs: tuple
    m: tuple

    def __post_init__(self):
        if len(self.signs) != len(self.m) or not self.m:
            raise ValueError("signs and exponents must have the same positive length")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"signs must be +1 or -1, got {self.signs}")
        if any(int(x) < 1 for x in self.m):
            raise ValueError(f"exponents must be positive integers, got {self.m}")

    @classmethod
    def of(cls, m, signs=None):
        m = tuple(int(x) for x in m)
        signs = tuple(signs) if signs is not None else (1,) * len(m)
        return cls(tuple(int(s) for s in signs), m)

    @property
    def n(self):
        return len(self.m)

    @property
    def dominant(self):
        return all(a <= b for a, b in zip(self.m, self.m[1:]))

    def violation(self):
        """Human-readable reason for non-dominance, or None."""
        for k, (a, b) in enumerate(zip(self.m, self.m[1:]), start=1):
            if a > b:
                return (f"m_{k} = {a} > m_{k + 1} = {b}: finite-dimensional modules "
                        "need m_1 <= m_2 <= ... <= m_n")
        return None

    @property
    def r(self):
        return tuple(x - 1 for x in self.m)

    @property
    def nu(self):
        """gl_2n highest weight (r_n, ..., r_1, 0, ..., 0)."""
        return tuple(reversed(self.r)) + (0,) * self.n

    def classical_weight(self):
        """(r_n, ..., r_1), the sp_2n highest weight it corresponds to."""
        return tuple(reversed(self.r))

    def __str__(self):
        parts = [f"{'-' if s < 0 else ''}q^{m}" for s, m in zip(self.signs, self.m)]
        return "(" + ", ".join(parts) + ")"


class SPModule:
    """Finite-dimensional U'_q(sp_2n)-module given by its generator matrices."""

    def __init__(self, n, matrices, labels=None, weights=None, inverses=None, hw=None):
        self.n = n
        self.N = 2 * n
        dims = {m.shape for m in matrices.values()}
        if len(dims) > 1:
            raise ModuleError(f"inconsistent matrix shapes {dims}")
        self.dim = dims.pop()[0] if dims else 0
        full = {}
        for i, j in sp_support(n):
            full[i, j] = matrices.get((i, j), OpMatrix.zeros(self.dim))
        extra = set(matrices) - set(full)
        if extra:
            raise ModuleError(f"generators outside the support: {sorted(extra)}")
        self.matrices = full
        self.labels = labels or [f"v{k}" for k in range(self.dim)]
        self.weights = weights
        self.hw = hw
        self._inverses = dict(inverses or {})

    def s(self, i, j):
        if not sp_in_support(i, j):
            return OpMatrix.zeros(self.dim)
        return self.matrices[i, j]

    def s_inv(self, i):
        """Inverse of s_{i,i+1}, i odd."""
        m = self._inverses.get(i)
        if m is None:
            m = self._inverses[i] = inverse(self.matrices[i, i + 1])
        return m

    def family(self):
        """{(i, j): matrix} over all 1 <= i, j <= 2n, zeros outside the support."""
        return {(i, j): self.s(i, j)
                for i in range(1, self.N + 1) for j in range(1, self.N + 1)}

    def act_word(self, word):
        """Operator of a Word."""
        m = OpMatrix.identity(self.dim)
        for g, e in word.factors:
            base = self.s_inv(g.i) if e < 0 else self.s(g.i, g.j)
            for _ in range(abs(e)):
                m = m @ base
        return m

    def act(self, lincomb):
        out = OpMatrix.zeros(self.dim)
        for w, c in lincomb.terms.items():
            out = out + self.act_word(w).scale(c)
        return out

    def eigenvalues(self, k):
        """Diagonal of s_{2k-1,2k} when it is diagonal, else None."""
        m = self.matrices[2 * k - 1, 2 * k]
        if any(r != c for (r, c) in m.entries):
            return None
        return [m[v, v] for v in range(self.dim)]

    def twisted(self, signs):
        """Apply s_ij -> c_i c_j s_ij with c_{2k-1} = signs[k-1], c_{2k} = 1."""
        c = {}
        for k, s in enumerate(signs, start=1):
            c[2 * k - 1], c[2 * k] = s, 1
        mats = {(i, j): m.scale(c[i] * c[j]) for (i, j), m in self.matrices.items()}
        return SPModule(self.n, mats, self.labels, self.weights, None, self.hw)

    def to_json(self):
        mats = {f"s[{i},{j}]": m.to_json() for (i, j), m in sorted(self.matrices.items())}
        for k in range(1, self.n + 1):
            i = 2 * k - 1
            mats[f"s[{i},{i + 1}]^-1"] = self.s_inv(i).to_json()
        out = {"n": self.n, "dim": self.dim, "labels": list(self.labels),
               "weights": [list(w) for w in self.weights] if self.weights is not None else None,
               "matrices": mats}
        if self.hw is not None:
            out["highest_weight"] = {"m": list(self.hw.m), "signs": list(self.hw.signs)}
        return out

    @classmethod
    def from_json(cls, data):
        n = int(data["n"])
        mats, invs = {}, {}
        for name, m in data["matrices"].items():
            head, _, power = name.partition("^")
            i, j = (int(x) for x in head.strip()[2:-1].split(","))
            mat = OpMatrix.from_json(m)
            if power:
                if power.strip() != "-1" or j != i + 1:
                    raise ModuleError(f"unexpected matrix name {name!r}")
                invs[i] = mat
            else:
                mats[i, j] = mat
        weights = data.get("weights")
        hw = data.get("highest_weight")
        if hw is not None:
            hw = HighestWeight.of(hw["m"], hw["signs"])
        mod = cls(n, mats, data.get("labels"),
                  [tuple(w) for w in weights] if weights is not None else None,
                  invs, hw)
        if int(data.get("dim", mod.dim)) != mod.dim:
            raise ModuleError("declared dim does not match the matrices")
        return mod


# ---------------------------------------------------------------------------
# embedding into U_q(gl_2n)
# ---------------------------------------------------------------------------

def embed_S(nu):
    """Matrices of s_ij = q sum_k t_{i,2k-1} tb_{j,2k} - sum_k t_{i,2k} tb_{j,2k-1} on V(nu).

    Returns the full family over 1 <= i, j <= N; entries outside the support are
    checked to vanish.
    """
    V = gl_module(tuple(nu))
    N = V.N
    if N % 2:
        raise ModuleError(f"the embedding needs an even N, got {N}")
    n = N // 2
    out = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            m = OpMatrix.zeros(V.dim)
            for k in range(1, n + 1):
                a = V.tt(i, 2 * k - 1)
                b = V.tb(j, 2 * k)
                if not a.is_zero() and not b.is_zero():
                    m = m + (a @ b).scale(Q)
                a = V.tt(i, 2 * k)
                b = V.tb(j, 2 * k - 1)
                if not a.is_zero() and not b.is_zero():
                    m = m - a @ b
            if not sp_in_support(i, j) and not m.is_zero():
                raise ModuleError(f"s[{i},{j}] should vanish but does not")
            out[i, j] = m
    return out


def omega0_pattern(hw):
    """Start pattern: rows 2k-1 and 2k from the bottom are (r_k, ..., r_1) padded by zeros."""
    if not hw.dominant:
        raise NonDominantError(hw.violation())
    r = hw.r
    rows = []
    for k in range(1, hw.n + 1):
        head = tuple(reversed(r[:k]))
        rows.append(head + (0,) * (k - 1))
        rows.append(head + (0,) * k)
    pattern = GTPattern(tuple(rows))
    if not pattern.is_valid() or pattern.top != hw.nu:
        raise ModuleError("start pattern is not a valid pattern")
    return pattern


def pattern_exponents(p, n):
    """e with s_{2k-1,2k} zeta_p = q^{e_k} zeta_p under the embedding."""
    w = p.gl_weight()
    return tuple(1 + w[2 * k - 2] - w[2 * k - 1] for k in range(1, n + 1))


def _reduce(vec, space):
    """Reduce a sparse vector against a fully reduced echelon list in place."""
    for pivot, b in space:
        f = vec.get(pivot)
        if f:
            for c, v in b.items():
                s = vec.get(c)
                s = -f * v if s is None else s - f * v
                if s:
                    vec[c] = s
                else:
                    vec.pop(c, None)
    return vec


def _insert(vec, space):
    """Add a reduced nonzero vector to the echelon list; keep it fully reduced."""
    pivot = min(vec)
    inv = vec[pivot].inverse()
    vec = {c: v * inv for c, v in vec.items()}
    for idx, (p, b) in enumerate(space):
        f = b.get(pivot)
        if f:
            nb = dict(b)
            for c, v in vec.items():
                s = nb.get(c)
                s = -f * v if s is None else s - f * v
                if s:
                    nb[c] = s
                else:
                    nb.pop(c, None)
            space[idx] = (p, nb)
    space.append((pivot, vec))
    space.sort(key=lambda t: t[0])
    return pivot


def build_L(hw):
    """L(lambda) as the cyclic span of the start pattern inside V(nu)."""
    if not hw.dominant:
        raise NonDominantError(hw.violation())
    n = hw.n
    V = gl_module(hw.nu)
    fam = embed_S(hw.nu)
    gens = {(i, j): m for (i, j), m in fam.items() if not m.is_zero()}
    start = V.index[omega0_pattern(hw)]
    expo = [pattern_exponents(p, n) for p in V.basis]
    _check_highest(fam, start, hw)

    spaces = {}
    queue = deque()

    def add(vec):
        parts = {}
        for c, v in vec.items():
            parts.setdefault(expo[c], {})[c] = v
        for e, part in parts.items():
            space = spaces.setdefault(e, [])
            part = _reduce(part, space)
            if part:
                _insert(part, space)
                queue.append(part)

    add({start: ONE})
    while queue:
        vec = queue.popleft()
        for m in gens.values():
            image = m.apply(vec)
            if image:
                add(image)

    # basis: by height of the depth (the start vector comes first), then by pivot
    order = sorted(((tuple(a - b for a, b in zip(hw.m, e)), pivot, vec, e)
                    for e, space in spaces.items() for pivot, vec in space),
                   key=lambda t: (classical.height(t[0]), t[0], t[1]))
    index = {pivot: k for k, (_, pivot, _, _) in enumerate(order)}
    dim = len(order)
    mats = {}
    for (i, j), m in fam.items():
        if not sp_in_support(i, j):
            continue
        entries = {}
        for col, (_, _, vec, _) in enumerate(order):
            image = m.apply(vec)
            coords = {index[p]: image[p] for p in image if p in index}
            check = {}
            for row, cval in coords.items():
                for c, v in order[row][2].items():
                    check[c] = check.get(c, QScalar(0)) + cval * v
            check = {c: v for c, v in check.items() if v}
            if check != image:
                raise ModuleError(f"s[{i},{j}] leaves the cyclic span")
            for row, cval in coords.items():
                entries[row, col] = cval
        mats[i, j] = OpMatrix(dim, dim, entries)
    labels = [f"omega={list(om)}#{p}" for om, p, _, _ in order]
    weights = [om for om, _, _, _ in order]
    mod = SPModule(n, mats, labels, weights, hw=hw)
    if any(s != 1 for s in hw.signs):
        mod = mod.twisted(hw.signs)
    return mod


def _check_highest(fam, start, hw):
    vec = {start: ONE}
    for k in range(1, hw.n + 1):
        i = 2 * k - 1
        for j in range(1, i + 1):
            if fam[i, j].apply(vec):
                raise ModuleError(f"s[{i},{j}] does not annihilate the start vector")
        if fam[i, i + 1].apply(vec) != {start: qpow(hw.m[k - 1])}:
            raise ModuleError(f"s[{i},{i + 1}] does not act by q^{hw.m[k - 1]}")


def sp2_module(m, sigma=1):
    """Rank-one module with basis v_0..v_{m-1} given by closed formulas."""
    if int(m) < 1:
        raise ModuleError(f"m must be a positive integer, got {m}")
    if sigma not in (-1, 1):
        raise ModuleError(f"sigma must be +1 or -1, got {sigma}")
    m = int(m)
    s12 = OpMatrix.diagonal([qpow(m - 2 * k) * sigma for k in range(m)])
    s22 = OpMatrix(m, m, {(k + 1, k): ONE for k in range(m - 1)})
    s11 = OpMatrix(m, m, {(k - 1, k): Q ** 3 * (1 - qpow(2 * m - 2 * k)) * (1 - qpow(-2 * k))
                          for k in range(1, m)})
    s12_inv = inverse(s12)
    s21 = (s22 @ s11 - OpMatrix.identity(m).scale(Q ** 3)) @ s12_inv
    s21 = s21.scale(Q ** -2)
    mats = {(1, 1): s11, (1, 2): s12, (2, 1): s21, (2, 2): s22}
    return SPModule(1, mats, [f"v{k}" for k in range(m)], [(k,) for k in range(m)],
                    {1: s12_inv}, HighestWeight.of((m,), (sigma,)))


# ---------------------------------------------------------------------------
# weights, Verma modules, classical comparison
# ---------------------------------------------------------------------------

def lowering_generators(n):
    """(i, j) with i even and j in 1..i-2 or j = i, in normal-form order."""
    return [(i, j) for (i, j) in sp_pbw_letters(n) if i % 2 == 0]


def verma_truncated(hw, d):
    """{omega: multiplicity} over PBW lowering monomials of degree <= d.

    A monomial of weight a (see weight_of_word) has depth omega = -a.
    """
    if d < 0:
        raise ValueError("degree cap must be non-negative")
    n = hw.n if isinstance(hw, HighestWeight) else int(hw)
    gens = lowering_generators(n)
    depth = [tuple(-a for a in sp_generator_weight(i, j, n)) for i, j in gens]
    table = {}

    def rec(idx, left, acc):
        if idx == len(gens):
            table[acc] = table.get(acc, 0) + 1
            return
        for k in range(left + 1):
            rec(idx + 1, left - k, tuple(a + k * b for a, b in zip(acc, depth[idx])))

    rec(0, d, (0,) * n)
    return table


def positive_roots(n):
    return classical.RootSystemC(n).positive


def weyl_dim_sp(r):
    """Classical sp_2n dimension for highest weight (r_n, ..., r_1), r_n >= ... >= r_1 >= 0."""
    r = tuple(int(x) for x in r)
    if any(x < 0 for x in r) or any(a < b for a, b in zip(r, r[1:])):
        raise ValueError(f"need r_n >= ... >= r_1 >= 0, got {r}")
    return classical.weyl_dim(tuple(reversed(r)))


def module_character(mod):
    """{classical weight: multiplicity} of a module built by build_L.

    Depth omega at block k maps to the coordinate r_k - omega_k; coordinates are
    listed as (block 1, ..., block n).
    """
    if mod.weights is None or mod.hw is None:
        raise ModuleError("module carries no weight data")
    r = mod.hw.r
    out = {}
    for om in mod.weights:
        key = tuple(rk - o for rk, o in zip(r, om))
        out[key] = out.get(key, 0) + 1
    return out


def classical_character(hw):
    """Freudenthal multiplicities in the same coordinates as module_character."""
    return classical.freudenthal(hw.r)


# ---------------------------------------------------------------------------
# relation checks
# ---------------------------------------------------------------------------

def verify_module(mod, n=None, seed=1):
    """Check every defining relation; return a list of failures (empty = pass).

    Each failure is a dict with the relation name, indices and the largest
    absolute residual entry at a sample point q0.
    """
    n = mod.n if n is None else n
    if n != mod.n:
        raise ModuleError(f"module has rank {mod.n}, not {n}")
    N = 2 * n
    d = mod.dim
    q0 = generic_points(1, seed)[0]
    fam = mod.family()
    nonzero = {k for k, m in fam.items() if not m.is_zero()}
    products = {}

    def prod(x, y):
        if x not in nonzero or y not in nonzero:
            return None
        key = (x, y)
        p = products.get(key)
        if p is None:
            p = products[key] = fam[x] @ fam[y]
        return p

    report = []

    def record(name, idx, residual):
        if not residual.is_zero():
            try:
                size = residual.max_abs_at(q0)
            except ZeroDivisionError:
                size = None
            report.append({"relation": name, "indices": list(idx),
                           "max_abs_residual": None if size is None else str(size),
                           "q0": str(q0)})

    rng = range(1, N + 1)
    for i, a, j, b in product(rng, repeat=4):
        acc = {}
        terms = [
            (qpow(_d(a == j) + _d(i == j)), (i, a), (j, b)),
            (-qpow(_d(a == b) + _d(i == b)), (j, b), (i, a)),
            (-QDIFF * qpow(_d(a == i)) * (_d(b < a) - _d(i < j)), (j, a), (i, b)),
            (-QDIFF * qpow(_d(a == b)) * _d(b < i), (j, i), (b, a)),
            (QDIFF * qpow(_d(i == j)) * _d(a < j), (i, j), (a, b)),
            (-QDIFF * QDIFF * (_d(b < a < i) - _d(a < i < j)), (j, i), (a, b)),
        ]
        residual = OpMatrix.zeros(d)
        for c, x, y in terms:
            if not c:
                continue
            p = prod(x, y)
            if p is not None:
                residual = residual + p.scale(c)
        record("drabss", (i, a, j, b), residual)
    ident = OpMatrix.identity(d)
    for k in range(1, n + 1):
        i = 2 * k - 1
        c = fam[i, i + 1]
        try:
            ci = mod.s_inv(i)
        except ZeroDivisionError:
            report.append({"relation": "invrel", "indices": [i],
                           "max_abs_residual": "singular", "q0": str(q0)})
            ci = None
        if ci is not None:
            record("invrel", (i,), c @ ci - ident)
            record("invrel", (i,), ci @ c - ident)
        theta = fam[i + 1, i + 1] @ fam[i, i] - (fam[i + 1, i] @ c).scale(Q ** 2)
        record("qdetrel", (i,), theta - ident.scale(Q ** 3))
    return report
