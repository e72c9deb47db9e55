"""
Sparse matrices over Q(q), Kronecker products and the constant matrices R, R', G.

Index convention for C^N (x) C^N: the basis vector e_i (x) e_j (1-based i, j)
sits at 0-based position (i-1)*N + (j-1).  All placements R_12, R_13, R_23 and
the block operators used for the reflection equation derive from it.
"""

import random
from fractions import Fraction

from .scalar import ONE, ZERO, Q, QDIFF, PoleError, QScalar, as_scalar


class DimensionError(ValueError):
    pass


class OpMatrix:
    """Immutable sparse matrix with QScalar entries.

    Rows are stored as ``{row: {col: QScalar}}``; zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        data = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = as_scalar(v)
                if v:
                    data.setdefault(r, {})[c] = v
        self._data = data

    @classmethod
    def _from_rows(cls, rows, cols, data):
        obj = cls.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj._data = {r: row for r, row in data.items() if row}
        return obj

    @classmethod
    def zeros(cls, rows, cols=None):
        return cls._from_rows(rows, rows if cols is None else cols, {})

    @classmethod
    def identity(cls, n):
        return cls._from_rows(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def diagonal(cls, values):
        values = [as_scalar(v) for v in values]
        n = len(values)
        return cls._from_rows(n, n, {i: {i: v} for i, v in enumerate(values) if v})

    @classmethod
    def from_dense(cls, rows):
        entries = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)}
        ncols = len(rows[0]) if rows else 0
        return cls(len(rows), ncols, entries)

    # access -----------------------------------------------------------------

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def entries(self):
        return {(r, c): v for r, row in self._data.items() for c, v in row.items()}

    def items(self):
        """Nonzero entries as ((row, col), value), sorted."""
        return sorted(self.entries.items())

    def row(self, r):
        return self._data.get(r, {})

    def __getitem__(self, rc):
        r, c = rc
        return self._data.get(r, {}).get(c, ZERO)

    def nnz(self):
        return sum(len(row) for row in self._data.values())

    def is_zero(self):
        return not self._data

    def to_dense(self):
        return [[self[r, c] for c in range(self.cols)] for r in range(self.rows)]

    # algebra ----------------------------------------------------------------

    def _check_same(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            target = data.setdefault(r, {})
            for c, v in row.items():
                s = target[c] + v if c in target else v
                if s:
                    target[c] = s
                else:
                    del target[c]
        return OpMatrix._from_rows(self.rows, self.cols, data)

    def __neg__(self):
        return OpMatrix._from_rows(
            self.rows, self.cols,
            {r: {c: -v for c, v in row.items()} for r, row in self._data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_scalar(s)
        if not s:
            return OpMatrix.zeros(self.rows, self.cols)
        if s.is_one():
            return self
        return OpMatrix._from_rows(
            self.rows, self.cols,
            {r: {c: s * v for c, v in row.items()} for r, row in self._data.items()})

    def __mul__(self, s):
        if isinstance(s, OpMatrix):
            return self @ s
        return self.scale(s)

    __rmul__ = scale

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = {}
        odata = other._data
        for r, row in self._data.items():
            acc = {}
            for k, a in row.items():
                brow = odata.get(k)
                if not brow:
                    continue
                for c, b in brow.items():
                    p = a * b
                    if c in acc:
                        acc[c] = acc[c] + p
                    else:
                        acc[c] = p
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        return OpMatrix._from_rows(self.rows, other.cols, out)

    def apply(self, vec):
        """Multiply by a sparse column vector given as {index: QScalar}."""
        out = {}
        for r, row in self._data.items():
            acc = ZERO
            for c, a in row.items():
                v = vec.get(c)
                if v is not None:
                    acc = acc + a * v
            if acc:
                out[r] = acc
        return out

    def transpose(self):
        data = {}
        for r, row in self._data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return OpMatrix._from_rows(self.cols, self.rows, data)

    @property
    def T(self):
        return self.transpose()

    def kron(self, other):
        data = {}
        for r1, row1 in self._data.items():
            for c1, a in row1.items():
                for r2, row2 in other._data.items():
                    target = data.setdefault(r1 * other.rows + r2, {})
                    for c2, b in row2.items():
                        target[c1 * other.cols + c2] = a * b
        return OpMatrix._from_rows(self.rows * other.rows, self.cols * other.cols, data)

    def map(self, fn):
        data = {}
        for r, row in self._data.items():
            new = {}
            for c, v in row.items():
                w = fn(v)
                if w:
                    new[c] = w
            data[r] = new
        return OpMatrix._from_rows(self.rows, self.cols, data)

    def submatrix(self, rows, cols):
        ridx = {r: i for i, r in enumerate(rows)}
        cidx = {c: j for j, c in enumerate(cols)}
        data = {}
        for r, row in self._data.items():
            if r in ridx:
                new = {cidx[c]: v for c, v in row.items() if c in cidx}
                if new:
                    data[ridx[r]] = new
        return OpMatrix._from_rows(len(rows), len(cols), data)

    def __eq__(self, other):
        if not isinstance(other, OpMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(
            (r, c, v) for r, row in self._data.items() for c, v in row.items())))

    def eval_at(self, q0):
        """Dense matrix of Fractions obtained by substituting q = q0."""
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for r, row in self._data.items():
            for c, v in row.items():
                out[r][c] = v.eval_at(q0)
        return out

    def max_abs_at(self, q0):
        vals = [abs(v.eval_at(q0)) for row in self._data.values() for v in row.values()]
        return max(vals, default=Fraction(0))

    def __repr__(self):
        return f"OpMatrix({self.rows}x{self.cols}, nnz={self.nnz()})"

    def pretty(self):
        width = [max([len(str(self[r, c])) for r in range(self.rows)] + [1])
                 for c in range(self.cols)]
        lines = []
        for r in range(self.rows):
            cells = [str(self[r, c]).rjust(width[c]) for c in range(self.cols)]
            lines.append("[ " + "  ".join(cells) + " ]")
        return "\n".join(lines)

    # serialization ----------------------------------------------------------

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[r + 1, c + 1, v.to_json()] for (r, c), v in self.items()]}

    @classmethod
    def from_json(cls, data):
        entries = {(int(r) - 1, int(c) - 1): QScalar.from_json(v)
                   for r, c, v in data["entries"]}
        return cls(int(data["rows"]), int(data["cols"]), entries)


def matrix_unit(n, i, j):
    """E_ij in End(C^n), 1-based indices."""
    return OpMatrix._from_rows(n, n, {i - 1: {j - 1: ONE}})


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------

def _rank_fractions(rows):
    rows = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = f / p[c]
                rows[i] = [x - f * y for x, y in zip(rows[i], p)]
        rank += 1
    return rank


def exact_rank(m):
    """Rank over Q(q) by fraction-field Gaussian elimination."""
    rows = [dict(m.row(r)) for r in range(m.rows) if m.row(r)]
    rank = 0
    pivots = []
    for vec in rows:
        for pc, pvec in pivots:
            f = vec.get(pc)
            if f:
                f = f / pvec[pc]
                for c, v in pvec.items():
                    s = vec.get(c, ZERO) - f * v
                    if s:
                        vec[c] = s
                    else:
                        vec.pop(c, None)
        if vec:
            pc = min(vec)
            pivots.append((pc, vec))
            rank += 1
    return rank


def generic_points(k, seed=1):
    """k distinct random rationals avoiding 0 and +-1."""
    rng = random.Random(seed)
    pts = []
    while len(pts) < k:
        x = Fraction(rng.randint(2, 97), rng.randint(1, 31))
        if rng.random() < 0.5:
            x = -x
        if x not in pts and abs(x) != 1:
            pts.append(x)
    return pts


def rank(m, seed=1, points=3):
    """Rank over Q(q), with a generic-point fast path.

    The matrix is evaluated at ``points`` random rationals.  When all sampled
    ranks agree that value is returned; otherwise the symbolic rank is
    computed.  Points that hit a pole are redrawn.
    """
    ranks = []
    for q0 in generic_points(50 * points, seed=seed):
        if len(ranks) == points:
            break
        try:
            ranks.append(_rank_fractions(m.eval_at(q0)))
        except PoleError:
            continue
    if ranks and len(set(ranks)) == 1:
        return ranks[0]
    return exact_rank(m)


def inverse(m):
    """Exact inverse by Gauss-Jordan elimination over Q(q)."""
    if m.rows != m.cols:
        raise DimensionError("inverse of a non-square matrix")
    n = m.rows
    rows = [dict(m.row(r)) for r in range(n)]
    inv = [{r: ONE} for r in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r].get(c)), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        p = rows[c][c].inverse()
        rows[c] = {k: v * p for k, v in rows[c].items()}
        inv[c] = {k: v * p for k, v in inv[c].items()}
        for r in range(n):
            f = rows[r].get(c) if r != c else None
            if not f:
                continue
            for src, dst in ((rows[c], rows[r]), (inv[c], inv[r])):
                for k, v in src.items():
                    s = dst.get(k, ZERO) - f * v
                    if s:
                        dst[k] = s
                    else:
                        dst.pop(k, None)
    return OpMatrix._from_rows(n, n, {r: row for r, row in enumerate(inv)})


# ---------------------------------------------------------------------------
# R-matrices and G
# ---------------------------------------------------------------------------

def _idx(N, i, j):
    return (i - 1) * N + (j - 1)


def build_R(N):
    """q sum E_ii(x)E_ii + sum_{i!=j} E_ii(x)E_jj + (q-q^-1) sum_{i<j} E_ij(x)E_ji."""
    if N < 1:
        raise ValueError("N must be at least 1")
    entries = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            entries[_idx(N, i, j), _idx(N, i, j)] = Q if i == j else ONE
            if i < j:
                # E_ij (x) E_ji sends e_j (x) e_i to e_i (x) e_j
                entries[_idx(N, i, j), _idx(N, j, i)] = QDIFF
    return OpMatrix(N * N, N * N, entries)


def build_Rprime(N):
    """R with its last term replaced by (q-q^-1) sum_{i<j} E_ji(x)E_ji."""
    if N < 1:
        raise ValueError("N must be at least 1")
    entries = {}
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            entries[_idx(N, i, j), _idx(N, i, j)] = Q if i == j else ONE
            if i < j:
                entries[_idx(N, j, j), _idx(N, i, i)] = QDIFF
    return OpMatrix(N * N, N * N, entries)


def build_G(n, q=None):
    """The 2n x 2n matrix with blocks [[0, q], [-1, 0]] on the diagonal.

    Pass ``q=1`` to get the classical skew form.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    top = Q if q is None else as_scalar(q)
    entries = {}
    for k in range(n):
        entries[2 * k, 2 * k + 1] = top
        entries[2 * k + 1, 2 * k] = -ONE
    return OpMatrix(2 * n, 2 * n, entries)


def partial_transpose_first(m, N):
    """Transpose in the first tensor leg of an operator on C^N (x) C^N."""
    data = {}
    for (r, c), v in m.entries.items():
        i, j = divmod(r, N)
        k, l = divmod(c, N)
        data[(k * N + j, i * N + l)] = v
    return OpMatrix(m.rows, m.cols, data)


def swap_matrix(N):
    """P(e_i (x) e_j) = e_j (x) e_i."""
    return OpMatrix(N * N, N * N, {(j * N + i, i * N + j): ONE
                                   for i in range(N) for j in range(N)})


def check_yang_baxter(R, N):
    """R12 R13 R23 - R23 R13 R12 on (C^N)^(x)3; zero iff R satisfies Yang-Baxter."""
    if R.shape != (N * N, N * N):
        raise DimensionError(f"R must be {N*N}x{N*N}, got {R.shape}")
    one = OpMatrix.identity(N)
    R12 = R.kron(one)
    R23 = one.kron(R)
    P23 = one.kron(swap_matrix(N))
    R13 = P23 @ R12 @ P23
    return R12 @ R13 @ R23 - R23 @ R13 @ R12


# ---------------------------------------------------------------------------
# block operators: End(module) (x) End(C^N) (x) End(C^N)
# ---------------------------------------------------------------------------

class BlockOp:
    """Operator on M (x) C^N (x) C^N stored as {(A, B): d x d OpMatrix}.

    A, B are 0-based indices into C^N (x) C^N.  Products multiply the module
    blocks in order, so the algebra structure of the blocks is respected.
    """

    def __init__(self, d, N, blocks):
        self.d = d
        self.N = N
        self.blocks = {k: v for k, v in blocks.items() if not v.is_zero()}

    @classmethod
    def from_scalar_matrix(cls, m, d):
        ident = OpMatrix.identity(d)
        return cls(d, int(round(m.rows ** 0.5)),
                   {(r, c): ident.scale(v) for (r, c), v in m.entries.items()})

    @classmethod
    def leg(cls, family, d, N, which):
        """S_1 = sum s_ij (x) E_ij (x) 1  (which=1)  or  S_2 = sum s_ij (x) 1 (x) E_ij."""
        blocks = {}
        for (i, j), mat in family.items():
            if mat.is_zero():
                continue
            for k in range(N):
                if which == 1:
                    A, B = (i - 1) * N + k, (j - 1) * N + k
                else:
                    A, B = k * N + (i - 1), k * N + (j - 1)
                blocks[A, B] = mat
        return cls(d, N, blocks)

    def __matmul__(self, other):
        by_row = {}
        for (B, C), m in other.blocks.items():
            by_row.setdefault(B, []).append((C, m))
        out = {}
        for (A, B), m1 in self.blocks.items():
            for C, m2 in by_row.get(B, ()):
                p = m1 @ m2
                if p.is_zero():
                    continue
                out[A, C] = out[A, C] + p if (A, C) in out else p
        return BlockOp(self.d, self.N, out)

    def __sub__(self, other):
        out = dict(self.blocks)
        for k, m in other.blocks.items():
            out[k] = out[k] - m if k in out else -m
        return BlockOp(self.d, self.N, out)

    def to_matrix(self):
        """Flatten with module index outermost: position v*N^2 + A."""
        NN = self.N * self.N
        entries = {}
        for (A, B), m in self.blocks.items():
            for (r, c), v in m.entries.items():
                entries[r * NN + A, c * NN + B] = v
        return OpMatrix(self.d * NN, self.d * NN, entries)


def check_reflection(R, Rp, S_ops, N, d=None):
    """R S1 R' S2 - S2 R' S1 R acting on module (x) C^N (x) C^N.

    ``S_ops`` maps 1-based (i, j) to the d x d matrix of s_ij; missing pairs are
    zero.  The residual is returned as a (d N^2) x (d N^2) OpMatrix whose row
    index is v*N^2 + (i-1)*N + (j-1).
    """
    if R.shape != (N * N, N * N) or Rp.shape != (N * N, N * N):
        raise DimensionError("R and R' must be N^2 x N^2")
    dims = {m.shape for m in S_ops.values()}
    if d is None:
        if len(dims) != 1:
            raise DimensionError(f"inconsistent module dimensions {dims}")
        d = dims.pop()[0]
    elif dims - {(d, d)}:
        raise DimensionError(f"matrices of shape {dims} on a {d}-dim module")
    if d == 0:
        return OpMatrix.zeros(0, 0)
    for (i, j) in S_ops:
        if not (1 <= i <= N and 1 <= j <= N):
            raise DimensionError(f"generator index ({i}, {j}) outside 1..{N}")
    Rb = BlockOp.from_scalar_matrix(R, d)
    Rpb = BlockOp.from_scalar_matrix(Rp, d)
    S1 = BlockOp.leg(S_ops, d, N, 1)
    S2 = BlockOp.leg(S_ops, d, N, 2)
    lhs = Rb @ S1 @ Rpb @ S2
    rhs = S2 @ Rpb @ S1 @ Rb
    return (lhs - rhs).to_matrix()


def check_rtt(R, T_ops, Tp_ops, N, d=None):
    """R T1 T2' - T2' T1 R for block families T, T' (both given like S_ops)."""
    dims = {m.shape for m in list(T_ops.values()) + list(Tp_ops.values())}
    if d is None:
        d = dims.pop()[0]
    Rb = BlockOp.from_scalar_matrix(R, d)
    T1 = BlockOp.leg(T_ops, d, N, 1)
    T2 = BlockOp.leg(Tp_ops, d, N, 2)
    return ((Rb @ T1 @ T2) - (T2 @ T1 @ Rb)).to_matrix()
