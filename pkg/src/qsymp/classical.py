"""
Classical sp_2n data used as independent oracles: roots, Weyl dimension,
Freudenthal weight multiplicities and the Kostant-type partition count.

Weights are integer vectors in the epsilon basis.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product


class RootSystemC:
    """Type C_n with positive roots 2e_i and e_j +- e_i for i < j."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("rank must be at least 1")
        self.n = n
        roots = []
        for i in range(n):
            roots.append(tuple(2 if k == i else 0 for k in range(n)))
        for i in range(n):
            for j in range(i + 1, n):
                plus = [0] * n
                plus[i] = plus[j] = 1
                minus = [0] * n
                minus[j], minus[i] = 1, -1
                roots.append(tuple(plus))
                roots.append(tuple(minus))
        self.positive = roots

    @property
    def rho(self):
        return tuple(Fraction(sum(a[k] for a in self.positive), 2) for k in range(self.n))

    def all_roots(self):
        return self.positive + [tuple(-x for x in a) for a in self.positive]


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def weyl_dim(lam):
    """Dimension of the sp_2n irrep with highest weight ``lam`` (epsilon coordinates)."""
    lam = tuple(lam)
    R = RootSystemC(len(lam))
    rho = R.rho
    num = den = Fraction(1)
    for a in R.positive:
        num *= _dot([l + r for l, r in zip(lam, rho)], a)
        den *= _dot(rho, a)
    value = num / den
    assert value.denominator == 1
    return int(value)


def dominant_for_standard(lam):
    """Dominance for the positive system {2e_i, e_j +- e_i : i < j}.

    The dominant chamber is 0 <= lam_1 <= ... <= lam_n.
    """
    return all(x >= 0 for x in lam) and all(a <= b for a, b in zip(lam, lam[1:]))


def height(mu):
    """A linear functional that is positive on every positive root."""
    return sum((k + 1) * x for k, x in enumerate(mu))


def freudenthal(lam):
    """{weight: multiplicity} of the irrep with dominant highest weight lam.

    Dominance is taken for the positive system {2e_i, e_j +- e_i : i < j},
    i.e. 0 <= lam_1 <= ... <= lam_n.
    """
    lam = tuple(int(x) for x in lam)
    n = len(lam)
    if not dominant_for_standard(lam):
        raise ValueError(f"{lam} is not dominant")
    R = RootSystemC(n)
    rho = R.rho
    pos = R.positive
    lr = tuple(l + r for l, r in zip(lam, rho))
    norm_lr = _dot(lr, lr)
    bound = max(lam, default=0)
    top = height(lam)
    candidates = [mu for mu in product(range(-bound, bound + 1), repeat=n)
                  if (sum(mu) - sum(lam)) % 2 == 0 and height(mu) < top]
    candidates.sort(key=height, reverse=True)
    mult = {lam: 1}
    for mu in candidates:
        mr = tuple(x + r for x, r in zip(mu, rho))
        denom = norm_lr - _dot(mr, mr)
        if denom == 0:
            continue
        total = Fraction(0)
        for a in pos:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                if any(abs(x) > bound for x in nu):
                    break
                m = mult.get(nu, 0)
                if m:
                    total += m * _dot(nu, a)
                k += 1
        value = 2 * total / denom
        assert value.denominator == 1
        if value:
            mult[mu] = int(value)
    return mult


def partition_count(omega, vectors, max_parts=None):
    """Ways to write omega as a multiset of ``vectors`` (at most max_parts of them).

    Every vector must have positive :func:`height`.
    """
    vectors = [tuple(v) for v in vectors]
    if any(height(v) <= 0 for v in vectors):
        raise ValueError("partition vectors must have positive height")
    omega = tuple(omega)

    @lru_cache(maxsize=None)
    def count(target, idx, parts):
        if all(x == 0 for x in target):
            return 1
        if idx == len(vectors) or parts == 0 or height(target) < 0:
            return 0
        total = 0
        v = vectors[idx]
        k = 0
        cur = target
        while parts - k >= 0 and height(cur) >= 0:
            total += count(cur, idx + 1, parts - k)
            k += 1
            cur = tuple(x - y for x, y in zip(cur, v))
        return total

    limit = max_parts if max_parts is not None else 10 ** 9
    return count(omega, 0, limit)
