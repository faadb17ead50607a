"""Root and weight lattice arithmetic for type A_n.

Weights are content vectors: tuples of n+1 integers.  Two weights live in
the same coset of the root lattice exactly when their coordinate sums agree,
so the SL weight ``(1, 0, -1)`` and the GL weight ``(2, 1, 0)`` describe the
same point up to a central shift.  Every statistic here is invariant under
that shift.

Roots are intervals ``alpha_{j,k} = alpha_j + ... + alpha_k`` with a sign.
Affine coroots are ``c*delta + s*beta^vee``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Weight = tuple[int, ...]


def as_weight(values: Iterable[int]) -> Weight:
    return tuple(int(x) for x in values)


def check_rank(n: int) -> None:
    if n < 1:
        raise ValueError(f"rank must be >= 1, got {n}")


@dataclass(frozen=True, order=True)
class Root:
    """The root ``sign * (alpha_lo + ... + alpha_hi)`` (1-based indices)."""

    lo: int
    hi: int
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi:
            raise ValueError(f"bad root interval [{self.lo}, {self.hi}]")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def positive(self) -> bool:
        return self.sign == 1

    def __neg__(self) -> Root:
        return Root(self.lo, self.hi, -self.sign)

    def vector(self, n: int) -> Weight:
        """Content vector ``sign * (e_lo - e_{hi+1})``."""
        if self.hi > n:
            raise ValueError(f"root {self} out of range for rank {n}")
        v = [0] * (n + 1)
        v[self.lo - 1] = self.sign
        v[self.hi] = -self.sign
        return tuple(v)

    def name(self) -> str:
        if self.lo == self.hi:
            core = f"a{self.lo}"
        else:
            sep = "," if self.hi > 9 else ""
            core = f"a{self.lo}{sep}{self.hi}"
        return core if self.sign > 0 else "-" + core


@lru_cache(maxsize=None)
def positive_roots(n: int) -> tuple[Root, ...]:
    check_rank(n)
    return tuple(Root(j, k) for j in range(1, n + 1) for k in range(j, n + 1))


def simple_root(i: int) -> Root:
    return Root(i, i)


def highest_root(n: int) -> Root:
    return Root(1, n)


def pairing(mu: Sequence[int], beta: Root) -> int:
    """``<mu, beta^vee>``."""
    if beta.hi >= len(mu):
        raise ValueError(f"root {beta} out of range for weight of length {len(mu)}")
    return beta.sign * (mu[beta.lo - 1] - mu[beta.hi])


def rho_pair2(mu: Sequence[int]) -> int:
    """Twice ``<mu, rho^vee>``; always an integer."""
    n = len(mu) - 1
    return sum(x * (n + 2 - 2 * i) for i, x in enumerate(mu, start=1))


def length_along(mu: Sequence[int], beta: Root) -> int:
    p = pairing(mu, beta)
    return p if p >= 0 else -p - 1


def length(mu: Sequence[int]) -> int:
    return sum(length_along(mu, b) for b in positive_roots(len(mu) - 1))


def is_dominant(mu: Sequence[int]) -> bool:
    return all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1))


# -- Weyl group -------------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    """A permutation in one-line notation: ``perm[j-1] = w(j)``.

    ``w`` moves the entry in position ``j`` of a content vector to position
    ``w(j)``.
    """

    perm: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError(f"not a permutation: {self.perm}")

    @classmethod
    def identity(cls, n: int) -> WeylElement:
        return cls(tuple(range(1, n + 2)))

    @classmethod
    def simple(cls, i: int, n: int) -> WeylElement:
        p = list(range(1, n + 2))
        p[i - 1], p[i] = p[i], p[i - 1]
        return cls(tuple(p))

    @classmethod
    def from_word(cls, word: Iterable[int], n: int) -> WeylElement:
        w = cls.identity(n)
        for i in word:
            w = w * cls.simple(i, n)
        return w

    @property
    def rank(self) -> int:
        return len(self.perm) - 1

    def __mul__(self, other: WeylElement) -> WeylElement:
        # (uv)(j) = u(v(j))
        return WeylElement(tuple(self.perm[j - 1] for j in other.perm))

    def inverse(self) -> WeylElement:
        inv = [0] * len(self.perm)
        for j, wj in enumerate(self.perm, start=1):
            inv[wj - 1] = j
        return WeylElement(tuple(inv))

    def act(self, mu: Sequence[int]) -> Weight:
        out = [0] * len(mu)
        for j, x in enumerate(mu):
            out[self.perm[j] - 1] = x
        return tuple(out)

    def length(self) -> int:
        p = self.perm
        return sum(1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b])

    def reduced_word(self) -> tuple[int, ...]:
        """A reduced word ``(i_1, ..., i_k)`` with ``w = s_{i_1} ... s_{i_k}``."""
        p = list(self.perm)
        tail = []
        while True:
            for i in range(len(p) - 1):
                if p[i] > p[i + 1]:
                    # w = w' s_{i+1}; peel the right descent off
                    p[i], p[i + 1] = p[i + 1], p[i]
                    tail.append(i + 1)
                    break
            else:
                break
        return tuple(reversed(tail))


def weyl_group(n: int) -> Iterator[WeylElement]:
    from itertools import permutations

    for p in permutations(range(1, n + 2)):
        yield WeylElement(p)


def dominant_rep(mu: Sequence[int]) -> tuple[Weight, WeylElement]:
    """Sort ``mu`` descending; also return a permutation doing the sort."""
    order = sorted(range(len(mu)), key=lambda j: -mu[j])
    perm = [0] * len(mu)
    for pos, j in enumerate(order, start=1):
        perm[j] = pos
    return tuple(mu[j] for j in order), WeylElement(tuple(perm))


def dominance_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a <= b`` in dominance order (equal sums, partial sums of b-a >= 0)."""
    if len(a) != len(b) or sum(a) != sum(b):
        return False
    acc = 0
    for x, y in zip(a, b):
        acc += y - x
        if acc < 0:
            return False
    return True


def bruhat_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """``mu <= lam`` for dominant ``lam``: ``mu`` lies in the convex hull of ``W*lam``."""
    if not is_dominant(lam):
        raise ValueError(f"{tuple(lam)} is not dominant")
    if len(mu) != len(lam):
        raise ValueError("weights of different rank")
    if sum(mu) != sum(lam):
        raise ValueError("weights in different cosets of the root lattice")
    return dominance_leq(sorted(mu, reverse=True), lam)


def lower_interval(lam: Sequence[int]) -> list[Weight]:
    """All weights ``mu <= lam``, in lexicographically decreasing order."""
    if not is_dominant(lam):
        raise ValueError(f"{tuple(lam)} is not dominant")
    lam = tuple(lam)
    lo, hi, total, size = lam[-1], lam[0], sum(lam), len(lam)
    out: list[Weight] = []

    def rec(prefix: list[int], remaining: int):
        slots = size - len(prefix)
        if slots == 1:
            if lo <= remaining <= hi:
                cand = tuple(prefix) + (remaining,)
                if bruhat_leq(cand, lam):
                    out.append(cand)
            return
        for x in range(hi, lo - 1, -1):
            rest = remaining - x
            if lo * (slots - 1) <= rest <= hi * (slots - 1):
                prefix.append(x)
                rec(prefix, rest)
                prefix.pop()

    rec([], total)
    return out


def dominant_below(lam: Sequence[int]) -> list[Weight]:
    return [mu for mu in lower_interval(lam) if is_dominant(mu)]


# -- affine roots -----------------------------------------------------------


@dataclass(frozen=True, order=True)
class AffineRoot:
    """The affine coroot ``level*delta + sign*beta^vee`` with ``beta = alpha_{lo,hi}``."""

    level: int
    lo: int
    hi: int
    sign: int

    def __post_init__(self):
        if not 1 <= self.lo <= self.hi:
            raise ValueError(f"bad root interval [{self.lo}, {self.hi}]")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def root(self) -> Root:
        return Root(self.lo, self.hi)

    @property
    def positive(self) -> bool:
        return self.level > 0 or (self.level == 0 and self.sign == 1)

    def __neg__(self) -> AffineRoot:
        return AffineRoot(-self.level, self.lo, self.hi, -self.sign)

    def normalized(self) -> AffineRoot:
        return self if self.positive else -self

    def to_json(self) -> dict:
        return {"level": self.level, "lo": self.lo, "hi": self.hi, "sign": "+" if self.sign > 0 else "-"}

    @classmethod
    def from_json(cls, d: dict) -> AffineRoot:
        return cls(int(d["level"]), int(d["lo"]), int(d["hi"]), 1 if d["sign"] == "+" else -1)

    def __str__(self) -> str:
        core = Root(self.lo, self.hi).name()
        if self.level == 0:
            return core if self.sign > 0 else "-" + core
        d = "d" if self.level == 1 else f"{self.level}d"
        return f"{d}{'+' if self.sign > 0 else '-'}{core}"


def bruhat_less_reflection(mu: Sequence[int], a: AffineRoot) -> bool:
    """Whether ``s_a(mu) < mu`` for a positive affine coroot ``a``.

    For ``a = m*delta + beta^vee`` this holds iff ``<mu, beta^vee> > m``.
    """
    return a.sign * pairing(mu, a.root) > a.level


def reflect(mu: Sequence[int], a: AffineRoot) -> Weight:
    """Affine reflection ``s_a`` acting on weights at level zero.

    Writing ``a = m*delta - gamma^vee`` gives
    ``s_a(mu) = mu - (<mu, gamma^vee> + m) * gamma``.
    """
    gamma = Root(a.lo, a.hi, -a.sign)
    k = pairing(mu, gamma) + a.level
    g = gamma.vector(len(mu) - 1)
    return tuple(x - k * y for x, y in zip(mu, g))


def root_multiple(diff: Sequence[int]) -> tuple[Root, int] | None:
    """Write ``diff = k * beta`` with ``beta`` a positive root, if possible."""
    nz = [(i, x) for i, x in enumerate(diff) if x != 0]
    if len(nz) != 2:
        return None
    (i, x), (j, y) = nz
    if x != -y:
        return None
    # i < j; the positive root e_i - e_j is alpha_{i+1, j}
    return Root(i + 1, j), x


def edge_label(mu1: Sequence[int], mu2: Sequence[int]) -> AffineRoot | None:
    """Label of the moment-graph edge joining two weights, or None."""
    if len(mu1) != len(mu2):
        raise ValueError("weights of different rank")
    if sum(mu1) != sum(mu2):
        raise ValueError("weights in different cosets of the root lattice")
    rm = root_multiple([b - a for a, b in zip(mu1, mu2)])
    if rm is None:
        return None
    beta, _ = rm
    s = pairing(mu1, beta) + pairing(mu2, beta)
    # s is even because mu2 - mu1 is a multiple of beta
    m = -s // 2
    return AffineRoot(m, beta.lo, beta.hi, -1).normalized()


def wall_value(A: Sequence, C, a: AffineRoot) -> Fraction:
    """``<eta, a>`` for ``eta = sum A_i varpi_i + C d``."""
    s = sum(Fraction(A[i - 1]) for i in range(a.lo, a.hi + 1))
    return a.level * Fraction(C) + a.sign * s
