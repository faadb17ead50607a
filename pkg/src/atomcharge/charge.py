"""Charge, Kostka-Foulkes polynomials and two independent oracles.

``charge2(T) = 2Z(T) - l(wt T)`` is twice the charge.  The Kostka-Foulkes
polynomial is returned in v with q = v^2.

Oracles:

* :func:`llt_charge2` averages ``sum_i i*min(eps_i, phi_i)`` over the Weyl
  group orbit of a tableau.
* :func:`kostant_oracle` is Lusztig's alternating sum of the q-Kostant
  partition function; it never touches a crystal.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

from .atoms import atom_decomposition
from .crystal import Crystal, build_crystal, normalize_partition
from .errors import VerificationError
from .poly import LaurentPoly
from .rootlat import (
    Weight,
    bruhat_leq,
    dominant_below,
    is_dominant,
    length,
    rho_pair2,
    weyl_group,
)


def charge2(C: Crystal, x: int) -> int:
    return atom_decomposition(C).z2[x] - length(C.weights[x])


def _check_mu(lam: Weight, mu: Sequence[int]) -> Weight:
    mu = tuple(int(a) for a in mu)
    if len(mu) != len(lam):
        raise ValueError(f"weight {mu} must have {len(lam)} entries")
    if sum(mu) != sum(lam):
        raise ValueError(f"weight {mu} has sum {sum(mu)}, expected {sum(lam)}")
    if not is_dominant(mu):
        raise ValueError(f"weight {mu} is not dominant")
    return mu


def kostka_foulkes(n: int, lam: Sequence[int], mu: Sequence[int]) -> LaurentPoly:
    """``K_{lam,mu}`` as a polynomial in v (q = v^2)."""
    C = build_crystal(n, lam)
    mu = _check_mu(C.lam, mu)
    if not bruhat_leq(mu, C.lam):
        raise ValueError(f"weight {mu} is not below {C.lam}")
    return LaurentPoly.from_exponents(charge2(C, x) for x in C.elements_of_weight(mu))


# -- orbit-averaged oracle -----------------------------------------------------


@lru_cache(maxsize=None)
def _weyl_bfs(n: int) -> tuple[tuple[int, int], ...]:
    """Spanning tree of the Cayley graph: entry k is (parent, i), w_k = s_i w_parent."""
    from .rootlat import WeylElement

    start = WeylElement.identity(n)
    seen = {start: 0}
    order = [start]
    tree = [(-1, 0)]
    k = 0
    while k < len(order):
        w = order[k]
        for i in range(1, n + 1):
            u = WeylElement.simple(i, n) * w
            if u not in seen:
                seen[u] = len(order)
                order.append(u)
                tree.append((k, i))
        k += 1
    return tuple(tree)


def llt_charge2(C: Crystal, x: int) -> int:
    """Twice the orbit average of ``sum_i i * min(eps_i, phi_i)``."""
    n = C.n
    tree = _weyl_bfs(n)
    orbit = [x] * len(tree)
    total = 0
    for k, (parent, i) in enumerate(tree):
        if parent >= 0:
            orbit[k] = C.s_table[i][orbit[parent]]
        y = orbit[k]
        total += sum(j * min(C.eps_table[j][y], C.phi_table[j][y]) for j in range(1, n + 1))
    q, r = divmod(2 * total, factorial(n + 1))
    if r:
        raise VerificationError(f"orbit sum {total} is not divisible as expected")
    return q


# -- q-Kostant partition function ------------------------------------------------


@lru_cache(maxsize=None)
def _root_supports(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if j <= i <= k else 0 for i in range(1, n + 1))
                 for j in range(1, n + 1) for k in range(j, n + 1))


@lru_cache(maxsize=None)
def _kostant(n: int, k: int, gamma: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """q-Kostant count of ``gamma`` using the first k positive roots, as (q-exp, coeff) pairs."""
    if not any(gamma):
        return ((0, 1),)
    if k == 0:
        return ()
    root = _root_supports(n)[k - 1]
    acc: dict[int, int] = {}
    g = list(gamma)
    used = 0
    while all(a >= 0 for a in g):
        for e, c in _kostant(n, k - 1, tuple(g)):
            acc[e + used] = acc.get(e + used, 0) + c
        g = [a - b for a, b in zip(g, root)]
        used += 1
    return tuple(sorted((e, c) for e, c in acc.items() if c))


def q_kostant(n: int, gamma: Sequence[int]) -> LaurentPoly:
    """q-Kostant partition function of ``gamma`` (simple-root coordinates), in v."""
    if any(a < 0 for a in gamma):
        return LaurentPoly()
    return LaurentPoly({2 * e: c for e, c in _kostant(n, len(_root_supports(n)), tuple(gamma))})


def kostant_oracle(n: int, lam: Sequence[int], mu: Sequence[int]) -> LaurentPoly:
    """Lusztig's formula ``sum_w (-1)^l(w) P_q(w(lam+rho) - (mu+rho))``."""
    lam = normalize_partition(lam, n)
    mu = _check_mu(lam, mu)
    rho = tuple(range(n, -1, -1))
    lr = tuple(a + b for a, b in zip(lam, rho))
    mr = tuple(a + b for a, b in zip(mu, rho))
    total = LaurentPoly()
    for w in weyl_group(n):
        diff = [a - b for a, b in zip(w.act(lr), mr)]
        coords, acc = [], 0
        for d in diff[:-1]:
            acc += d
            coords.append(acc)
        if any(c < 0 for c in coords):
            continue
        term = q_kostant(n, coords)
        total = total - term if w.length() % 2 else total + term
    return total


def kostka_number(lam: Sequence[int], mu: Sequence[int]) -> int:
    """Number of SSYT of shape lam and content mu, by peeling horizontal strips."""
    lam = tuple(x for x in lam if x > 0)
    mu = tuple(mu)
    return _kostka_number(lam, mu)


@lru_cache(maxsize=None)
def _kostka_number(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if sum(lam) != sum(mu) or any(a < 0 for a in mu):
        return 0
    if not mu:
        return 1 if not lam else 0
    k = mu[-1]
    rest = mu[:-1]
    # the cells holding the largest letter form a horizontal strip of size k
    count = 0

    def strips(i: int, removed: int, shape: list[int]):
        nonlocal count
        if i == len(lam):
            if removed == k:
                count += _kostka_number(tuple(x for x in shape if x > 0), rest)
            return
        below = lam[i + 1] if i + 1 < len(lam) else 0
        for r in range(0, min(lam[i] - below, k - removed) + 1):
            shape.append(lam[i] - r)
            strips(i + 1, removed + r, shape)
            shape.pop()

    strips(0, 0, [])
    return count


# -- expansion in the N basis ----------------------------------------------------


@dataclass(frozen=True)
class BasisExpansion:
    terms: tuple[tuple[Weight, int], ...]

    def coefficient_at(self, mu: Sequence[int]) -> LaurentPoly:
        """Recover ``K_{lam,mu}`` in v from the expansion."""
        mu = tuple(mu)
        exps = [e + rho_pair2(w) - rho_pair2(mu) for w, e in self.terms if bruhat_leq(mu, w)]
        return LaurentPoly.from_exponents(exps)

    def to_text(self, variable: str = "v") -> str:
        parts = []
        for w, e in self.terms:
            name = "N_(" + ",".join(map(str, w)) + ")"
            coeff = LaurentPoly.monomial(e).to_text(variable)
            parts.append(name if coeff == "1" else f"{coeff} {name}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> list[dict]:
        return [{"weight": list(w), "v_exponent": e} for w, e in self.terms]


def kl_in_n_basis(n: int, lam: Sequence[int]) -> BasisExpansion:
    """One term per atom: (highest weight, 2Z - 2<hw, rho>)."""
    C = build_crystal(n, lam)
    terms = []
    for a in atom_decomposition(C):
        if a.atomic_number2 is None:
            raise VerificationError(f"atomic number not constant on atom {a.highest_weight}")
        e = a.atomic_number2 - rho_pair2(a.highest_weight)
        if e < 0 or e % 2:
            raise VerificationError(f"exponent {e} for atom {a.highest_weight} is not a nonnegative even integer")
        terms.append((a.highest_weight, e))
    terms.sort(key=lambda t: (t[1], [-x for x in t[0]]))
    return BasisExpansion(tuple(terms))


def partitions_up_to(size: int, parts: int) -> list[tuple[int, ...]]:
    """Partitions of every total up to ``size`` with at most ``parts`` parts."""
    out = []

    def rec(prefix, remaining, cap):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        if len(prefix) == parts:
            return
        for x in range(min(cap, remaining), 0, -1):
            prefix.append(x)
            rec(prefix, remaining - x, x)
            prefix.pop()

    for total in range(size + 1):
        rec([], total, total)
    return out


def kostka_table(n: int, lam: Sequence[int]) -> dict[Weight, LaurentPoly]:
    lam = normalize_partition(lam, n)
    return {mu: kostka_foulkes(n, lam, mu) for mu in dominant_below(lam)}

