"""Atomic decomposition of B(lambda) and the atomic number Z.

Atoms are the connected components of the graph with edges ``T - s_i(T)``
for every i and ``T - f_n(T)``.  The atomic number is stored doubled since
it can be a half-integer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .crystal import Crystal
from .rootlat import Weight, bruhat_leq, is_dominant, rho_pair2


@dataclass(frozen=True)
class Atom:
    members: tuple[int, ...]
    highest_weight: Weight
    atomic_number2: int

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self, crystal: Crystal) -> dict:
        from .crystal import encode

        return {
            "highest_weight": list(self.highest_weight),
            "members": [list(encode(crystal.elements[x])) for x in self.members],
            "atomic_number2": self.atomic_number2,
        }


def atomic_number2(C: Crystal, x: int) -> int:
    """``2 Z(T) = -2<wt T, rho> + 2 sum_beta phi_beta(T)``."""
    return -rho_pair2(C.weights[x]) + 2 * C.phi_sum(x)


def atomic_number2_eps(C: Crystal, x: int) -> int:
    """Same quantity via the epsilon form ``2<wt T, rho> + 2 sum_beta eps_beta(T)``."""
    return rho_pair2(C.weights[x]) + 2 * C.eps_sum(x)


def _components(C: Crystal) -> list[list[int]]:
    parent = list(range(len(C)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for i in range(1, C.n + 1):
        for x, y in enumerate(C.s_table[i]):
            union(x, y)
    for x, y in enumerate(C.f_table[C.n]):
        if y >= 0:
            union(x, y)
    groups: dict[int, list[int]] = {}
    for x in range(len(C)):
        groups.setdefault(find(x), []).append(x)
    return list(groups.values())


def _top_weight(C: Crystal, members: list[int]) -> Weight:
    dom = [C.weights[x] for x in members if is_dominant(C.weights[x])]
    for cand in dom:
        if all(bruhat_leq(w, cand) for w in dom):
            return cand
    raise RuntimeError("component has no dominant maximum")


class AtomDecomposition:
    """All atoms of a crystal, ordered by the index of their first member."""

    def __init__(self, C: Crystal):
        self.crystal = C
        self.z2 = [atomic_number2(C, x) for x in range(len(C))]
        atoms = []
        for members in sorted(_components(C), key=min):
            hw = _top_weight(C, members)
            values = {self.z2[x] for x in members}
            z = self.z2[members[0]] if len(values) == 1 else None
            atoms.append(Atom(tuple(members), hw, z))
        self.atoms: list[Atom] = atoms
        self._atom_index = [0] * len(C)
        for k, a in enumerate(atoms):
            for x in a.members:
                self._atom_index[x] = k

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def atom_index(self, x: int) -> int:
        return self._atom_index[x]

    def atom_of(self, x: int) -> Atom:
        return self.atoms[self._atom_index[x]]

    def is_constant(self) -> bool:
        """Whether the atomic number is constant on every atom."""
        return all(a.atomic_number2 is not None for a in self.atoms)


_CACHE: dict[tuple, AtomDecomposition] = {}


def atom_decomposition(C: Crystal) -> AtomDecomposition:
    key = (C.n, C.shape)
    dec = _CACHE.get(key)
    if dec is None or dec.crystal is not C:
        dec = AtomDecomposition(C)
        _CACHE[key] = dec
    return dec
