"""The crystal B(lambda) of type A_n on semistandard Young tableaux.

Tableaux are tuples of rows.  The operators use the row reading word read
bottom row first, each row left to right.  In the {i, i+1} subword an ``i``
is a ``+`` and an ``i+1`` is a ``-``; a ``+`` is cancelled by the nearest
uncancelled ``-`` on its left.  What survives looks like ``+...+-...-``:
``f_i`` turns the rightmost surviving ``+`` into ``i+1`` and ``e_i`` turns the
leftmost surviving ``-`` into ``i``.

A :class:`Crystal` stores dense operator tables over element indices; the
module-level functions act directly on tableaux.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from .rootlat import Root, Weight, WeylElement, check_rank, pairing, positive_roots

Tableau = tuple[tuple[int, ...], ...]


def normalize_partition(lam: Sequence[int], n: int) -> tuple[int, ...]:
    """Pad a partition with zeros to length n+1, checking it is one."""
    check_rank(n)
    lam = [int(x) for x in lam]
    while lam and lam[-1] == 0:
        lam.pop()
    if any(x < 0 for x in lam) or any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValueError(f"{tuple(lam)} is not a partition")
    if len(lam) > n + 1:
        raise ValueError(f"partition {tuple(lam)} has more than {n + 1} parts")
    return tuple(lam + [0] * (n + 1 - len(lam)))


def shape(T: Tableau) -> tuple[int, ...]:
    return tuple(len(r) for r in T)


def content(T: Tableau, n: int) -> Weight:
    c = [0] * (n + 1)
    for row in T:
        for x in row:
            c[x - 1] += 1
    return tuple(c)


def encode(T: Tableau) -> tuple[int, ...]:
    """Canonical key: the rows concatenated top to bottom."""
    return tuple(x for row in T for x in row)


def is_semistandard(T: Tableau, n: int) -> bool:
    for r, row in enumerate(T):
        if any(not 1 <= x <= n + 1 for x in row):
            return False
        if any(row[j] > row[j + 1] for j in range(len(row) - 1)):
            return False
        if r > 0:
            above = T[r - 1]
            if len(row) > len(above):
                return False
            if any(above[j] >= row[j] for j in range(len(row))):
                return False
    return True


def semistandard_tableaux(lam: Sequence[int], n: int) -> Iterator[Tableau]:
    """All SSYT of shape ``lam`` with entries in 1..n+1, in encoding order."""
    rows = [r for r in lam if r > 0]
    cells = [(r, c) for r, length in enumerate(rows) for c in range(length)]
    grid = [[0] * length for length in rows]

    def fill(k: int):
        if k == len(cells):
            yield tuple(tuple(row) for row in grid)
            return
        r, c = cells[k]
        low = 1
        if c > 0:
            low = grid[r][c - 1]
        if r > 0:
            low = max(low, grid[r - 1][c] + 1)
        # leave room for the rows below in this column
        below = sum(1 for rr in range(r + 1, len(rows)) if rows[rr] > c)
        for x in range(low, n + 2 - below):
            grid[r][c] = x
            yield from fill(k + 1)
        grid[r][c] = 0

    yield from fill(0)


def _reading_positions(T: Tableau) -> list[tuple[int, int]]:
    return [(r, c) for r in range(len(T) - 1, -1, -1) for c in range(len(T[r]))]


def _signature(T: Tableau, i: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Uncancelled ``+`` and ``-`` positions, in reading order."""
    plus: list[tuple[int, int]] = []
    minus: list[tuple[int, int]] = []
    for r, c in _reading_positions(T):
        x = T[r][c]
        if x == i + 1:
            minus.append((r, c))
        elif x == i:
            if minus:
                minus.pop()
            else:
                plus.append((r, c))
    return plus, minus


def _replace(T: Tableau, pos: tuple[int, int], value: int) -> Tableau:
    r, c = pos
    row = T[r][:c] + (value,) + T[r][c + 1:]
    return T[:r] + (row,) + T[r + 1:]


def f(i: int, T: Tableau) -> Tableau | None:
    plus, _ = _signature(T, i)
    if not plus:
        return None
    return _replace(T, plus[-1], i + 1)


def e(i: int, T: Tableau) -> Tableau | None:
    _, minus = _signature(T, i)
    if not minus:
        return None
    return _replace(T, minus[0], i)


def phi(i: int, T: Tableau) -> int:
    return len(_signature(T, i)[0])


def eps(i: int, T: Tableau) -> int:
    return len(_signature(T, i)[1])


def s_act(i: int, T: Tableau) -> Tableau:
    """Reverse the i-string through ``T``."""
    plus, minus = _signature(T, i)
    k = len(plus) - len(minus)
    op = f if k >= 0 else e
    for _ in range(abs(k)):
        T = op(i, T)
    return T


def w_act(w: WeylElement, T: Tableau) -> Tableau:
    for i in reversed(w.reduced_word()):
        T = s_act(i, T)
    return T


def conjugator(beta: Root) -> tuple[WeylElement, int]:
    """``(w, k)`` with ``w = s_j s_{j+1} ... s_{k-1}`` so that ``w(alpha_k) = beta``."""
    if not beta.positive:
        raise ValueError(f"{beta.name()} is not a positive root")
    n = beta.hi
    return WeylElement.from_word(range(beta.lo, beta.hi), n), beta.hi


class Crystal:
    """Dense operator tables for B(lambda).

    Elements are indices ``0..len-1`` into :attr:`elements`, sorted by
    canonical encoding.  Operator tables hold ``-1`` where the result is zero.
    """

    def __init__(self, n: int, lam: Sequence[int]):
        self.n = n
        self.shape = normalize_partition(lam, n)
        self.elements: list[Tableau] = sorted(semistandard_tableaux(self.shape, n), key=encode)
        self.index = {T: x for x, T in enumerate(self.elements)}
        self.weights: list[Weight] = [content(T, n) for T in self.elements]
        size = len(self.elements)
        self.f_table: dict[int, list[int]] = {}
        self.e_table: dict[int, list[int]] = {}
        self.phi_table: dict[int, list[int]] = {}
        self.eps_table: dict[int, list[int]] = {}
        self.s_table: dict[int, list[int]] = {}
        for i in range(1, n + 1):
            ft, et, pt, qt = [-1] * size, [-1] * size, [0] * size, [0] * size
            for x, T in enumerate(self.elements):
                plus, minus = _signature(T, i)
                pt[x], qt[x] = len(plus), len(minus)
                if plus:
                    ft[x] = self.index[_replace(T, plus[-1], i + 1)]
                if minus:
                    et[x] = self.index[_replace(T, minus[0], i)]
            self.f_table[i], self.e_table[i] = ft, et
            self.phi_table[i], self.eps_table[i] = pt, qt
            st = [0] * size
            for x in range(size):
                k = pt[x] - qt[x]
                y, table = x, ft if k >= 0 else et
                for _ in range(abs(k)):
                    y = table[y]
                st[x] = y
            self.s_table[i] = st
        tops = [x for x in range(size) if all(self.e_table[i][x] < 0 for i in range(1, n + 1))]
        if len(tops) != 1:
            raise RuntimeError(f"expected one highest-weight element, found {len(tops)}")
        self.highest = tops[0]
        self._root_cache: dict[Root, tuple[list[int], list[int], list[int], list[int]]] = {}
        self._by_weight: dict[Weight, list[int]] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(range(len(self.elements)))

    @property
    def lam(self) -> Weight:
        return self.shape

    def weight(self, x: int) -> Weight:
        return self.weights[x]

    def by_weight(self) -> dict[Weight, list[int]]:
        if self._by_weight is None:
            d: dict[Weight, list[int]] = {}
            for x, w in enumerate(self.weights):
                d.setdefault(w, []).append(x)
            self._by_weight = d
        return self._by_weight

    def elements_of_weight(self, mu: Sequence[int]) -> list[int]:
        return self.by_weight().get(tuple(mu), [])

    def lowest(self) -> int:
        return self.w_act(WeylElement(tuple(range(self.n + 1, 0, -1))), self.highest)

    # simple operators

    def f(self, i: int, x: int) -> int | None:
        y = self.f_table[i][x]
        return None if y < 0 else y

    def e(self, i: int, x: int) -> int | None:
        y = self.e_table[i][x]
        return None if y < 0 else y

    def phi(self, i: int, x: int) -> int:
        return self.phi_table[i][x]

    def eps(self, i: int, x: int) -> int:
        return self.eps_table[i][x]

    def s(self, i: int, x: int) -> int:
        return self.s_table[i][x]

    def w_act(self, w: WeylElement, x: int) -> int:
        return self.apply_word(w.reduced_word(), x)

    def apply_word(self, word: Sequence[int], x: int) -> int:
        """Apply ``s_{i_1} ... s_{i_k}`` (rightmost letter first)."""
        for i in reversed(word):
            x = self.s_table[i][x]
        return x

    # modified operators

    def _root_tables(self, beta: Root):
        if beta in self._root_cache:
            return self._root_cache[beta]
        w, k = conjugator(beta)
        if k > self.n:
            raise ValueError(f"root {beta.name()} out of range for rank {self.n}")
        word = w.reduced_word()
        inv_word = tuple(reversed(word))
        size = len(self)
        ft, et, pt, qt = [-1] * size, [-1] * size, [0] * size, [0] * size
        for x in range(size):
            y = self.apply_word(inv_word, x)
            pt[x], qt[x] = self.phi_table[k][y], self.eps_table[k][y]
            fy = self.f_table[k][y]
            if fy >= 0:
                ft[x] = self.apply_word(word, fy)
            ey = self.e_table[k][y]
            if ey >= 0:
                et[x] = self.apply_word(word, ey)
        self._root_cache[beta] = (ft, et, pt, qt)
        return ft, et, pt, qt

    def f_alpha(self, beta: Root, x: int) -> int | None:
        y = self._root_tables(beta)[0][x]
        return None if y < 0 else y

    def e_alpha(self, beta: Root, x: int) -> int | None:
        y = self._root_tables(beta)[1][x]
        return None if y < 0 else y

    def phi_alpha(self, beta: Root, x: int) -> int:
        return self._root_tables(beta)[2][x]

    def eps_alpha(self, beta: Root, x: int) -> int:
        return self._root_tables(beta)[3][x]

    def f_alpha_power(self, beta: Root, x: int, k: int) -> int | None:
        ft = self._root_tables(beta)[0]
        for _ in range(k):
            x = ft[x]
            if x < 0:
                return None
        return x

    def e_alpha_power(self, beta: Root, x: int, k: int) -> int | None:
        et = self._root_tables(beta)[1]
        for _ in range(k):
            x = et[x]
            if x < 0:
                return None
        return x

    def conjugated_f(self, v: WeylElement, k: int, x: int) -> int | None:
        """``v f_k v^{-1}`` applied to ``x``; used to test independence of the conjugator."""
        y = self.w_act(v.inverse(), x)
        fy = self.f_table[k][y]
        return None if fy < 0 else self.w_act(v, fy)

    def phi_sum(self, x: int) -> int:
        return sum(self.phi_alpha(b, x) for b in positive_roots(self.n))

    def eps_sum(self, x: int) -> int:
        return sum(self.eps_alpha(b, x) for b in positive_roots(self.n))

    def check_pairing(self, x: int, beta: Root) -> bool:
        return self.phi_alpha(beta, x) - self.eps_alpha(beta, x) == pairing(self.weights[x], beta)

    def f_closure(self) -> set[int]:
        """Elements reachable from the highest element by the f_i."""
        seen = {self.highest}
        stack = [self.highest]
        while stack:
            x = stack.pop()
            for i in range(1, self.n + 1):
                y = self.f_table[i][x]
                if y >= 0 and y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def to_dot(self) -> str:
        colors = ["blue", "red", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]
        lines = ["digraph crystal {"]
        for x, T in enumerate(self.elements):
            label = "/".join("".join(map(str, r)) for r in T if r)
            lines.append(f'  t{x} [label="{label}"];')
        for i in range(1, self.n + 1):
            col = colors[(i - 1) % len(colors)]
            for x in range(len(self)):
                y = self.f_table[i][x]
                if y >= 0:
                    lines.append(f'  t{x} -> t{y} [label="{i}", color={col}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


_CACHE: dict[tuple[int, tuple[int, ...]], Crystal] = {}


def build_crystal(n: int, lam: Sequence[int]) -> Crystal:
    """Build (or fetch from cache) the crystal B(lam) for rank n."""
    key = (n, normalize_partition(lam, n))
    if key not in _CACHE:
        _CACHE[key] = Crystal(n, key[1])
    return _CACHE[key]


def tableau_to_json(T: Tableau) -> list[list[int]]:
    return [list(r) for r in T if r]
