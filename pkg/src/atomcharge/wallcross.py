"""Moment graphs, twisted Bruhat graphs and the wall-crossing recharge engine.

Conventions
-----------
``WallSequence.walls`` lists walls in the order a cocharacter meets them when
travelling from the parabolic chamber to the KL chamber.  The engine indexes
states by the number ``m`` of walls still to be crossed: ``m = M`` is the
parabolic chamber and ``m = 0`` the KL chamber.  The walls still uncrossed at
state ``m`` are the last ``m`` entries of ``walls`` (equivalently the first
``m`` roots of the reflection order), and the step ``m -> m-1`` crosses
``reflection_order[m-1]``.

Recharges are stored doubled (``r2``) and so are the atomic numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .atoms import Atom, AtomDecomposition, atom_decomposition
from .charge import kostka_foulkes
from .crystal import Crystal
from .errors import EngineFailure, VerificationError
from .poly import LaurentPoly
from .rootlat import (
    AffineRoot,
    Root,
    Weight,
    bruhat_leq,
    bruhat_less_reflection,
    edge_label,
    is_dominant,
    length,
    length_along,
    lower_interval,
    pairing,
    positive_roots,
    reflect,
    rho_pair2,
    wall_value,
)

V_MINUS_2 = LaurentPoly({-2: 1})
ONE_MINUS_V_MINUS_2 = LaurentPoly({0: 1, -2: -1})


def _wstr(mu: Sequence[int]) -> str:
    return "(" + ",".join(map(str, mu)) + ")"


# -- moment graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class Edge:
    src: Weight
    dst: Weight
    label: AffineRoot


class MomentGraph:
    """Weights below ``top`` with an edge for every reflection-related pair.

    Each edge points from the smaller weight to the larger one.
    """

    def __init__(self, n: int, top: Sequence[int]):
        self.n = n
        self.top: Weight = tuple(top)
        if not is_dominant(self.top):
            raise ValueError(f"{self.top} is not dominant")
        self.vertices: list[Weight] = lower_interval(self.top)
        self.index = {mu: k for k, mu in enumerate(self.vertices)}
        span = self.top[0] - self.top[-1]
        edges = []
        for mu in self.vertices:
            for beta in positive_roots(n):
                b = beta.vector(n)
                for k in range(1, span + 1):
                    nu = tuple(x + k * y for x, y in zip(mu, b))
                    if nu not in self.index:
                        continue
                    label = edge_label(mu, nu)
                    if bruhat_less_reflection(mu, label):
                        edges.append(Edge(nu, mu, label))
                    else:
                        edges.append(Edge(mu, nu, label))
        edges.sort(key=lambda e: (self.index[e.src], self.index[e.dst]))
        self.edges: list[Edge] = edges
        self.by_label: dict[AffineRoot, list[Edge]] = {}
        for e in edges:
            self.by_label.setdefault(e.label, []).append(e)

    def __contains__(self, mu) -> bool:
        return tuple(mu) in self.index

    def labels(self) -> set[AffineRoot]:
        return set(self.by_label)

    def in_degrees(self, reversed_labels: Iterable[AffineRoot] = ()) -> dict[Weight, int]:
        rev = set(reversed_labels)
        deg = {mu: 0 for mu in self.vertices}
        for e in self.edges:
            deg[e.src if e.label in rev else e.dst] += 1
        return deg

    def to_dot(self, reversed_labels: Iterable[AffineRoot] = (), name: str = "moment") -> str:
        rev = set(reversed_labels)
        lines = [f"digraph {name} {{"]
        for k, mu in enumerate(self.vertices):
            lines.append(f'  w{k} [label="{_wstr(mu)}"];')
        for e in self.edges:
            a, b = self.index[e.src], self.index[e.dst]
            if e.label in rev:
                lines.append(f'  w{b} -> w{a} [label="{e.label}", reversed=true, style=dashed, color=red];')
            else:
                lines.append(f'  w{a} -> w{b} [label="{e.label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


_GRAPHS: dict[tuple[int, Weight], MomentGraph] = {}


def moment_graph(n: int, top: Sequence[int]) -> MomentGraph:
    key = (n, tuple(top))
    if key not in _GRAPHS:
        _GRAPHS[key] = MomentGraph(n, key[1])
    return _GRAPHS[key]


# -- walls ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WallSequence:
    n: int
    walls: tuple[AffineRoot, ...]

    @property
    def M(self) -> int:
        return len(self.walls)

    def reflection_order(self) -> tuple[AffineRoot, ...]:
        return tuple(reversed(self.walls))

    def inverted(self, m: int) -> frozenset[AffineRoot]:
        """Walls not yet crossed when ``m`` steps remain."""
        if not 0 <= m <= self.M:
            raise ValueError(f"step {m} out of range 0..{self.M}")
        return frozenset(self.reflection_order()[:m])

    def step_wall(self, m: int) -> AffineRoot:
        """The wall crossed going from state ``m`` to state ``m-1``."""
        if not 1 <= m <= self.M:
            raise ValueError(f"step {m} out of range 1..{self.M}")
        return self.walls[self.M - m]


def family_walls(labels: set[AffineRoot], n: int, r: int) -> list[AffineRoot]:
    """Walls ``c*delta - alpha_{k,r}`` present in ``labels``: level descending, then k descending."""
    levels = [a.level for a in labels if a.sign < 0 and a.hi == r and a.level > 0]
    if not levels:
        return []
    out = []
    for c in range(max(levels), 0, -1):
        for k in range(r, 0, -1):
            a = AffineRoot(c, k, r, -1)
            if a in labels:
                out.append(a)
    return out


def wall_sequence(G: MomentGraph) -> WallSequence:
    return WallSequence(G.n, tuple(family_walls(G.labels(), G.n, G.n)))


def full_wall_path(G: MomentGraph) -> list[AffineRoot]:
    """Walls from the MV chamber to the KL chamber, one rank at a time.

    The last block is :func:`wall_sequence`; the earlier blocks carry the
    cocharacter through the parabolic chambers of the smaller ranks.
    """
    labels = G.labels()
    path = []
    for r in range(1, G.n + 1):
        path.extend(family_walls(labels, G.n, r))
    return path


def inversion_sequence(n: int, count: int) -> list[tuple[int, Weight]]:
    """First ``count`` inversions of the word ``(s_0 s_1 ... s_n)^infinity``.

    Affine coroots are returned as ``(level, finite vector)`` pairs.
    """
    simple = []
    theta = [0] * (n + 1)
    theta[0], theta[n] = -1, 1
    simple.append((1, tuple(theta)))
    for i in range(1, n + 1):
        v = [0] * (n + 1)
        v[i - 1], v[i] = 1, -1
        simple.append((0, tuple(v)))

    def refl(i: int, root: tuple[int, Weight]) -> tuple[int, Weight]:
        ci, vi = simple[i]
        c, v = root
        k = sum(a * b for a, b in zip(v, vi))
        return c - k * ci, tuple(a - k * b for a, b in zip(v, vi))

    word = [(j % (n + 1)) for j in range(count)]
    out = []
    for m, i in enumerate(word):
        root = simple[i]
        for j in reversed(word[:m]):
            root = refl(j, root)
        out.append(root)
    return out


def _as_affine(root: tuple[int, Weight]) -> AffineRoot | None:
    c, v = root
    nz = [(i, x) for i, x in enumerate(v) if x]
    if len(nz) != 2:
        return None
    (i, x), (j, y) = nz
    if x == 1 and y == -1:
        return AffineRoot(c, i + 1, j, 1)
    if x == -1 and y == 1:
        return AffineRoot(c, i + 1, j, -1)
    return None


def check_reflection_order(S: WallSequence, labels: set[AffineRoot] | None = None) -> list[str]:
    """Compare the wall order with the inversions of ``(s_0 ... s_n)^infinity``."""
    n = S.n
    if not S.walls:
        return []
    N = max(a.level for a in S.walls)
    problems = []
    inv = [_as_affine(r) for r in inversion_sequence(n, N * n)]
    for a in inv:
        if a is None or a.sign > 0 or a.hi != n or a.level <= 0:
            problems.append(f"inversion {a} is outside the family c*delta - alpha_(k,n)")
    wanted = set(S.walls) if labels is None else labels
    restricted = tuple(a for a in inv if a in wanted)
    if restricted != S.reflection_order():
        problems.append("reflection order differs from the reversed wall sequence")
    return problems


def crossing_order(A: Sequence, C, walls: Iterable[AffineRoot]) -> list[AffineRoot]:
    """Order in which ``eta(t) = eta_P + t d`` meets the walls negative at ``eta_P``."""
    hits = []
    for a in walls:
        val = wall_value(A, C, a)
        if val < 0:
            # the d-coefficient grows by t, so <eta(t), a> = val + a.level * t
            hits.append((Fraction(-val, a.level), a))
    if len({t for t, _ in hits}) != len(hits):
        raise ValueError("cocharacter path meets two walls at once")
    return [a for _, a in sorted(hits, key=lambda h: h[0])]


def sample_parabolic_cocharacter(n: int, N: int) -> tuple[list[int], int]:
    """A cocharacter ``(A, C)`` satisfying the strict inequalities of the family."""
    A = [1] * n
    C = N * (n - 1) + 1
    A[n - 1] = N * C + 1
    return A, C


def probe_wall_order(S: WallSequence, A: Sequence, C) -> tuple[bool, list[AffineRoot]]:
    order = crossing_order(A, C, S.walls)
    return tuple(order) == S.walls, order


# -- twisted graphs -------------------------------------------------------------------


@dataclass(frozen=True)
class TwistedGraph:
    base: MomentGraph
    m: int
    reversed_labels: frozenset[AffineRoot]

    def in_degrees(self) -> dict[Weight, int]:
        return self.base.in_degrees(self.reversed_labels)

    def in_degree(self, mu: Sequence[int]) -> int:
        return self.in_degrees()[tuple(mu)]

    def oriented_edges(self) -> list[tuple[Weight, Weight, AffineRoot, bool]]:
        out = []
        for e in self.base.edges:
            if e.label in self.reversed_labels:
                out.append((e.dst, e.src, e.label, True))
            else:
                out.append((e.src, e.dst, e.label, False))
        return out

    def to_dot(self) -> str:
        return self.base.to_dot(self.reversed_labels, name=f"twisted_{self.m}")


def twisted_graph(G: MomentGraph, S: WallSequence, m: int) -> TwistedGraph:
    return TwistedGraph(G, m, S.inverted(m))


# -- recharge states and checks ----------------------------------------------------------


@dataclass(frozen=True)
class RechargeState:
    m: int | None
    r2: tuple[int, ...]

    def eta_kl(self, C: Crystal, mu: Sequence[int]) -> LaurentPoly:
        return LaurentPoly.from_exponents(self.r2[x] for x in C.elements_of_weight(mu))

    def h_table(self, C: Crystal) -> dict[Weight, LaurentPoly]:
        return {mu: self.eta_kl(C, mu) for mu in sorted(C.by_weight(), reverse=True)}


def eta_kl(state: RechargeState, mu: Sequence[int], C: Crystal) -> LaurentPoly:
    return state.eta_kl(C, mu)


@dataclass
class CheckReport:
    name: str
    failures: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def verdict(self) -> str:
        return "pass" if self.ok else "fail"


def _is_up_pair(mu: Weight, a: AffineRoot) -> tuple[bool, Weight]:
    """Whether ``mu < t(mu)`` for the reflection ``t`` in ``a``, and ``t(mu)``."""
    nu = reflect(mu, a)
    return nu != mu and not bruhat_less_reflection(mu, a), nu


def apply_crossing(h: dict[Weight, LaurentPoly], wall: AffineRoot, lam: Weight) -> dict[Weight, LaurentPoly]:
    """Push graded dimensions across one wall (rank-free polynomial recurrence)."""
    out = dict(h)
    for mu in h:
        up, nu = _is_up_pair(mu, wall)
        if up and bruhat_leq(nu, lam):
            out[nu] = V_MINUS_2 * h[nu]
            out[mu] = h[mu] + ONE_MINUS_V_MINUS_2 * h[nu]
    return out


def check_crossing_recurrence(before: RechargeState, after: RechargeState, wall: AffineRoot,
                              C: Crystal) -> CheckReport:
    """Graded dimensions across a wall; ``before`` is the uncrossed side."""
    rep = CheckReport(f"crossing {wall}")
    h1, h2 = before.h_table(C), after.h_table(C)
    touched = set()
    for mu in h1:
        up, nu = _is_up_pair(mu, wall)
        if not (up and bruhat_leq(nu, C.lam)):
            continue
        touched.update((mu, nu))
        rep.checked += 1
        if h2[nu] != V_MINUS_2 * h1[nu]:
            rep.failures.append(f"{_wstr(nu)}: {h2[nu]} != v^-2 * ({h1[nu]})")
        if h2[mu] != h1[mu] + ONE_MINUS_V_MINUS_2 * h1[nu]:
            rep.failures.append(f"{_wstr(mu)}: {h2[mu]} != {h1[mu]} + (1 - v^-2)({h1[nu]})")
    for mu in h1:
        if mu not in touched and h1[mu] != h2[mu]:
            rep.failures.append(f"{_wstr(mu)} changed from {h1[mu]} to {h2[mu]}")
    return rep


def check_gammam(G: MomentGraph, S: WallSequence, m: int) -> CheckReport:
    """In ``Gamma^m``: ``indeg(mu) = indeg(t mu) - 1`` whenever ``mu < t mu <= top``.

    ``t`` is the reflection crossed on the step ``m+1 -> m``.
    """
    wall = S.step_wall(m + 1)
    rep = CheckReport(f"in-degree {wall} at m={m}")
    deg = G.in_degrees(S.inverted(m))
    for mu in G.vertices:
        up, nu = _is_up_pair(mu, wall)
        if up and nu in G:
            rep.checked += 1
            if deg[mu] != deg[nu] - 1:
                rep.failures.append(f"{_wstr(mu)}: {deg[mu]} vs {_wstr(nu)}: {deg[nu]}")
    return rep


# -- the engine ---------------------------------------------------------------------------------


@dataclass
class TraceStep:
    m: int
    wall: AffineRoot | None
    state: RechargeState
    h: dict[Weight, LaurentPoly]
    recurrence: CheckReport | None = None
    gammam: list[CheckReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        rec = self.recurrence is None or self.recurrence.ok
        return rec and all(r.ok for r in self.gammam)


@dataclass
class Trace:
    crystal: Crystal
    walls: WallSequence
    mv: TraceStep
    steps: list[TraceStep]
    checks: list[CheckReport]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.steps) and all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        def table(h):
            return [{"weight": list(mu), "h": p.to_json()} for mu, p in h.items()]

        steps = []
        for s in self.steps:
            steps.append({
                "m": s.m,
                "wall": None if s.wall is None else s.wall.to_json(),
                "h": table(s.h),
                "r2": list(s.state.r2),
                "recurrence": None if s.recurrence is None else s.recurrence.verdict(),
                "gammam": "pass" if all(r.ok for r in s.gammam) else "fail",
            })
        return {
            "rank": self.crystal.n,
            "lambda": list(self.crystal.lam),
            "walls": [a.to_json() for a in self.walls.walls],
            "mv": {"h": table(self.mv.h), "r2": list(self.mv.state.r2)},
            "steps": steps,
            "checks": {c.name: c.verdict() for c in self.checks},
            "ok": self.ok,
        }


class RechargeEngine:
    """Runs the recharge from the parabolic chamber down to the KL chamber."""

    def __init__(self, C: Crystal):
        self.C = C
        self.atoms: AtomDecomposition = atom_decomposition(C)
        self.graph = moment_graph(C.n, C.lam)
        self.walls = wall_sequence(self.graph)
        self._indeg: dict[Weight, list[dict[Weight, int]]] = {}

    @property
    def M(self) -> int:
        return self.walls.M

    def atom_graph(self, a: Atom) -> MomentGraph:
        return moment_graph(self.C.n, a.highest_weight)

    def _indegrees(self, top: Weight) -> list[dict[Weight, int]]:
        if top not in self._indeg:
            G = moment_graph(self.C.n, top)
            table = [G.in_degrees(self.walls.inverted(m)) for m in range(self.M + 1)]
            self._indeg[top] = table
        return self._indeg[top]

    def arr(self, x: int, m: int) -> int:
        top = self.atoms.atom_of(x).highest_weight
        return self._indegrees(top)[m][self.C.weights[x]]

    def arr_closed_form(self, x: int) -> int:
        """Stabilized in-degree: phi along the roots ending at n, lengths along the rest."""
        n, mu = self.C.n, self.C.weights[x]
        total = 0
        for beta in positive_roots(n):
            if beta.hi == n:
                total += self.C.phi_alpha(beta, x)
            else:
                total += length_along(mu, beta)
        return total

    def expected(self, m: int) -> tuple[int, ...]:
        z2 = self.atoms.z2
        return tuple(z2[x] - 2 * self.arr(x, m) for x in range(len(self.C)))

    def mv_state(self) -> RechargeState:
        return RechargeState(None, tuple(-rho_pair2(w) for w in self.C.weights))

    def parabolic_state(self) -> RechargeState:
        C, n = self.C, self.C.n
        r2 = self.expected(self.M)
        for x in range(len(C)):
            mu = C.weights[x]
            closed = -rho_pair2(mu) + 2 * sum(
                C.phi_alpha(b, x) - length_along(mu, b) for b in positive_roots(n) if b.hi < n)
            if closed != r2[x]:
                raise VerificationError(
                    f"parabolic recharge mismatch at element {x}: in-degree route {r2[x]}, closed form {closed}")
        return RechargeState(self.M, r2)

    def swap_map(self, state: RechargeState, wall: AffineRoot) -> dict[int, int]:
        """The swapping function for ``wall``, with its contract checked."""
        C, atoms = self.C, self.atoms
        beta = Root(wall.lo, wall.hi)
        if wall.sign > 0 or wall.hi != C.n or wall.level <= 0:
            raise EngineFailure(f"wall {wall} is outside the family", wall=wall)
        psi: dict[int, int] = {}
        for x in range(len(C)):
            mu = C.weights[x]
            if not bruhat_less_reflection(mu, wall):
                continue
            low = reflect(mu, wall)
            power = pairing(low, beta) + wall.level
            if power <= 0:
                raise EngineFailure(f"non-positive exponent {power} at element {x}", wall=wall)
            y = C.e_alpha_power(beta, x, power)
            atom = atoms.atom_of(x)
            if y is None:
                raise EngineFailure(f"e_beta^{power} kills element {x}", wall=wall, atom=atom)
            if C.weights[y] != low:
                raise EngineFailure(f"psi({x}) has weight {C.weights[y]}, expected {low}", wall=wall, atom=atom)
            if atoms.atom_index(y) != atoms.atom_index(x):
                raise EngineFailure(f"psi({x}) leaves its atom", wall=wall, atom=atom)
            if state.r2[y] != state.r2[x] - 2:
                raise EngineFailure(
                    f"recharge of psi({x}) is {state.r2[y]}, expected {state.r2[x] - 2}", wall=wall, atom=atom)
            psi[x] = y
        if len(set(psi.values())) != len(psi):
            raise EngineFailure(f"psi is not injective across {wall}", wall=wall)
        return psi

    def cross(self, state: RechargeState) -> RechargeState:
        """One step ``m+1 -> m``."""
        if state.m is None or state.m < 1:
            raise ValueError("no wall left to cross")
        m = state.m - 1
        wall = self.walls.step_wall(state.m)
        psi = self.swap_map(state, wall)
        image = set(psi.values())
        r2 = list(state.r2)
        for x in psi:
            r2[x] -= 2
        for y in image:
            r2[y] += 2
        new = RechargeState(m, tuple(r2))
        want = self.expected(m)
        bad = [x for x in range(len(self.C)) if new.r2[x] != want[x]]
        if bad:
            x = bad[0]
            raise EngineFailure(
                f"after {wall}: element {x} has r2={new.r2[x]}, in-degree formula gives {want[x]}",
                wall=wall, atom=self.atoms.atom_of(x))
        return new

    def atom_tops(self) -> list[Weight]:
        return sorted({a.highest_weight for a in self.atoms}, reverse=True)

    def run(self) -> Trace:
        C = self.C
        checks: list[CheckReport] = []
        mv = self.mv_state()
        mv_step = TraceStep(-1, None, mv, mv.h_table(C))

        rep = CheckReport("mv graded dimensions")
        for mu, p in mv_step.h.items():
            rep.checked += 1
            if p != LaurentPoly({-rho_pair2(mu): len(C.elements_of_weight(mu))}):
                rep.failures.append(f"{_wstr(mu)}: {p}")
        checks.append(rep)

        rep = CheckReport("reflection order")
        rep.failures.extend(check_reflection_order(self.walls, self.graph.labels()))
        checks.append(rep)

        rep = CheckReport("stabilized in-degree")
        for x in range(len(C)):
            rep.checked += 1
            if self.arr(x, self.M) != self.arr_closed_form(x):
                rep.failures.append(f"element {x}: {self.arr(x, self.M)} vs {self.arr_closed_form(x)}")
        checks.append(rep)

        state = self.parabolic_state()
        steps = [TraceStep(self.M, None, state, state.h_table(C))]
        while state.m > 0:
            wall = self.walls.step_wall(state.m)
            new = self.cross(state)
            step = TraceStep(new.m, wall, new, new.h_table(C))
            step.recurrence = check_crossing_recurrence(state, new, wall, C)
            step.gammam = [check_gammam(moment_graph(C.n, top), self.walls, new.m) for top in self.atom_tops()]
            steps.append(step)
            state = new

        rep = CheckReport("kl endpoint")
        for x in range(len(C)):
            rep.checked += 1
            if state.r2[x] != self.atoms.z2[x] - 2 * length(C.weights[x]):
                rep.failures.append(f"element {x}: r2={state.r2[x]}")
        for mu, p in steps[-1].h.items():
            if is_dominant(mu) and p.shift(length(mu)) != kostka_foulkes(C.n, C.lam, mu):
                rep.failures.append(f"{_wstr(mu)}: KL polynomial differs from charge generating function")
        checks.append(rep)

        checks.append(self.path_oracle(mv_step.h, steps))
        return Trace(C, self.walls, mv_step, steps, checks)

    def path_oracle(self, mv_h: dict[Weight, LaurentPoly], steps: list[TraceStep]) -> CheckReport:
        """Replay every wall from the MV chamber using only the polynomial recurrence."""
        rep = CheckReport("polynomial wall path")
        path = full_wall_path(self.graph)
        pre = len(path) - self.M
        h = dict(mv_h)
        for wall in path[:pre]:
            h = apply_crossing(h, wall, self.C.lam)
        tables = [h]
        for wall in path[pre:]:
            h = apply_crossing(h, wall, self.C.lam)
            tables.append(h)
        for step, table in zip(steps, tables):
            rep.checked += 1
            if step.h != table:
                rep.failures.append(f"graded dimensions differ at m={step.m}")
        return rep


def run_wallcross(C: Crystal) -> Trace:
    return RechargeEngine(C).run()


def recharge_init_mv(C: Crystal) -> RechargeState:
    return RechargeEngine(C).mv_state()


def recharge_init_parabolic(C: Crystal) -> RechargeState:
    return RechargeEngine(C).parabolic_state()
