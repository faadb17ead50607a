"""CSV tables and matplotlib figures for one crystal."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .atoms import atom_decomposition  # noqa: E402
from .charge import kl_in_n_basis, kostant_oracle, kostka_table  # noqa: E402
from .crystal import Crystal, encode  # noqa: E402
from .rootlat import length  # noqa: E402
from .wallcross import Trace, moment_graph, run_wallcross  # noqa: E402


def _w(mu) -> str:
    return " ".join(map(str, mu))


def write_tables(C: Crystal, trace: Trace, out: Path) -> list[Path]:
    dec = atom_decomposition(C)
    written = []

    path = out / "kostka.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["mu", "K_v", "K_q", "kostant_v", "match"])
        for mu, p in kostka_table(C.n, C.lam).items():
            k = kostant_oracle(C.n, C.lam, mu)
            w.writerow([_w(mu), p.to_text(), p.to_text("q"), k.to_text(), p == k])
    written.append(path)

    path = out / "atoms.csv"
    expansion = dict(kl_in_n_basis(C.n, C.lam).terms)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["atom", "highest_weight", "size", "atomic_number2", "n_basis_v_exponent"])
        for k, a in enumerate(dec):
            w.writerow([k, _w(a.highest_weight), len(a), a.atomic_number2, expansion[a.highest_weight]])
    written.append(path)

    path = out / "trace.csv"
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        ms = [s.m for s in trace.steps]
        w.writerow(["element", "tableau", "weight", "atom", "atomic_number2", "r2_mv"] + [f"r2_m{m}" for m in ms])
        for x in range(len(C)):
            row = [x, " ".join(map(str, encode(C.elements[x]))), _w(C.weights[x]), dec.atom_index(x),
                   dec.z2[x], trace.mv.state.r2[x]]
            row += [s.state.r2[x] for s in trace.steps]
            w.writerow(row)
    written.append(path)
    return written


def plot_recharge(C: Crystal, trace: Trace, path: Path) -> Path:
    dec = atom_decomposition(C)
    columns = [trace.mv] + trace.steps
    xs = list(range(len(columns)))
    ticks = ["MV"] + [f"m={s.m}" for s in trace.steps]
    cmap = plt.get_cmap("tab10")
    fig, ax = plt.subplots(figsize=(max(4, 1.2 * len(xs)), 4))
    for x in range(len(C)):
        ys = [s.state.r2[x] / 2 for s in columns]
        ax.plot(xs, ys, marker="o", lw=1, alpha=0.6, color=cmap(dec.atom_index(x) % 10))
    ax.set_xticks(xs, ticks)
    ax.set_ylabel("recharge")
    ax.set_title(f"recharge per tableau, lambda={C.lam}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_kostka(C: Crystal, path: Path) -> Path:
    table = kostka_table(C.n, C.lam)
    mus = list(table)
    top = max((p.max_degree() or 0) for p in table.values()) // 2
    grid = [[table[mu].coeffs.get(2 * d, 0) for d in range(top + 1)] for mu in mus]
    fig, ax = plt.subplots(figsize=(max(3, 0.7 * (top + 2)), max(2, 0.45 * len(mus) + 1)))
    ax.imshow(grid, cmap="Blues", aspect="auto")
    for i, row in enumerate(grid):
        for d, c in enumerate(row):
            if c:
                ax.text(d, i, str(c), ha="center", va="center")
    ax.set_yticks(range(len(mus)), [_w(mu) for mu in mus])
    ax.set_xticks(range(top + 1))
    ax.set_xlabel("power of q")
    ax.set_title(f"Kostka-Foulkes coefficients, lambda={C.lam}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_moment_graph(C: Crystal, trace: Trace, path: Path) -> Path:
    """Vertices stacked by length; edges reversed at the parabolic end are dashed."""
    G = moment_graph(C.n, C.lam)
    rev = trace.walls.inverted(trace.walls.M)
    levels: dict[int, list] = {}
    for mu in G.vertices:
        levels.setdefault(length(mu), []).append(mu)
    pos = {}
    for lv, mus in levels.items():
        for k, mu in enumerate(mus):
            pos[mu] = (k - (len(mus) - 1) / 2, lv)
    fig, ax = plt.subplots(figsize=(6, 5))
    for e in G.edges:
        (x0, y0), (x1, y1) = pos[e.src], pos[e.dst]
        style = "--" if e.label in rev else "-"
        color = "tab:red" if e.label in rev else "0.6"
        ax.annotate("", xy=(x1, y1), xytext=(x0, y0),
                    arrowprops=dict(arrowstyle="->", ls=style, color=color, lw=0.8))
    for mu, (x, y) in pos.items():
        ax.plot(x, y, "o", color="tab:blue")
        if len(G.vertices) <= 40:
            ax.text(x, y + 0.15, _w(mu), ha="center", fontsize=7)
    ax.set_ylabel("length")
    ax.set_xticks([])
    ax.set_title(f"moment graph, {len(G.vertices)} vertices, {len(G.edges)} edges")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(C: Crystal, out: Path) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    trace = run_wallcross(C)
    written = write_tables(C, trace, out)
    written.append(plot_recharge(C, trace, out / "recharge.png"))
    written.append(plot_kostka(C, out / "kostka.png"))
    written.append(plot_moment_graph(C, trace, out / "moment_graph.png"))
    return written
