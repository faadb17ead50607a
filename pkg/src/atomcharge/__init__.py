"""Charge statistics, atomic decompositions and wall crossing for type A crystals."""

from .atoms import Atom, atom_decomposition, atomic_number2
from .charge import charge2, kl_in_n_basis, kostant_oracle, kostka_foulkes, llt_charge2
from .crystal import Crystal, build_crystal
from .poly import LaurentPoly
from .wallcross import moment_graph, run_wallcross, wall_sequence

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop every memoized crystal, atom decomposition, graph and partition-function table."""
    from . import atoms, charge, crystal, rootlat, wallcross

    crystal._CACHE.clear()
    atoms._CACHE.clear()
    wallcross._GRAPHS.clear()
    for fn in (charge._weyl_bfs, charge._root_supports, charge._kostant, charge._kostka_number,
               rootlat.positive_roots):
        fn.cache_clear()
