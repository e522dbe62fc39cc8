"""Exact-arithmetic simplicial descent toolkit.

Subpackages cover exact linear algebra over Z and F_p, bounded (co)chain
complexes, the simplex category, truncated (bi)simplicial objects, total
object / decalage / cylinder constructions, the chain-complex descent
structure with its Eilenberg-Zilber comparison maps, and filtered complexes
with their spectral sequences.
"""

from .linalg import Ring, ZZ, GF, ExactMatrix, HomologyGroup

__all__ = ["Ring", "ZZ", "GF", "ExactMatrix", "HomologyGroup"]
