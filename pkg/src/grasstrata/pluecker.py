"""Pluecker coordinates, adjoint hyperplanes and defect subspaces.

A k-subspace U of Q^n has a vector of k x k minors indexed by the k-subsets
of columns; it determines U up to scale.  Each flat X of rank k contributes
one hyperplane H(X) in that coordinate space, with coefficient at subset I
given by the signed complementary minor

    a_I(X) = (-1)^(k(k+1)/2 + sum(I)) * minor of X's basis on columns [n] - I.

Collecting H(X) over all rank-k flats gives the k-adjoint arrangement of A.
The sign makes the pairing with a Pluecker vector a Laplace expansion of a
stacked determinant, so vanishing detects failure of a direct sum.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .arrangement import Arrangement, Flat, center, intersection_lattice
from .exactlin import (
    RationalMatrix,
    Subspace,
    canonical_subspace,
    intersect,
    intersection_dim,
    matrix,
    minor,
    orth_complement,
    primitive_vector,
    project,
    subspace_sum,
)


@dataclass(frozen=True)
class KSubsetIndex:
    """The lexicographically ordered k-subsets of {1..n}; fixes coordinate
    positions in R^(n choose k) for everything in this module."""

    n: int
    k: int
    subsets: tuple[tuple[int, ...], ...]
    _pos: dict = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.subsets)

    def position(self, subset: Sequence[int]) -> int:
        try:
            return self._pos[tuple(subset)]
        except KeyError:
            raise ValueError(f"{tuple(subset)} is not a {self.k}-subset of "
                             f"1..{self.n}") from None


@functools.lru_cache(maxsize=None)
def k_subset_index(n: int, k: int) -> KSubsetIndex:
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    subs = tuple(itertools.combinations(range(1, n + 1), k))
    return KSubsetIndex(n, k, subs, {s: i for i, s in enumerate(subs)})


def minor_vector(M: RationalMatrix) -> tuple[Fraction, ...]:
    """All maximal minors of M over the lex ordered column subsets, raw
    (no canonicalization).  A 0-row matrix gives the single empty minor 1."""
    k = M.rows
    idx = k_subset_index(M.cols, k)
    rows = list(range(1, k + 1))
    return tuple(minor(M, rows, list(I)) for I in idx.subsets)


def _canonical_coords(raw: Sequence[Fraction]) -> tuple[tuple[int, ...], Fraction]:
    scaled, c = primitive_vector(raw)
    return tuple(int(x) for x in scaled), c


@dataclass(frozen=True)
class PlueckerVector:
    """Canonicalized minor vector of a subspace.  coords = scale * raw minors;
    scale is kept for sign-sensitive checks but ignored by equality."""

    index: KSubsetIndex
    coords: tuple[int, ...]
    scale: Fraction = field(compare=False, repr=False)


def pluecker_vector(U: Subspace) -> PlueckerVector:
    """Pluecker coordinates of U from its canonical basis.  The zero subspace
    gets the single-entry vector (1): the empty minor convention."""
    raw = minor_vector(U.basis)
    coords, c = _canonical_coords(raw)
    return PlueckerVector(k_subset_index(U.ambient_dim, U.dim), coords, c)


@dataclass(frozen=True)
class AdjointHyperplane:
    """H(X) for a rank-k flat X: signed complementary minors of X's basis,
    canonicalized.  coords pairing with eval_adjoint is zero exactly when the
    argument lies on the hyperplane."""

    source: Flat
    index: KSubsetIndex
    coeffs: tuple[int, ...]
    scale: Fraction = field(compare=False, repr=False)


def adjoint_hyperplane(X: Flat, k: int) -> AdjointHyperplane:
    n = X.subspace.ambient_dim
    if X.rank != k:
        raise ValueError(f"flat has rank {X.rank}, expected {k}")
    B = X.subspace.basis
    idx = k_subset_index(n, k)
    rows = list(range(1, n - k + 1))
    half = (k * (k + 1)) // 2
    raw = []
    for I in idx.subsets:
        inside = set(I)
        comp = [j for j in range(1, n + 1) if j not in inside]
        sign = -1 if (half + sum(I)) % 2 else 1
        raw.append(sign * minor(B, rows, comp))
    coeffs, c = _canonical_coords(raw)
    return AdjointHyperplane(X, idx, coeffs, c)


@functools.lru_cache(maxsize=None)
def k_adjoint(arr: Arrangement, k: int) -> tuple[AdjointHyperplane, ...]:
    """One adjoint hyperplane per rank-k flat, in lattice order.  Empty for
    k = n by definition, and when no rank-k flats exist."""
    n = arr.ambient_dim
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= {n}, got {k}")
    if k == n:
        return ()
    flats = intersection_lattice(arr).by_rank(k)
    out = tuple(adjoint_hyperplane(X, k) for X in flats)
    # distinct flats must give distinct hyperplanes (coeffs are canonical,
    # so proportional means equal)
    assert len({h.coeffs for h in out}) == len(out), \
        "adjoint construction produced coinciding hyperplanes"
    return out


@functools.lru_cache(maxsize=None)
def _center_perp(arr: Arrangement) -> Subspace:
    return orth_complement(center(arr))


@functools.lru_cache(maxsize=None)
def defect_subspace(arr: Arrangement, U: Subspace) -> Subspace:
    """The part of U the arrangement can see: U meet (U-perp + T-perp) for
    center T.  Cross-checked against the span of the projections of the
    normals onto U; the two routes must agree, and the dimension must be
    dim U - dim(U meet T)."""
    if U.ambient_dim != arr.ambient_dim:
        raise ValueError("ambient dimensions differ")
    direct = intersect(U, subspace_sum(orth_complement(U), _center_perp(arr)))
    projected = canonical_subspace(
        matrix([project(U, a) for a in arr.normals], cols=arr.ambient_dim))
    assert direct == projected, "defect subspace routes disagree"
    assert direct.dim == U.dim - intersection_dim(U, center(arr)), \
        "defect dimension off"
    return direct


def eval_adjoint(h: AdjointHyperplane, p: PlueckerVector) -> Fraction:
    """Pair an adjoint hyperplane with a Pluecker vector; zero iff the
    vector lies on the hyperplane."""
    if (h.index.n, h.index.k) != (p.index.n, p.index.k):
        raise ValueError("mismatched Pluecker coordinate spaces")
    return Fraction(sum(a * x for a, x in zip(h.coeffs, p.coords)))
