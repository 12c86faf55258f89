"""Hyperplane arrangements and their intersection lattices.

An arrangement is a finite set of hyperplanes through the origin of Q^n,
each stored as a canonicalized integer normal.  The lattice of all
intersections is graded by rank (codimension) with the whole space at the
bottom and the common intersection, the center, at the top.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .exactlin import (
    RationalMatrix,
    Subspace,
    canonical_subspace,
    dot,
    full_space,
    intersect,
    kernel,
    matrix,
    primitive_vector,
    vector,
)


class GuardExceeded(RuntimeError):
    """A configurable size cap was hit before a computation finished."""


@dataclass(frozen=True)
class Arrangement:
    """Hyperplanes labeled 1..m by their position in the normals tuple."""

    ambient_dim: int
    normals: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.normals)

    def normal(self, label: int) -> tuple[Fraction, ...]:
        return self.normals[label - 1]

    def hyperplane(self, label: int) -> Subspace:
        return _hyperplane(self, label)


@functools.lru_cache(maxsize=None)
def _hyperplane(arr: Arrangement, label: int) -> Subspace:
    return kernel(matrix([arr.normal(label)], cols=arr.ambient_dim))


def build_arrangement(n: int, raw_normals: Iterable[Sequence]) -> Arrangement:
    """Canonicalize the normals (coprime integers, positive leading entry) and
    reject zero vectors, wrong lengths and duplicate hyperplanes."""
    canon: list[tuple[Fraction, ...]] = []
    seen = set()
    for pos, raw in enumerate(raw_normals, 1):
        v = vector(raw)
        if len(v) != n:
            raise ValueError(f"normal {pos}: expected {n} entries, got {len(v)}")
        if all(x == 0 for x in v):
            raise ValueError(f"normal {pos}: zero vector does not define a hyperplane")
        w, _ = primitive_vector(v)
        if w in seen:
            raise ValueError(f"normal {pos}: duplicate hyperplane")
        seen.add(w)
        canon.append(w)
    return Arrangement(n, tuple(canon))


@dataclass(frozen=True)
class Flat:
    """An intersection of hyperplanes; generators is the full (closed) label set."""

    subspace: Subspace
    rank: int
    generators: frozenset[int]

    @property
    def dim(self) -> int:
        return self.subspace.dim


def _basis_key(S: Subspace):
    return tuple(tuple(int(x) for x in row) for row in S.basis.entries)


def _flat_key(f: Flat):
    return (f.rank, _basis_key(f.subspace))


@dataclass(frozen=True)
class IntersectionLattice:
    """All flats ordered by reverse inclusion, bottom R^n, top the center.

    flats are sorted by (rank, canonical basis), covers holds index pairs
    (a, b) where flat b covers flat a, i.e. rank(b) = rank(a) + 1 and b is
    contained in a as a set.
    """

    ambient_dim: int
    flats: tuple[Flat, ...]
    covers: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return self.flats[-1].rank

    def by_rank(self, r: int) -> tuple[Flat, ...]:
        return tuple(f for f in self.flats if f.rank == r)

    def bottom(self) -> Flat:
        return self.flats[0]

    def top(self) -> Flat:
        return self.flats[-1]

    def leq(self, a: int, b: int) -> bool:
        """Reverse-inclusion order on flat indices: a <= b iff b is inside a."""
        return self.flats[a].generators <= self.flats[b].generators


def _closure_generators(arr: Arrangement, S: Subspace) -> frozenset[int]:
    gens = []
    for i in range(1, arr.size + 1):
        alpha = arr.normal(i)
        if all(dot(row, alpha) == 0 for row in S.basis.entries):
            gens.append(i)
    return frozenset(gens)


@functools.lru_cache(maxsize=None)
def intersection_lattice(arr: Arrangement) -> IntersectionLattice:
    """Breadth-first closure: intersect known flats with every hyperplane,
    deduplicating by canonical subspace equality."""
    n = arr.ambient_dim
    whole = full_space(n)
    seen = {whole}
    frontier = [whole]
    while frontier:
        nxt = []
        for X in frontier:
            for i in range(1, arr.size + 1):
                Y = intersect(X, arr.hyperplane(i))
                if Y not in seen:
                    seen.add(Y)
                    nxt.append(Y)
        frontier = nxt
    flats = sorted(
        (Flat(S, n - S.dim, _closure_generators(arr, S)) for S in seen),
        key=_flat_key)
    covers = []
    for a, fa in enumerate(flats):
        for b, fb in enumerate(flats):
            if fb.rank == fa.rank + 1 and fa.generators <= fb.generators:
                covers.append((a, b))
    return IntersectionLattice(n, tuple(flats), tuple(covers))


@functools.lru_cache(maxsize=None)
def center(arr: Arrangement) -> Subspace:
    """The intersection of all hyperplanes; R^n for the empty arrangement."""
    return kernel(matrix(arr.normals, cols=arr.ambient_dim))


def is_essential(arr: Arrangement) -> bool:
    return center(arr).dim == 0


def restriction(arr: Arrangement, U: Subspace) -> Arrangement:
    """The arrangement of traces H ∩ U inside U, written in the canonical
    basis of U (so it lives in dimension dim U).  Hyperplanes containing U
    contribute nothing; distinct hyperplanes cutting the same trace are
    merged, since an arrangement is a set.
    """
    if U.ambient_dim != arr.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if U.dim == 0:
        raise ValueError("cannot restrict to the zero subspace")
    B = U.basis
    traces: list[tuple[Fraction, ...]] = []
    seen = set()
    for i in range(1, arr.size + 1):
        t = B.times_vector(arr.normal(i))
        if all(x == 0 for x in t):
            continue
        w, _ = primitive_vector(t)
        if w not in seen:
            seen.add(w)
            traces.append(w)
    return Arrangement(U.dim, tuple(traces))


@functools.lru_cache(maxsize=None)
def maximal_chains(lattice: IntersectionLattice,
                   cap: int = 10 ** 6) -> tuple[tuple[Flat, ...], ...]:
    """Every maximal chain (center, ..., R^n), dimension increasing one step
    at a time, in lexicographic order of the flats visited.  Raises
    GuardExceeded when more than cap chains exist."""
    preds: dict[int, list[int]] = {i: [] for i in range(len(lattice.flats))}
    for a, b in lattice.covers:
        preds[b].append(a)
    for lst in preds.values():
        lst.sort()
    top = len(lattice.flats) - 1
    chains: list[tuple[Flat, ...]] = []
    path = [top]

    def walk(idx: int) -> None:
        if lattice.flats[idx].rank == 0:
            if len(chains) >= cap:
                raise GuardExceeded(
                    f"more than {cap} maximal chains; raise the cap to proceed")
            chains.append(tuple(lattice.flats[i] for i in path))
            return
        for nxt in preds[idx]:
            path.append(nxt)
            walk(nxt)
            path.pop()

    walk(top)
    return tuple(chains)


# ------------------------------------------------------------ text format


def parse_arrangement(text: str) -> Arrangement:
    """Parse the plain text format: first the ambient dimension on its own
    line, then one normal per line as whitespace-separated rationals.
    Anything after a '#' is a comment."""
    n: int | None = None
    rows: list[list[Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise ValueError(
                    f"line {lineno}: expected the ambient dimension alone")
            try:
                n = int(parts[0])
            except ValueError:
                raise ValueError(
                    f"line {lineno}: bad dimension {parts[0]!r}") from None
            if n < 0:
                raise ValueError(f"line {lineno}: negative dimension")
            continue
        if len(parts) != n:
            raise ValueError(
                f"line {lineno}: expected {n} entries, got {len(parts)}")
        try:
            rows.append([Fraction(p) for p in parts])
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"line {lineno}: bad rational entry") from None
    if n is None:
        raise ValueError("missing dimension line")
    try:
        return build_arrangement(n, rows)
    except ValueError as e:
        raise ValueError(f"bad arrangement: {e}") from None


def format_arrangement(arr: Arrangement) -> str:
    lines = [str(arr.ambient_dim)]
    for w in arr.normals:
        lines.append(" ".join(str(int(x)) for x in w))
    return "\n".join(lines) + "\n"


def load_arrangement(path) -> Arrangement:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_arrangement(fh.read())
