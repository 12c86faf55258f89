"""The three stratum labels of a subspace and the partition verifiers.

Fix an arrangement A and a dimension k.  A k-subspace U gets three labels:

  * matroid label: the labeled matroid of projected normals;
  * adjoint label: i = dim(U meet center) together with the set of rank
    (k - i) flats whose adjoint hyperplane contains the Pluecker vector of
    the defect subspace of U;
  * Schubert label: i together with, for every maximal chain of the
    lattice, the positions where dim(U meet chain flat) jumps.

All three are supposed to cut the Grassmannian into the same pieces, and
subspaces in one piece are supposed to have isomorphic restriction
lattices.  verify_equivalence and verify_restriction_classification check
exactly that on a given sample list and report witnesses when it fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrangement import (
    Arrangement,
    Flat,
    GuardExceeded,
    center,
    intersection_lattice,
    maximal_chains,
)
from .exactlin import Subspace, intersection_dim
from .matroid import Matroid, matroid_from, restriction_lattice, lattice_isomorphic
from .pluecker import defect_subspace, eval_adjoint, k_adjoint, pluecker_vector


@dataclass(frozen=True)
class MatroidLabel:
    matroid: Matroid

    def encode(self) -> str:
        return (f"m{self.matroid.ground_size}:"
                + ",".join(str(r) for r in self.matroid.rank_table))


@dataclass(frozen=True)
class AdjointLabel:
    """i = dim(U meet center); zero_set = the rank (k-i) flats whose adjoint
    hyperplane annihilates the defect's Pluecker vector."""

    i: int
    zero_set: tuple[Flat, ...]

    def encode(self) -> str:
        gens = sorted(tuple(sorted(f.generators)) for f in self.zero_set)
        body = "|".join("{" + ",".join(str(g) for g in gs) + "}" for gs in gens)
        return f"i{self.i}:{body}"


@dataclass(frozen=True)
class SchubertLabel:
    """i plus one jump set per maximal chain, in the lattice's chain order."""

    i: int
    sigma: tuple[tuple[int, ...], ...]

    def encode(self) -> str:
        body = "|".join(",".join(str(x) for x in s) for s in self.sigma)
        return f"i{self.i}:{body}"


def matroid_label(arr: Arrangement, U: Subspace) -> MatroidLabel:
    return MatroidLabel(matroid_from(arr, U))


def adjoint_label(arr: Arrangement, U: Subspace) -> AdjointLabel:
    i = intersection_dim(U, center(arr))
    V = defect_subspace(arr, U)
    p = pluecker_vector(V)
    zero = tuple(h.source for h in k_adjoint(arr, U.dim - i)
                 if eval_adjoint(h, p) == 0)
    return AdjointLabel(i, zero)


def schubert_label(arr: Arrangement, U: Subspace,
                   chain_cap: int = 10 ** 6) -> SchubertLabel:
    lat = intersection_lattice(arr)
    chains = maximal_chains(lat, chain_cap)
    i = intersection_dim(U, lat.top().subspace)
    # chains revisit the same flats constantly; compute each dim once
    dim_at = {f: intersection_dim(U, f.subspace) for f in lat.flats}
    sigma = []
    for ch in chains:
        jumps = tuple(l for l in range(1, len(ch))
                      if dim_at[ch[l]] > dim_at[ch[l - 1]])
        assert len(jumps) == U.dim - i, "jump count does not match k - i"
        sigma.append(jumps)
    return SchubertLabel(i, tuple(sigma))


def label_encodings(arr: Arrangement, U: Subspace,
                    chain_cap: int = 10 ** 6) -> dict[str, str]:
    return {
        "matroid": matroid_label(arr, U).encode(),
        "adjoint": adjoint_label(arr, U).encode(),
        "schubert": schubert_label(arr, U, chain_cap).encode(),
    }


KINDS = ("matroid", "adjoint", "schubert")


@dataclass(frozen=True, eq=False)
class VerificationReport:
    """Outcome of one verifier run; everything inside is JSON friendly."""

    passed: bool
    kind: str
    sample_count: int
    encodings: tuple[dict, ...]
    partitions: dict
    verdicts: dict
    witnesses: tuple[dict, ...]

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "kind": self.kind,
            "sample_count": self.sample_count,
            "partitions": self.partitions,
            "verdicts": self.verdicts,
            "witnesses": list(self.witnesses),
        }


def _partition_blocks(encs: Sequence[str]) -> list[list[int]]:
    by_label: dict[str, list[int]] = {}
    for idx, e in enumerate(encs):
        by_label.setdefault(e, []).append(idx)
    return sorted(by_label.values(), key=lambda block: block[0])


def partitions_equal(a: Sequence[Sequence[int]],
                     b: Sequence[Sequence[int]]) -> bool:
    return {frozenset(x) for x in a} == {frozenset(y) for y in b}


def first_disagreement(enc_a: Sequence[str],
                       enc_b: Sequence[str]) -> tuple[int, int] | None:
    """First index pair the two labelings split differently, scanning in
    lexicographic pair order so witnesses are reproducible."""
    n = len(enc_a)
    for x in range(n):
        for y in range(x + 1, n):
            if (enc_a[x] == enc_a[y]) != (enc_b[x] == enc_b[y]):
                return x, y
    return None


def _check_dims(k: int, subspaces: Sequence[Subspace]) -> None:
    for idx, U in enumerate(subspaces):
        if U.dim != k:
            raise ValueError(f"subspace {idx} has dimension {U.dim}, not {k}")


def verify_equivalence(arr: Arrangement, k: int,
                       subspaces: Sequence[Subspace],
                       encodings: Sequence[dict] | None = None,
                       ) -> VerificationReport:
    """Label every subspace three ways and demand one common partition."""
    _check_dims(k, subspaces)
    if encodings is None:
        encodings = [label_encodings(arr, U) for U in subspaces]
    parts = {kind: _partition_blocks([e[kind] for e in encodings])
             for kind in KINDS}
    verdicts = {}
    witnesses = []
    for a in range(len(KINDS)):
        for b in range(a + 1, len(KINDS)):
            ka, kb = KINDS[a], KINDS[b]
            same = partitions_equal(parts[ka], parts[kb])
            verdicts[f"{ka}_vs_{kb}"] = same
            if not same:
                pair = first_disagreement([e[ka] for e in encodings],
                                          [e[kb] for e in encodings])
                witnesses.append({
                    "type": "partition_mismatch",
                    "labelings": [ka, kb],
                    "pair": list(pair),
                    "labels": {
                        ka: [encodings[pair[0]][ka], encodings[pair[1]][ka]],
                        kb: [encodings[pair[0]][kb], encodings[pair[1]][kb]],
                    },
                })
    passed = all(verdicts.values())
    return VerificationReport(
        passed=passed,
        kind="equivalence",
        sample_count=len(subspaces),
        encodings=tuple(encodings),
        partitions=parts,
        verdicts=verdicts,
        witnesses=tuple(witnesses),
    )


def verify_restriction_classification(arr: Arrangement, k: int,
                                      subspaces: Sequence[Subspace],
                                      encodings: Sequence[dict] | None = None,
                                      ) -> VerificationReport:
    """Within every label class all restriction lattices must be isomorphic.

    Isomorphism is transitive, so comparing everything in a class against
    its first member settles every pair.  For an essential arrangement the
    same check is repeated with classes cut by the adjoint label, which is
    the classification statement in its projective form.
    """
    _check_dims(k, subspaces)
    if encodings is None:
        encodings = [label_encodings(arr, U) for U in subspaces]

    lattices: dict[int, object] = {}

    def lattice_of(idx: int):
        if idx not in lattices:
            lattices[idx] = restriction_lattice(arr, subspaces[idx])
        return lattices[idx]

    verdicts = {}
    witnesses = []

    def run_classes(kind: str) -> None:
        classes: dict[str, list[int]] = {}
        for idx, e in enumerate(encodings):
            classes.setdefault(e[kind], []).append(idx)
        for enc in sorted(classes):
            block = classes[enc]
            key = f"{kind}:{enc}"
            if k == 0:
                verdicts[key] = True
                continue
            ok = True
            first = block[0]
            for other in block[1:]:
                try:
                    same = lattice_isomorphic(lattice_of(first),
                                              lattice_of(other))
                except GuardExceeded as e_guard:
                    witnesses.append({
                        "type": "guard_skipped",
                        "class": key,
                        "pair": [first, other],
                        "reason": str(e_guard),
                    })
                    continue
                if not same:
                    ok = False
                    witnesses.append({
                        "type": "non_isomorphic_restriction",
                        "class": key,
                        "pair": [first, other],
                    })
            verdicts[key] = ok

    run_classes("matroid")
    if center(arr).dim == 0:
        run_classes("adjoint")

    parts = {kind: _partition_blocks([e[kind] for e in encodings])
             for kind in KINDS}
    passed = all(verdicts.values())
    return VerificationReport(
        passed=passed,
        kind="classification",
        sample_count=len(subspaces),
        encodings=tuple(encodings),
        partitions=parts,
        verdicts=verdicts,
        witnesses=tuple(witnesses),
    )
