import random

import pytest

from grasstrata.arrangement import (
    build_arrangement,
    center,
    intersection_lattice,
    maximal_chains,
)
from grasstrata.exactlin import (
    canonical_subspace,
    is_direct_sum_full,
    kernel,
    matrix,
    span,
)
from grasstrata.matroid import bases, loops, restriction_lattice, lattice_isomorphic
from grasstrata.pluecker import defect_subspace
from grasstrata.strata import (
    adjoint_label,
    first_disagreement,
    label_encodings,
    matroid_label,
    partitions_equal,
    schubert_label,
    verify_equivalence,
    verify_restriction_classification,
)


def braid3():
    return build_arrangement(3, [(1, -1, 0), (1, 0, -1), (0, 1, -1)])


def boolean(n):
    return build_arrangement(n, [[1 if j == i else 0 for j in range(n)]
                                 for i in range(n)])


def nonessential3():
    return build_arrangement(3, [(1, 0, 0), (0, 1, 0)])


def random_subspace(rng, n, k):
    while True:
        M = matrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(k)],
                   cols=n)
        U = canonical_subspace(M)
        if U.dim == k:
            return U


def sigma_by_chain(arr, label):
    """Map each chain's first proper flat generators to its jump set."""
    chains = maximal_chains(intersection_lattice(arr))
    assert len(chains) == len(label.sigma)
    return {ch[1].generators if len(ch) > 1 else frozenset(): s
            for ch, s in zip(chains, label.sigma)}


# ----------------------------------------------------------------- labels


def test_braid3_line_labels():
    arr = braid3()
    e1 = span([[1, 0, 0]], 3)

    ml = matroid_label(arr, e1)
    assert bases(ml.matroid) == frozenset({frozenset({1}), frozenset({2})})
    assert loops(ml.matroid) == frozenset({3})

    al = adjoint_label(arr, e1)
    assert al.i == 0
    assert [f.generators for f in al.zero_set] == [frozenset({3})]

    sl = schubert_label(arr, e1)
    assert sl.i == 0
    jumps = sigma_by_chain(arr, sl)
    assert jumps[frozenset({1})] == (2,)
    assert jumps[frozenset({2})] == (2,)
    assert jumps[frozenset({3})] == (1,)


def test_braid3_center_labels():
    arr = braid3()
    T = center(arr)
    assert matroid_label(arr, T).matroid.rank == 0
    al = adjoint_label(arr, T)
    assert al.i == 1
    assert al.zero_set == ()
    sl = schubert_label(arr, T)
    assert sl.i == 1
    assert all(s == () for s in sl.sigma)


def test_boolean_generic_line_label():
    al = adjoint_label(boolean(3), span([[1, 1, 1]], 3))
    assert al.i == 0
    assert al.zero_set == ()


def test_empty_arrangement_labels():
    arr = build_arrangement(3, [])
    U = span([[1, 2, 0]], 3)
    al = adjoint_label(arr, U)
    assert al.i == 1  # the center is everything
    sl = schubert_label(arr, U)
    assert sl.sigma == ((),)
    assert matroid_label(arr, U).matroid.rank == 0


def test_label_ranks_agree():
    rng = random.Random(73)
    for arr in (braid3(), boolean(3), nonessential3()):
        n = arr.ambient_dim
        for _ in range(10):
            k = rng.randint(0, n)
            U = random_subspace(rng, n, k)
            ml = matroid_label(arr, U)
            al = adjoint_label(arr, U)
            sl = schubert_label(arr, U)
            assert al.i == sl.i
            assert ml.matroid.rank == k - al.i


def test_zero_set_complement_is_direct_sum():
    rng = random.Random(79)
    for arr in (braid3(), boolean(3), nonessential3()):
        lat = intersection_lattice(arr)
        for _ in range(10):
            k = rng.randint(0, 3)
            U = random_subspace(rng, 3, k)
            al = adjoint_label(arr, U)
            V = defect_subspace(arr, U)
            zero = {f.generators for f in al.zero_set}
            for X in lat.by_rank(k - al.i):
                assert (X.generators in zero) == \
                    (not is_direct_sum_full(V, X.subspace))


def test_schubert_tail_recovers_transverse_flats():
    # chains whose jumps all sit at the end pick out, at the matching
    # depth, exactly the flats transverse to the defect subspace
    rng = random.Random(83)
    for arr in (braid3(), boolean(3)):
        lat = intersection_lattice(arr)
        chains = maximal_chains(lat)
        r = lat.rank
        for _ in range(12):
            k = rng.randint(1, 3)
            U = random_subspace(rng, 3, k)
            sl = schubert_label(arr, U)
            V = defect_subspace(arr, U)
            depth = r - (k - sl.i)
            tail = tuple(range(depth + 1, r + 1))
            from_chains = {ch[depth] for ch, s in zip(chains, sl.sigma)
                           if s == tail}
            transverse = {X for X in lat.by_rank(k - sl.i)
                          if is_direct_sum_full(V, X.subspace)}
            assert from_chains == transverse


# -------------------------------------------------------------- verifiers


def test_partition_helpers():
    assert partitions_equal([[0, 1], [2]], [[2], [0, 1]])
    assert not partitions_equal([[0, 1], [2]], [[0], [1, 2]])
    assert first_disagreement(["x", "x", "y"], ["u", "v", "v"]) == (0, 1)
    assert first_disagreement(["x", "y"], ["u", "v"]) is None


def test_verify_equivalence_braid3_lines():
    arr = braid3()
    rng = random.Random(89)
    samples = [span([[1, 0, 0]], 3), span([[0, 1, 0]], 3),
               span([[0, 0, 1]], 3), center(arr), span([[1, 1, 2]], 3)]
    samples += [random_subspace(rng, 3, 1) for _ in range(200)]
    report = verify_equivalence(arr, 1, samples)
    assert report.passed
    assert all(report.verdicts.values())
    # the generic stratum collects most of the random lines
    biggest = max(report.partitions["adjoint"], key=len)
    enc = report.encodings[biggest[0]]["adjoint"]
    assert enc == "i0:"
    assert len(biggest) > 100


def test_verify_equivalence_singleton():
    arr = braid3()
    report = verify_equivalence(arr, 1, [span([[1, 2, 3]], 3)])
    assert report.passed
    assert report.sample_count == 1


def test_verify_equivalence_boolean_planes():
    arr = boolean(3)
    rng = random.Random(97)
    samples = [span([[1, 0, 0], [0, 1, 0]], 3),
               span([[1, 0, 0], [0, 0, 1]], 3),
               span([[0, 1, 0], [0, 0, 1]], 3)]
    samples += [random_subspace(rng, 3, 2) for _ in range(60)]
    report = verify_equivalence(arr, 2, samples)
    assert report.passed


def test_verify_equivalence_rejects_wrong_dims():
    with pytest.raises(ValueError):
        verify_equivalence(braid3(), 2, [span([[1, 0, 0]], 3)])


def test_verify_equivalence_failure_path():
    # synthetic encodings exercise the witness machinery; the real labelers
    # are not expected to produce this
    arr = braid3()
    samples = [span([[1, 0, 0]], 3), span([[0, 1, 0]], 3)]
    fake = [{"matroid": "a", "adjoint": "x", "schubert": "x"},
            {"matroid": "a", "adjoint": "y", "schubert": "y"}]
    report = verify_equivalence(arr, 1, samples, encodings=fake)
    assert not report.passed
    assert not report.verdicts["matroid_vs_adjoint"]
    assert report.verdicts["adjoint_vs_schubert"]
    assert report.witnesses[0]["pair"] == [0, 1]


def test_classification_braid3_planes():
    arr = braid3()
    generic1 = span([[1, 0, 0], [0, 1, 0]], 3)
    generic2 = kernel(matrix([[1, 1, 1]]))
    inside = span([[1, 1, 0], [0, 0, 1]], 3)        # the hyperplane x1 = x2
    through = span([[1, 1, 1], [1, 0, 0]], 3)       # contains the center
    samples = [generic1, generic2, inside, through]
    report = verify_restriction_classification(arr, 2, samples)
    assert report.passed
    encs = [e["matroid"] for e in report.encodings]
    assert encs[0] == encs[1]       # the generic pair shares a class
    assert encs[2] != encs[0]
    assert encs[3] != encs[0]
    assert encs[3] != encs[2]
    # discriminating power: generic and hyperplane classes differ as lattices
    assert not lattice_isomorphic(restriction_lattice(arr, generic1),
                                  restriction_lattice(arr, inside))


def test_classification_boolean_lines():
    arr = boolean(3)
    rng = random.Random(101)
    samples = [span([[1, 0, 0]], 3), span([[0, 1, 0]], 3),
               span([[0, 0, 1]], 3)]
    samples += [random_subspace(rng, 3, 1) for _ in range(40)]
    report = verify_restriction_classification(arr, 1, samples)
    assert report.passed
    # essential arrangement: the adjoint-class check ran as well
    assert any(key.startswith("adjoint:") for key in report.verdicts)
    # coordinate lines carry distinct labeled matroids
    encs = [e["matroid"] for e in report.encodings]
    assert len({encs[0], encs[1], encs[2]}) == 3


def test_classification_k0_trivial():
    from grasstrata.exactlin import zero_subspace
    report = verify_restriction_classification(
        braid3(), 0, [zero_subspace(3), zero_subspace(3)])
    assert report.passed


def test_labels_deterministic():
    arr = braid3()
    U = span([[1, 2, 3]], 3)
    assert label_encodings(arr, U) == label_encodings(arr, U)
