"""Tests for rank-3 based rings and their enumeration."""

from itertools import product

import pytest

from rank3ribbon.fusion import (
    Rank3Params,
    StarViolation,
    canonicalize,
    check_based_axioms,
    enumerate_rank3_based_rings,
    fp_dimensions,
    global_fp_dim,
    make_rank3_ring,
    make_z3_ring,
    param_aliases,
    rank3_tensor,
)


def test_star_constraint():
    assert Rank3Params(0, 1, 0, 1).satisfies_star
    assert not Rank3Params(1, 1, 2, 0).satisfies_star


def test_make_rank3_ring_tables():
    ring = make_rank3_ring(Rank3Params(0, 1, 0, 1))
    # X^2 = 1, Y^2 = 1 + X + Y, XY = Y
    assert ring.N[1][1] == (1, 0, 0)
    assert ring.N[2][2] == (1, 1, 1)
    assert ring.N[1][2] == (0, 0, 1)
    ring2 = make_rank3_ring(Rank3Params(1, 0, 0, 0))
    # X^2 = 1 + Y, Y^2 = 1, XY = X
    assert ring2.N[1][1] == (1, 0, 1)
    assert ring2.N[2][2] == (1, 0, 0)
    assert ring2.N[1][2] == (0, 1, 0)


def test_make_rank3_ring_refuses_star_violation():
    with pytest.raises(StarViolation):
        make_rank3_ring(Rank3Params(1, 1, 2, 0))


def test_z3_ring():
    z3 = make_z3_ring()
    # product of the two non-unit elements is the unit
    assert z3.N[1][2][0] == 1
    # dual involution swaps indices 1 and 2
    assert z3.dual == (0, 2, 1)
    assert z3.axiom_report().all_ok


def test_check_axioms_pass():
    report = check_based_axioms(rank3_tensor(Rank3Params(0, 1, 0, 0)), (0, 1, 2))
    assert report.all_ok and report.first_violation is None


def test_check_axioms_star_violation_breaks_associativity():
    report = check_based_axioms(rank3_tensor(Rank3Params(1, 1, 2, 0)), (0, 1, 2))
    assert not report.associativity_ok
    assert report.first_violation[0] == "associativity"


def test_check_axioms_duality_failure():
    tensor = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 0, 0]],
    ]
    report = check_based_axioms(tensor, (0, 1, 2))
    assert not report.duality_ok


def test_star_iff_associativity_exhaustive():
    """For all parameters <= 10 the multiplication table is associative
    exactly when the star constraint holds."""
    for k, l, m, n in product(range(11), repeat=4):
        p = Rank3Params(k, l, m, n)
        report = check_based_axioms(rank3_tensor(p), (0, 1, 2))
        assert report.associativity_ok == p.satisfies_star, p


def test_canonicalize():
    assert canonicalize(Rank3Params(1, 0, 0, 0)) == Rank3Params(0, 1, 0, 0)
    assert canonicalize(Rank3Params(0, 1, 0, 1)) == Rank3Params(0, 1, 0, 1)
    assert canonicalize(Rank3Params(1, 1, 1, 0)) == Rank3Params(1, 1, 0, 1)


def test_canonicalize_idempotent_and_isomorphism():
    for k, l, m, n in product(range(5), repeat=4):
        p = Rank3Params(k, l, m, n)
        if not p.satisfies_star:
            continue
        c = canonicalize(p)
        assert canonicalize(c) == c
        # The swap X <-> Y is a ring isomorphism: relabeled tensors agree.
        t = rank3_tensor(p)
        perm = (0, 2, 1)
        relabeled = tuple(
            tuple(tuple(t[perm[i]][perm[j]][perm[kk]] for kk in range(3)) for j in range(3))
            for i in range(3)
        )
        assert relabeled == rank3_tensor(p.swapped())


def test_param_aliases():
    assert param_aliases(Rank3Params(1, 1, 1, 0)) == ["K(1,1,0,1)", "K(1,1,1,0)"]
    assert param_aliases(Rank3Params(0, 1, 0, 0)) == ["K(0,1,0,0)", "K(1,0,0,0)"]


def test_enumerate_bound_one():
    """At coefficient bound 1 the audit finds exactly the Z/3 ring plus the
    three canonical self-dual parameter rings."""
    rings = enumerate_rank3_based_rings(1)
    assert len(rings) == 4
    z3_like = [r for r in rings if r.dual == (0, 2, 1)]
    assert len(z3_like) == 1
    assert z3_like[0].N == make_z3_ring().N
    selfdual = [r for r in rings if r.dual == (0, 1, 2)]
    tensors = {r.N for r in selfdual}
    expected = {
        rank3_tensor(Rank3Params(0, 1, 0, 0)),
        rank3_tensor(Rank3Params(0, 1, 0, 1)),
        rank3_tensor(Rank3Params(1, 1, 0, 1)),
    }
    assert tensors == expected


def test_enumerate_bound_zero_empty():
    # The unit coefficient of X^2 (and of g * g^2) is forced to 1, so no
    # nonzero multiplication survives a bound of 0.
    assert enumerate_rank3_based_rings(0) == []


def test_enumerate_rejects_large_bound():
    with pytest.raises(ValueError):
        enumerate_rank3_based_rings(4)


def test_fp_dimensions():
    dims = fp_dimensions(make_rank3_ring(Rank3Params(0, 1, 0, 1)))
    assert [d.rational_value for d in dims] == [1, 1, 2]
    dims2 = fp_dimensions(make_rank3_ring(Rank3Params(0, 1, 0, 0)))
    assert dims2[0].rational_value == 1 and dims2[1].rational_value == 1
    assert dims2[2].minpoly.coeffs == (-2, 0, 1)
    dims3 = fp_dimensions(make_z3_ring())
    assert [d.rational_value for d in dims3] == [1, 1, 1]


def test_fp_dimensions_at_least_one():
    for k, l, m, n in product(range(4), repeat=4):
        p = Rank3Params(k, l, m, n)
        if not p.satisfies_star:
            continue
        for d in fp_dimensions(make_rank3_ring(p)):
            assert d >= 1


def test_global_fp_dim():
    assert global_fp_dim(make_rank3_ring(Rank3Params(0, 1, 0, 1))) == 6
    assert global_fp_dim(make_z3_ring()) == 3
    assert global_fp_dim(make_rank3_ring(Rank3Params(0, 1, 0, 0))) == 4


def test_ring_json_roundtrip_shape():
    ring = make_rank3_ring(Rank3Params(0, 1, 0, 1))
    data = ring.to_json()
    assert data["rank"] == 3
    assert data["dual"] == [0, 1, 2]
    assert data["N"][2][2] == [1, 1, 1]
    z3 = make_z3_ring().to_json()
    assert z3["dual"] == [0, 2, 1]
