import pytest

from wittlat import lattice as lt
from wittlat import moduli as md
from wittlat import residue as rs
from wittlat.coeff import RingParams, make_ring
from wittlat.errors import CeilingExceeded, UsageError
from wittlat.hermitian import HermitianSpace

from conftest import diag_lattice


# -- membership ---------------------------------------------------------------


def test_is_rz_point_diagonal(space4):
    r = space4.ring
    # span{y1, y2, y3, p^-1 y4}: dual is span{p y1, y2, y3, y4}
    L = diag_lattice(r, [0, 0, 0, -1])
    assert md.is_rz_point(space4, L)
    assert not md.is_rz_point(space4, space4.standard)
    deep = diag_lattice(r, [1, 0, -1, -1])
    assert md.is_rz_point(space4, deep)


def test_stratum_of_diagonal(space4):
    r = space4.ring
    assert md.stratum_of(space4, diag_lattice(r, [0, 0, 0, -1])) == 1
    assert md.stratum_of(space4, diag_lattice(r, [1, 0, -1, -1])) == 2


def test_single_stratum_forced_for_n3(ring22):
    space = HermitianSpace(ring22, 3)
    pts = md.enumerate_rz(space)
    assert pts
    assert all(md.stratum_of(space, pt.L0) == 1 for pt in pts)


def test_stratum_invariants():
    assert md.stratum_invariant(4, 1) == (0, 0, 0, -1)
    assert md.stratum_invariant(4, 2) == (1, 0, -1, -1)
    assert md.dual_stratum_invariant(4, 2) == (1, 1, 0, -1)
    assert md.minuscule_invariant(3) == (1, 1, 0)


# -- Y points and flags --------------------------------------------------------


def test_y_from_rz_diagonal(space4):
    r = space4.ring
    deep = diag_lattice(r, [1, 0, -1, -1])
    y = md.y_from_rz(space4, deep)
    assert y.M0 == diag_lattice(r, [1, 0, 0, 0])
    assert y.N0 == diag_lattice(r, [0, 0, -1, -1])
    # stratum 1 collapses M0 to the standard lattice
    L1 = diag_lattice(r, [0, 0, 0, -1])
    y1 = md.y_from_rz(space4, L1)
    assert y1.M0 == space4.standard
    assert y1.N0 == diag_lattice(r, [0, 0, 0, -1])


def test_y_chain_on_all_enumerated(space2):
    for pt in md.enumerate_rz(space2):
        k = md.stratum_of(space2, pt.L0)
        y = md.y_from_rz(space2, pt.L0, k)
        assert md.y_chain_holds(space2, y.M0, y.N0, k)


def test_dl_flag_from_y_perp_constraints(space4):
    for k in (1, 2):
        for y in md.enumerate_y(space4, k):
            flag = md.dl_flag_from_y(space4, y, k)
            dims = (flag.J.dim, flag.Kperp.dim, flag.K.dim, flag.Jperp.dim)
            assert dims == (k - 1, k, 4 - k, 4 - k + 1)


def test_dl_flag_k1_isotropic_line(space2):
    pairing = space2.residue_pairing()
    for y in md.enumerate_y(space2, 1):
        flag = md.dl_flag_from_y(space2, y, 1)
        assert flag.J.dim == 0
        assert flag.K == flag.Kperp  # n=2, k=1: K is a self-perp line
        assert pairing.perp(flag.K) == flag.K


# -- fiber data ------------------------------------------------------------------


def test_fiber_data_diagonal_example(space4):
    r = space4.ring
    deep = diag_lattice(r, [1, 0, -1, -1])
    y = md.y_from_rz(space4, deep)
    fd = md.fiber_data(space4, y)
    assert fd.dim == 3 and fd.V1.dim == 1 and fd.Vk.dim == 2
    assert rs.contains(space4.field, fd.Vk, fd.V1)
    # hand computation: the pairing couples the two non-radical reps with
    # value 1 = reduction of p * b(y1, p^-1 y4)
    f = space4.field
    nonzero = [(i, j) for i in range(3) for j in range(3)
               if any(fd.beta.gram[i][j])]
    assert len(nonzero) == 2
    for i, j in nonzero:
        assert fd.beta.gram[i][j] == f.one


def test_fiber_dims_on_all_y(space4):
    for k in (1, 2):
        for y in md.enumerate_y(space4, k):
            fd = md.fiber_data(space4, y, k)
            assert (fd.dim, fd.V1.dim, fd.Vk.dim) == (2 * k - 1, 1, k)


def test_isotropic_complements_k1(space2):
    for y in md.enumerate_y(space2, 1):
        fd = md.fiber_data(space2, y, 1)
        assert md.isotropic_complements(space2, fd) == [rs.zero_subspace(1)]


def test_isotropic_complements_vs_brute_force(space4):
    # brute force: scan every line of the fiber space and keep those that
    # are isotropic and complementary
    field = space4.field
    ys = md.enumerate_y(space4, 2)
    for y in ys[:12]:
        fd = md.fiber_data(space4, y, 2)
        fast = md.isotropic_complements(space4, fd)
        brute = [
            S
            for S in rs.enumerate_subspaces(field, 3, 1)
            if fd.beta.is_isotropic(S)
            and rs.sum_spaces(field, S, fd.Vk).dim == 3
        ]
        brute.sort(key=lambda S: S.rows)
        assert fast == brute


def test_complement_roundtrip(space4):
    pts = [pt for pt in md.enumerate_rz(space4) if md.stratum_of(space4, pt.L0) == 2]
    for pt in pts[:40]:
        t = md.triple_from_rz(space4, pt.L0, 2)
        y = md.YPoint(t.M0, t.N0)
        fd = md.fiber_data(space4, y, 2)
        F = md.complement_from_triple(space4, t, fd)
        back = md.rz_from_y_complement(space4, y, fd, F)
        assert back.L0 == pt.L0


# -- enumerators -------------------------------------------------------------------


def test_enumerate_rz_counts_and_selfcheck(space2, space3_p3):
    pts = md.enumerate_rz(space2)
    assert len(pts) == 3
    assert all(md.is_rz_point(space2, pt.L0) for pt in pts)
    keys = [pt.sort_key() for pt in pts]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_enumerate_rz_naive_agrees(space2):
    assert md.enumerate_rz(space2) == md.enumerate_rz(space2, naive=True)


def test_enumerate_rz_p3(ring32):
    space = HermitianSpace(ring32, 2)
    assert len(md.enumerate_rz(space)) == 4


def test_enumerate_dl_counts(space2, ring32):
    assert len(md.enumerate_dl(space2, 1)) == 3
    space_p3 = HermitianSpace(ring32, 2)
    assert len(md.enumerate_dl(space_p3, 1)) == 4
    assert md.enumerate_dl(space2, 1) == md.enumerate_dl(space2, 1, naive=True)


def test_enumerate_y_naive_agrees(space4):
    for k in (1, 2):
        assert md.enumerate_y(space4, k) == md.enumerate_y(space4, k, naive=True)


def test_ceiling_exceeded():
    ring = make_ring(RingParams(2, 2, 6))
    space = HermitianSpace(ring, 4)
    with pytest.raises(CeilingExceeded):
        md.enumerate_rz(space, ceiling=10)


def test_enumerators_deterministic(space2):
    a = md.enumerate_rz(space2)
    b = md.enumerate_rz(space2)
    assert a == b


# -- hearts --------------------------------------------------------------------------


@pytest.mark.parametrize("p,expected", [(2, 3), (3, 4)])
def test_heart_counts_n2(p, expected):
    ring = make_ring(RingParams(p, 2, 6))
    space = HermitianSpace(ring, 2)
    assert len(md.hearts(space)) == expected


def test_heart_count_n4(space4):
    # classical count of maximal isotropics: (q+1)(q^3+1) at q = 2
    assert len(md.hearts(space4)) == 27


def test_hearts_odd_rank_rejected(ring22):
    space = HermitianSpace(ring22, 3)
    with pytest.raises(UsageError):
        md.hearts(space)


def test_heart_of_distinct_n2(space2):
    pts = md.enumerate_rz(space2)
    seen = set()
    for pt in pts:
        h = md.heart_of(space2, pt.L0)
        assert md.is_heart_point(space2, pt.L0, h)
        seen.add(h.lam0)
    assert len(seen) == 3


def test_heart_sum_is_scalar_dual(space2):
    # pN0 = N0* before the construction
    r = space2.ring
    for pt in md.enumerate_rz(space2):
        N0 = lt.lattice_sum(r, pt.L0, space2.standard)
        assert space2.dual(N0) == lt.scale(r, N0, 1)


def test_standard_is_not_heart_point(space2):
    h = md.hearts(space2)[0]
    assert not md.is_heart_point(space2, space2.standard, h)


def test_heart_points_are_rz(space2):
    for h in md.hearts(space2):
        for pt in md.enumerate_heart_points(space2, h):
            assert md.is_rz_point(space2, pt.L0)


def test_dl_heart_n2_single_point(space2):
    for h in md.hearts(space2):
        flags = md.enumerate_dl_heart(space2, h)
        assert len(flags) == 1
        assert flags[0].F.dim == 0 and flags[0].Fperp.dim == 2
        for pt in md.enumerate_heart_points(space2, h):
            assert md.dl_heart_flag(space2, pt.L0, h) == flags[0]


def test_dl_heart_flag_corank_chain(space4):
    h = md.hearts(space4)[0]
    pts = md.enumerate_heart_points(space4, h)
    pairing = space4.rescaled_pairing(h.lam0)
    for pt in pts[:15]:
        flag = md.dl_heart_flag(space4, pt.L0, h)
        assert (flag.F.dim, flag.Fperp.dim) == (1, 3)
        assert pairing.perp(flag.F) == flag.Fperp


# -- labels ----------------------------------------------------------------------------


def test_xmu_labels_diagonal(space4):
    r = space4.ring
    lbl = md.xmu_label(space4, diag_lattice(r, [0, 0, 0, -1]))
    assert (lbl.k, lbl.flavor) == (1, "interior")
    assert lbl.cochar0 == (0, 0, 0, -1)
    assert lbl.cochar1 == (1, 0, 0, 0)
    lbl2 = md.xmu_label(space4, diag_lattice(r, [1, 0, -1, -1]))
    assert (lbl2.k, lbl2.flavor) == (2, "heart")
    assert lbl2.heart is not None


def test_xmu_labels_n2_hearts(space2):
    hearts = set()
    for pt in md.enumerate_rz(space2):
        lbl = md.xmu_label(space2, pt.L0)
        assert (lbl.k, lbl.flavor) == (1, "heart")
        hearts.add(lbl.heart.lam0)
    assert len(hearts) == 3


def test_xmu_membership_exhaustive_n3(ring22):
    # compare against the direct condition over every window lattice
    space = HermitianSpace(ring22, 3)
    count = 0
    for L in md._window_lattices(space, naive=True, ceiling=md.DEFAULT_CEILING):
        assert md.xmu_membership(space, L) == md.is_rz_point(space, L)
        count += md.is_rz_point(space, L)
    assert count >= len(md.enumerate_rz(space))
    assert not md.xmu_membership(space, space.standard)
