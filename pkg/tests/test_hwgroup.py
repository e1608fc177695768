import numpy as np
import pytest

from qphase import hwgroup, schwinger as sw
from conftest import random_unitary


def test_gamma_analyze_examples():
    g = hwgroup.gamma_analyze(7, 7, 7)
    assert g.valid and g.d == 7 and g.irrep_count == 1
    g = hwgroup.gamma_analyze(4, 6, 2)
    assert g.valid and g.d == 2 and (g.a_prime, g.b_prime) == (2, 3) and g.irrep_count == 6
    assert not hwgroup.gamma_analyze(3, 4, 2).valid


def test_gamma_analyze_validity_rule_and_single_irrep():
    for a in range(1, 13):
        for b in range(1, 13):
            for c in range(1, 7):
                g = hwgroup.gamma_analyze(a, b, c)
                assert g.valid == (a % c == 0 and b % c == 0)
                if g.valid:
                    assert (g.irrep_count == 1) == (g.a_prime == g.b_prime == 1)


@pytest.mark.parametrize("d", range(1, 33))
def test_weyl_pair(d):
    G, O, w = hwgroup.weyl_pair(d)
    assert np.abs(G @ O - w * O @ G).max() <= 1e-13
    assert np.abs(O.conj().T @ G @ O - w * G).max() <= 1e-13
    assert np.abs(np.linalg.matrix_power(G, d) - np.eye(d)).max() < 1e-12
    assert np.array_equal(np.linalg.matrix_power(O, d), np.eye(d))


def test_weyl_pair_trivial():
    G, O, w = hwgroup.weyl_pair(1)
    assert G.tolist() == [[1]] and O.tolist() == [[1]] and w == 1


def test_partner_for_weyl_g():
    G, _, _ = hwgroup.weyl_pair(5)
    res = hwgroup.partner_exists(G)
    assert res.found
    assert np.abs(G @ res.O - res.omega * res.O @ G).max() <= 1e-10
    assert np.abs(res.O.conj().T @ res.O - np.eye(5)).max() <= 1e-10


def test_partner_for_conjugated_degenerate_ladder(rng):
    # spectrum {i, -i} x 3: period 2 with equal multiplicities
    q = random_unitary(6, rng)
    g = q @ np.diag([1j, 1j, 1j, -1j, -1j, -1j]) @ q.conj().T
    res = hwgroup.partner_exists(g)
    assert res.found and abs(res.omega + 1) < 1e-12
    assert np.linalg.norm(g @ res.O - res.omega * res.O @ g) <= 1e-9
    assert np.linalg.norm(res.O.conj().T @ res.O - np.eye(6)) <= 1e-9


def test_no_partner_for_dft4():
    res = hwgroup.partner_exists(sw.fourier(4))
    assert not res.found
    counts = {r: 0 for r in sw.FOURTH_ROOTS}
    for ev, mult in res.multiplicities:
        counts[min(counts, key=lambda r: abs(r - ev))] += mult
    assert sorted(counts.values(), reverse=True) == [2, 1, 1, 0]


def test_no_partner_for_identity_or_unequal_multiplicities():
    assert not hwgroup.partner_exists(np.eye(4)).found
    assert not hwgroup.partner_exists(np.diag([1, 1, -1])).found
    # right multiplicities, wrong spacing
    assert not hwgroup.partner_exists(np.diag([1, 1j, -1])).found
