"""Acceptance criteria 1-11.

Each test records one PASS/FAIL line; the lines are echoed in the pytest
terminal summary and printed directly when this file is run as a script.
"""

import itertools
import json
import subprocess
import sys
import time

import numpy as np
import pytest

from qphase import aawigner as aw
from qphase import hwgroup, metaplectic, modring, qosc, schwinger as sw, sl2r, wk
from qphase.aawigner import SpectrumFn

RESULTS: dict[int, str] = {}


def record(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def all_s(d):
    return np.array([sw.schwinger_s(d, a, b) for a in range(d) for b in range(d)])


def test_criterion_01_schwinger_algebra():
    t0 = time.perf_counter()
    worst = 0.0
    rng = np.random.default_rng(0)
    for d in range(2, 17):
        S = all_s(d)
        labels = list(itertools.product(range(d), repeat=2))
        eye = np.eye(d)
        worst = max(worst, np.abs(S[0] - eye).max())
        tr = np.trace(S, axis1=1, axis2=2)
        worst = max(worst, np.abs(tr - d * (np.arange(d * d) == 0)).max())
        # S on unreduced labels 0..2d-2, as needed by the composition law for even d
        ext = np.array([[sw.schwinger_s(d, a, b) for b in range(2 * d)] for a in range(2 * d)])
        n1s, n2s = np.array(labels).T
        for i, (m1, m2) in enumerate(labels):
            worst = max(worst, np.abs(S[i].conj().T - sw.schwinger_s(d, -m1, -m2)).max())
            worst = max(worst, np.abs(S[i] @ sw.schwinger_s(d, -m1, -m2) - eye).max())
            prod = S[i] @ S  # S_m S_m' for every m'
            ph = np.array([sw.composition_phase(d, m1, m2, n1, n2) for n1, n2 in labels])
            rhs = ph[:, None, None] * ext[m1 + n1s, m2 + n2s]
            worst = max(worst, np.abs(prod - rhs).max())
        # associativity: the phase cocycle over every label triple, then sampled matrix triples
        m = np.array(labels)
        c = m[:, None, 0] * m[None, :, 1] - m[:, None, 1] * m[None, :, 0]
        s = m[:, None, :] + m[None, :, :]
        c_sum_third = s[:, :, None, 0] * m[None, None, :, 1] - s[:, :, None, 1] * m[None, None, :, 0]
        c_first_sum = m[:, None, None, 0] * s[None, :, :, 1] - m[:, None, None, 1] * s[None, :, :, 0]
        lhs = c[:, :, None] + c_sum_third
        rhs = c[None, :, :] + c_first_sum
        # phases exp(i pi x / d) agree iff x = 0 mod 2d; integer arithmetic makes this exact
        worst = max(worst, float(np.any((lhs - rhs) % (2 * d))))
        for _ in range(20):
            a, b, e = (S[j] for j in rng.integers(0, d * d, 3))
            worst = max(worst, np.abs((a @ b) @ e - a @ (b @ e)).max())
    dt = time.perf_counter() - t0
    record(1, worst <= 1e-11 and dt < 10, f"six Schwinger properties, D=2..16, max residual {worst:.2e}, {dt:.1f} s")


def test_criterion_02_duality():
    worst = 0.0
    g = None
    for d in range(2, 13):
        g = sw.gamma0(d)
        table = wk.delta_table(d)
        S = {(a, b): sw.schwinger_s(d, a, b) for a in range(d) for b in range(d)}
        for (m1, m2), Sm in S.items():
            worst = max(worst, np.abs(wk.s_from_delta(d, m1, m2, table) - Sm).max())
        for n1, n2 in itertools.product(range(d), repeat=2):
            direct = sum(np.exp(-1j * g * sw.cross(m1, m2, n1, n2)) * Sm for (m1, m2), Sm in S.items()) / d**1.5
            worst = max(worst, np.abs(direct - table[n1, n2]).max())
    record(2, worst <= 1e-10, f"WK duality both directions, D=2..12, max deviation {worst:.2e}")


def test_criterion_03_fourier():
    worst = 0.0
    for d in range(2, 17):
        F = sw.fourier(d)
        Fi = F.conj().T
        U, V = sw.clock_shift(d)
        worst = max(worst, np.abs(np.linalg.matrix_power(F, 4) - np.eye(d)).max())
        cycle = [(U, V), (V, U.conj().T), (U.conj().T, V.conj().T), (V.conj().T, U), (U, V)]
        for (a, b), (a2, b2) in zip(cycle, cycle[1:]):
            worst = max(worst, np.abs(F @ a @ Fi - a2).max(), np.abs(F @ b @ Fi - b2).max())
    mismatches = 0
    for d in range(2, 65):
        ev = np.linalg.eigvals(sw.fourier(d))
        oracle = {r: int(np.sum(np.abs(ev - r) < 1e-6)) for r in sw.FOURTH_ROOTS}
        mismatches += sw.dft_multiplicities(d) != oracle
    record(3, worst <= 1e-12 and mismatches == 0,
           f"F^4 and automorphism cycle residual {worst:.2e}; multiplicity mismatches D<=64: {mismatches}")


def test_criterion_04_metaplectic():
    cov = wkc = uni = proj = 0.0
    count = 0
    for d in (5, 7, 13):
        rng = np.random.default_rng(d)
        table = wk.delta_table(d)
        elems = [modring.random_sl2(d, rng) for _ in range(100)]
        for r in elems:
            g = metaplectic.metaplectic_g(r)
            cov = max(cov, metaplectic.covariance_error(g))
            wkc = max(wkc, metaplectic.wk_covariance_error(g, table))
            uni = max(uni, metaplectic.unitarity(g))
            count += 1
        for a, b in zip(elems, elems[1:] + elems[:1]):
            proj = max(proj, metaplectic.projective_multiplier(a, b, tol=np.inf)[1])
    ok = cov <= 1e-9 and wkc <= 1e-9 and uni <= 1e-10 and proj <= 1e-9
    record(4, ok, f"{count} random R: covariance {cov:.2e}, WK covariance {wkc:.2e}, "
                  f"unitarity {uni:.2e}, projective residual {proj:.2e}")


def test_criterion_05_weyl_pair():
    worst = 0.0
    for d in range(1, 33):
        G, O, w = hwgroup.weyl_pair(d)
        worst = max(worst, np.abs(G @ O - w * O @ G).max())
    res = hwgroup.partner_exists(sw.fourier(4))
    counts = {r: 0 for r in sw.FOURTH_ROOTS}
    for ev, mult in res.multiplicities:
        counts[min(counts, key=lambda r: abs(r - ev))] += mult
    mults = sorted(counts.values(), reverse=True)
    record(5, worst <= 1e-13 and not res.found and mults == [2, 1, 1, 0],
           f"GO = Omega OG residual {worst:.2e} (d<=32); fourier(4) partner absent, multiplicities {mults}")


def test_criterion_06_qoscillator():
    alg = 0.0
    fmin = np.inf
    for d in (5, 7, 9, 11):
        for kappa in range(1, d):
            o = qosc.build_qosc(d, kappa)
            alg = max(alg, *qosc.qosc_algebra_residuals(o).values())
            fmin = min(fmin, o.f.min())
            u = qosc.uqsl2_from_schwinger(d, (1, 0), (0, kappa))
            alg = max(alg, *qosc.uqsl2_residuals(u).values())
    f0 = qosc.build_qosc(5, 1).f[0]
    ok = alg <= 1e-10 and fmin >= -1e-12 and abs(f0 - 1.66944) <= 1e-4
    record(6, ok, f"algebra residual {alg:.2e}, min f {fmin:.3f}, f(0) at (5,1) = {f0:.6f}")


def test_criterion_07_phase_operator():
    exact = True
    eig = qe = 0.0
    for d in range(2, 17):
        p = qosc.phase_operator(d)
        exact &= np.array_equal(np.linalg.matrix_power(p.E, d), np.eye(d))
        eig = max(eig, qosc.phase_eigen_residual(p))
    for d in (3, 5, 7, 9, 11, 13):
        for kappa in range(1, d):
            qe = max(qe, qosc.number_phase_commutators(d, 1, kappa, max_power=d).max_qe_residual)
    record(7, exact and eig <= 1e-12 and qe <= 1e-12,
           f"E^D = I exact: {exact}; eigen residual {eig:.2e}; integer-power Q/E residual {qe:.2e}")


def test_criterion_08_sl2r():
    alg = 0.0
    for two_l in range(17):
        rep = sl2r.poly_rep(two_l / 2)
        L = two_l / 2
        alg = max(alg, *sl2r.bracket_residuals(rep.K1, rep.K2, rep.K3).values())
        alg = max(alg, np.abs(sl2r.casimir(rep) - L * (L + 1) * np.eye(rep.dim)).max())
    grid = sl2r.GridSpec(1.0, 1.2, 0.4, 0.6, 1e-3)
    fns = [lambda G, j=j, g=g: sl2r.grid_eigencheck(j, g, G) for j, g in ((1, 0.7), (2, 1.0), (3, 1.1))]
    fns.append(lambda G: sl2r.h_chi_eigencheck(1.1, 0.3, 0.2, G))
    res = max(f(grid) for f in fns)
    ratios = [sl2r.convergence_ratio(f, grid) for f in fns]
    conv = max(abs(r - 4) for r in ratios)
    ok = alg <= 1e-12 and res <= 5e-3 and conv < 0.2
    record(8, ok, f"brackets/Casimir {alg:.1e}; grid residual {res:.2e} at h=1e-3; "
                  f"halving ratios {', '.join(f'{r:.3f}' for r in ratios)}")


def test_criterion_09_aa_closed_forms():
    d, n = 17, 8
    TP = 2 * np.pi
    worst = 0.0
    f = np.zeros(d, complex)
    f[n] = 1
    g = aw.aa_grid(f)
    worst = max(worst, np.abs(g.W - np.where(np.isclose(g.J_values, n), 1 / TP, 0)[:, None]).max())
    worst = max(worst, np.abs(aw.aa_marginals(f, g)[1] - 1 / TP).max())
    s = np.zeros(d, complex)
    s[[n, n - 1]] = 1 / np.sqrt(2)
    g = aw.aa_grid(s)
    want = np.zeros_like(g.W)
    want[[2 * n, 2 * n - 2]] = 1 / (2 * TP)
    want[2 * n - 1] = np.cos(g.theta_values) / TP
    worst = max(worst, np.abs(g.W - want).max())
    pj, pt = aw.aa_marginals(s, g)
    worst = max(worst, np.abs(pt - (1 + np.cos(g.theta_values)) / TP).max())
    pj_want = np.zeros(2 * d)
    pj_want[[2 * n, 2 * n - 2]] = 0.5
    worst = max(worst, np.abs(pj - pj_want).max())
    record(9, worst <= 1e-10, f"Fock and split closed forms and marginals at D=17, max error {worst:.2e}")


def test_criterion_10_dynamics():
    d = 17
    rng = np.random.default_rng(10)
    transport = 0.0
    for omega in (0.5, 1.0, 2.0):
        for _ in range(3):
            v = rng.normal(size=d) + 1j * rng.normal(size=d)
            v /= np.linalg.norm(v)
            for t in np.linspace(0, 2 * np.pi / omega, 9):
                transport = max(transport, aw.rigid_transport_error(v, omega, t))
    s = np.zeros(d, complex)
    s[[8, 7]] = 1 / np.sqrt(2)
    H2 = SpectrumFn((0.0, 0.0, 1.0))
    dt = 1e-4
    fd = (aw.aa_grid(aw.evolve(s, H2, dt)).W - aw.aa_grid(aw.evolve(s, H2, -dt)).W) / (2 * dt)
    moyal = np.abs(aw.moyal_rhs(aw.aa_grid(s), H2).W - fd).max()
    eom = aw.phase_op_eom_check(SpectrumFn((0.0, 0.9)), 3, [0.0, 0.4, 1.1], d)
    agree = eom.literal_agrees(1e-12, wrap=False)
    ok = transport <= 1e-9 and moyal <= 1e-5 and agree and eom.max_direct_residual < 1e-6
    record(10, ok, f"rigid transport {transport:.2e}; Moyal vs finite difference {moyal:.2e}; "
                   f"linear EOM literal = direct on non-wrapping elements: {agree}")


def test_criterion_11_cli():
    base = [sys.executable, "-m", "qphase"]
    cmds = [
        ["wigner", "--dim", "17", "--state", "split:8", "--thetas", "64"],
        ["evolve", "--dim", "9", "--state", "split:4", "--hamiltonian", "n^2"],
        ["metaplectic", "--dim", "13", "--seed", "5"],
        ["verify", "--suite", "wk", "--dim", "7"],
    ]
    identical = all(
        subprocess.run(base + c, capture_output=True).stdout == subprocess.run(base + c, capture_output=True).stdout
        for c in cmds
    )
    t0 = time.perf_counter()
    out = subprocess.run(base + ["verify", "--suite", "all", "--dim", "13"], capture_output=True, text=True)
    elapsed = time.perf_counter() - t0
    n_checks = len(json.loads(out.stdout)["checks"]) if out.returncode == 0 else 0
    ok = identical and out.returncode == 0 and elapsed < 120
    record(11, ok, f"byte-identical reruns: {identical}; verify --suite all --dim 13 exit {out.returncode} "
                   f"with {n_checks} checks in {elapsed:.1f} s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
