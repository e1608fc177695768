"""Named verification suites, one per module, used by ``qphase verify``."""

from dataclasses import dataclass
from itertools import product

import numpy as np

from . import aawigner, hwgroup, linalg, metaplectic, modring, qosc, schwinger, sl2r, wk


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    max_residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tol)

    def as_dict(self) -> dict:
        return {"name": self.name, "max_residual": float(self.max_residual), "tol": self.tol, "pass": self.passed}


def _random_unitary(d, rng):
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _need(cond: bool, msg: str):
    if not cond:
        raise ConfigError(msg)


def suite_linalg(d, rng):
    _need(d >= 2, "dimension must be >= 2")
    u = _random_unitary(d, rng)
    f = schwinger.fourier(d)
    recon = 0.0
    for mat in (u, f):
        spaces = linalg.eig_unitary(mat)
        V = np.hstack([s.basis for s in spaces])
        lam = np.concatenate([[s.eigenvalue] * s.multiplicity for s in spaces])
        recon = max(recon, linalg.frob(mat - (V * lam) @ V.conj().T))
    a, b = rng.normal(size=(2, d, d)) + 1j * rng.normal(size=(2, d, d))
    x = np.diag(1j * rng.normal(size=d))
    return [
        Check("unitarity of a random unitary", linalg.unitarity_error(u), 1e-10 * d),
        Check("eig_unitary reconstruction", recon, 1e-9 * d),
        Check("trace(ab) = trace(ba)", abs(linalg.trace(a @ b) - linalg.trace(b @ a)), 1e-10 * d),
        Check("expm of a diagonal", float(np.abs(linalg.expm_small(x) - np.diag(np.exp(np.diag(x)))).max()), 1e-12),
    ]


def suite_modring(d, rng):
    _need(d >= 2, "dimension must be >= 2")
    elems = [modring.random_sl2(d, rng) for _ in range(6)]
    assoc = 0
    for a, b, c in zip(elems, elems[1:], elems[2:]):
        assoc += int((a @ b) @ c != a @ (b @ c))
    checks = [
        Check("associativity (mismatches)", assoc, 0),
        Check("g1^D = I (order - D)", abs(modring.sl2_order(modring.g1(d)) - d), 0),
    ]
    if modring.is_prime(d) and d > 2:
        gs = max(abs(abs(modring.gauss_sum(m, d)) - 1) for m in range(1, d))
        checks += [
            Check("|sigma(m)| = 1", gs, 1e-12),
            Check("g2^(D-1) = I (order - (D-1))", abs(modring.sl2_order(modring.g2(d)) - (d - 1)), 0),
            Check("rotation family determinants", sum(r.det != 1 for r in modring.rotation_family(d)), 0),
        ]
    return checks


def suite_schwinger(d, rng):
    _need(d >= 2, "dimension must be >= 2")
    S = {(a, b): schwinger.schwinger_s(d, a, b) for a in range(d) for b in range(d)}
    eye = np.eye(d)
    adj = tr = comp = inv = 0.0
    for (a, b), s in S.items():
        adj = max(adj, np.abs(s.conj().T - schwinger.schwinger_s(d, -a, -b)).max())
        tr = max(tr, abs(np.trace(s) - (d if a == b == 0 else 0)))
        inv = max(inv, np.abs(s @ schwinger.schwinger_s(d, -a, -b) - eye).max())
        for (c, e), t in S.items():
            ph = schwinger.composition_phase(d, a, b, c, e)
            comp = max(comp, np.abs(s @ t - ph * schwinger.schwinger_s(d, a + c, b + e)).max())
    labels = list(S)
    assoc = 0.0
    for _ in range(50):
        x, y, z = (S[labels[i]] for i in rng.integers(0, len(labels), 3))
        assoc = max(assoc, np.abs((x @ y) @ z - x @ (y @ z)).max())
    U, V = schwinger.clock_shift(d)
    F = schwinger.fourier(d)
    Fi = F.conj().T
    Ui, Vi = U.conj().T, V.conj().T
    seq = [(U, V), (V, Ui), (Ui, Vi), (Vi, U), (U, V)]
    auto = max(
        max(np.abs(F @ p @ Fi - P).max(), np.abs(F @ q @ Fi - Q).max())
        for (p, q), (P, Q) in zip(seq, seq[1:])
    )
    rot = max(np.abs(F @ s @ Fi - schwinger.schwinger_s(d, -b, a)).max() for (a, b), s in S.items())
    g = schwinger.gamma0(d)
    eigv = max(np.abs(U @ F[:, k] - np.exp(1j * g * k) * F[:, k]).max() for k in range(d))
    return [
        Check("S_m^dagger = S_-m", adj, 1e-11),
        Check("Tr S_m = D delta_m0", tr, 1e-11),
        Check("S_m S_m' = phase S_m+m'", comp, 1e-11),
        Check("associativity", assoc, 1e-11),
        Check("S_0 = I", np.abs(S[0, 0] - eye).max(), 1e-11),
        Check("S_m S_-m = I", inv, 1e-11),
        Check("Fourier automorphism cycle", auto, 1e-12),
        Check("F^4 = I", np.abs(np.linalg.matrix_power(F, 4) - eye).max(), 1e-12),
        Check("F S_m F^-1 = S_(-m2,m1)", rot, 1e-12),
        Check("U |v>_k = exp(i g k) |v>_k", eigv, 1e-12),
        Check("DFT multiplicities sum to D", abs(sum(schwinger.dft_multiplicities(d).values()) - d), 0),
    ]


def suite_wk(d, rng):
    _need(d >= 2, "dimension must be >= 2")
    T = wk.delta_table(d)
    rt_s = max(np.abs(wk.s_from_delta(d, a, b, T) - schwinger.schwinger_s(d, a, b)).max() for a in range(d) for b in range(d))
    # Delta from the reconstructed S basis
    Srec = {(a, b): wk.s_from_delta(d, a, b, T) for a in range(d) for b in range(d)}
    g = schwinger.gamma0(d)
    rt_d = 0.0
    for n1, n2 in product(range(d), repeat=2):
        acc = sum(np.exp(-1j * g * ((a * n2 - b * n1) % d)) * s for (a, b), s in Srec.items()) * d**-1.5
        rt_d = max(rt_d, np.abs(acc - T[n1, n2]).max())
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    psi /= np.linalg.norm(psi)
    W = wk.wigner_grid(psi, T)
    tr = max(abs(np.trace(T[a, b]) - d**-0.5) for a in range(d) for b in range(d))
    checks = [
        Check("S from Delta round trip", rt_s, 1e-10),
        Check("Delta from S round trip", rt_d, 1e-10),
        Check("Tr Delta(n) = D^-1/2", tr, 1e-12),
        Check("sum_n W = sqrt(D)", abs(W.sum() - np.sqrt(d)), 1e-10),
    ]
    if d % 2:
        herm = max(np.abs(T[a, b] - T[a, b].conj().T).max() for a in range(d) for b in range(d))
        checks.append(Check("Delta(n) Hermitian", herm, 1e-12))
    return checks


def suite_metaplectic(d, rng, n_random: int = 20):
    if d == 2 or not modring.is_prime(d):
        raise ConfigError("dimension must be an odd prime")
    T = wk.delta_table(d)
    cov = wkc = uni = proj = inv = wk3 = 0.0
    order_bad = 0
    for _ in range(n_random):
        r = modring.random_sl2(d, rng)
        g = metaplectic.metaplectic_g(r)
        cov = max(cov, metaplectic.covariance_error(g))
        wkc = max(wkc, metaplectic.wk_covariance_error(g, T))
        uni = max(uni, metaplectic.unitarity(g))
        _, res = metaplectic.projective_multiplier(r, modring.random_sl2(d, rng), tol=np.inf)
        proj = max(proj, res)
        _, res = linalg.phase_fit(metaplectic.metaplectic_g(modring.sl2_inv(r)).mat, g.mat.conj().T)
        inv = max(inv, res)
        G, Gh = g.mat, g.mat.conj().T
        for _ in range(3):
            a, b, c, e = (int(x) for x in rng.integers(0, d, 4))
            lhs = (Gh @ schwinger.schwinger_s(d, a, b) @ G) @ (Gh @ schwinger.schwinger_s(d, c, e) @ G)
            rhs = schwinger.composition_phase(d, a, b, c, e) * (Gh @ schwinger.schwinger_s(d, a + c, b + e) @ G)
            wk3 = max(wk3, np.abs(lhs - rhs).max())
    for r in modring.rotation_family(d):
        k = metaplectic.projective_order(metaplectic.metaplectic_g(r))
        order_bad += int((d - 1) * (d + 1) % k != 0 or k != modring.sl2_order(r))
    return [
        Check("G^dagger S_m G = S_Rm", cov, 1e-9),
        Check("G^dagger Delta(n) G = Delta(Rn)", wkc, 1e-9),
        Check("G unitary", uni, 1e-10),
        Check("projective multiplier residual", proj, 1e-9),
        Check("G(R^-1) = G(R)^dagger up to phase", inv, 1e-9),
        Check("composition law on the transformed basis", wk3, 1e-10),
        Check("rotation projective orders (mismatches)", order_bad, 0),
    ]


def suite_hwgroup(d, rng):
    _need(d >= 1, "dimension must be >= 1")
    G, O, w = hwgroup.weyl_pair(d)
    res = hwgroup.partner_exists(G) if d >= 2 else None
    checks = [
        Check("G O = Omega O G", np.abs(G @ O - w * O @ G).max(), 1e-13),
        Check("O^dagger G O = Omega G", np.abs(O.conj().T @ G @ O - w * G).max(), 1e-13),
        Check("G^d = O^d = I", max(np.abs(np.linalg.matrix_power(X, d) - np.eye(d)).max() for X in (G, O)), 1e-12),
    ]
    if res is not None:
        rel = np.abs(G @ res.O - res.omega * res.O @ G).max() if res.found else np.inf
        checks.append(Check("partner of the Weyl G", rel, 1e-9))
        checks.append(Check("partner O unitary", linalg.unitarity_error(res.O) if res.found else np.inf, 1e-9))
    f4 = hwgroup.partner_exists(schwinger.fourier(4))
    checks.append(Check("fourier(4) has no partner", float(f4.found), 0))
    bad = 0
    for a, b, c in product(range(1, 2 * d + 1), repeat=3):
        s = hwgroup.gamma_analyze(a, b, c)
        if s.valid and (s.irrep_count == 1) != (s.a_prime == s.b_prime == 1):
            bad += 1
    checks.append(Check("single irrep iff a' = b' = 1 (violations)", bad, 0))
    return checks


def suite_qosc(d, rng):
    _need(d >= 3 and d % 2 == 1, "dimension must be odd and >= 3")
    alg = fmin = spec = 0.0
    for kappa in range(1, d):
        o = qosc.build_qosc(d, kappa)
        alg = max(alg, *qosc.qosc_algebra_residuals(o).values())
        fmin = min(fmin, o.f.min())
        ev = np.sort(np.linalg.eigvalsh(o.Adag @ o.A))
        want = np.sort(o.C + np.real(np.diag(qosc.q_number_op(o))))
        spec = max(spec, np.abs(ev - want).max())
    p = qosc.phase_operator(d)
    o = qosc.build_qosc(d, 1)
    F = schwinger.fourier(d)
    rep = qosc.number_phase_commutators(d, min(2, d - 1))
    uq = qosc.uqsl2_from_schwinger(d, (1, 0), (0, 1))
    return [
        Check("q-oscillator algebra", alg, 1e-10),
        Check("f(n) >= 0 (negative part)", -fmin, 1e-12),
        Check("spectrum of AdagA = C + [n]", spec, 1e-10),
        Check("E^D = I", np.abs(np.linalg.matrix_power(p.E, d) - np.eye(d)).max(), 0),
        Check("phase eigen-relations", qosc.phase_eigen_residual(p), 1e-12),
        Check("phase states are conj(F) columns", np.abs(p.phase_states - F.conj()).max(), 1e-12),
        Check("Q E = q E Q", np.abs(o.Q @ p.E - o.q * p.E @ o.Q).max(), 1e-12),
        Check("integer-power Q/E relations", rep.max_qe_residual, 1e-12),
        Check("[N,E^r] interior elements = -r", rep.interior_error, 1e-12),
        Check("[N,E^r] wrap elements = D - r", rep.wrap_error, 1e-12),
        Check("u_q sl(2) relations", max(qosc.uqsl2_residuals(uq).values()), 1e-10),
    ]


def suite_sl2r(d, rng):
    br = cas = lad = 0.0
    for two_l in range(0, 17):
        rep = sl2r.poly_rep(two_l / 2)
        L = two_l / 2
        br = max(br, *sl2r.bracket_residuals(rep.K1, rep.K2, rep.K3).values())
        cas = max(cas, np.abs(sl2r.casimir(rep) - L * (L + 1) * np.eye(rep.dim)).max())
        if rep.dim > 1:
            lad = max(lad, np.abs(rep.raising @ np.eye(rep.dim)[:, :-1] - np.diag(-(L - rep.m_values[:-1]), -1)[:, :-1]).max())
    grid = sl2r.GridSpec(1.0, 1.2, 0.4, 0.6, 1e-3)
    gres = max(sl2r.grid_eigencheck(j, g, grid) for j, g in ((1, 0.7), (2, 1.0), (3, 1.1)))
    ratios = [sl2r.convergence_ratio(lambda G, j=j, g=g: sl2r.grid_eigencheck(j, g, G), grid) for j, g in ((1, 0.7), (2, 1.0), (3, 1.1))]
    hres = sl2r.h_chi_eigencheck(1.1, 0.3, 0.2, grid)
    fac = 0.0
    for _ in range(10):
        l1, l3 = rng.normal(size=2)
        l2 = rng.uniform(-0.9, 0.9) * l1
        f = sl2r.factor_lambda((l1, l2, l3), "elliptic")
        fac = max(fac, f.conjugation_residual, f.reconstruction_error)
        l2 = np.sign(rng.normal()) * (np.hypot(l1, l3) + rng.uniform(0.1, 2))
        f = sl2r.factor_lambda((l1, l2, l3), "hyperbolic")
        fac = max(fac, f.conjugation_residual, f.reconstruction_error)
    M = max(d, 6)
    K2 = sl2r.qho_generators(M)[1]
    qho_partner = hwgroup.partner_exists(linalg.expm_small(-1j * 0.7 * K2))
    return [
        Check("polynomial brackets, 2l <= 16", br, 1e-12),
        Check("Casimir = l(l+1), 2l <= 16", cas, 1e-12),
        Check("raising ladder coefficients", lad, 1e-12),
        Check("2x2 brackets", max(sl2r.bracket_residuals(*sl2r.hermitian_generators_2x2()).values()), 1e-12),
        Check("grid eigen-residual at h=1e-3", gres, 5e-3),
        Check("h^2 convergence (max |ratio - 4|)", max(abs(r - 4) for r in ratios), 0.1),
        Check("transported eigenfunction residual", hres, 5e-3),
        Check("Lambda factorization", fac, 1e-10),
        Check("QHO brackets (interior block)", max(sl2r.qho_bracket_residuals(M).values()), 1e-10),
        Check("QHO K2 positive (min eigenvalue below 0)", max(0.0, -np.linalg.eigvalsh(K2).min()), 0),
        Check("no partner for exp(-i theta K2_QHO)", float(qho_partner.found), 0),
    ]


def suite_aawigner(d, rng):
    _need(d >= 4, "dimension must be >= 4")
    n = d // 2
    fock = np.zeros(d, complex)
    fock[n] = 1
    split = np.zeros(d, complex)
    split[n] = split[n - 1] = 1 / np.sqrt(2)
    gf, gs = aawigner.aa_grid(fock), aawigner.aa_grid(split)
    J, th = gf.J_values[:, None], gf.theta_values[None, :]
    ref_f = (J == n) / (2 * np.pi)
    ref_s = ((J == n) + 2 * (J == n - 0.5) * np.cos(th) + (J == n - 1)) / (4 * np.pi)
    _, pt_f = aawigner.aa_marginals(fock, gf)
    pj_s, pt_s = aawigner.aa_marginals(split, gs)
    herm = tr = 0.0
    Ts = 2 * d
    ths = aawigner.theta_grid(Ts)
    total = np.zeros((d, d), complex)
    for Jv in aawigner.j_grid(d):
        for t in ths:
            D = aawigner.delta_ct(d, Jv, t)
            herm = max(herm, np.abs(D - D.conj().T).max())
            tr = max(tr, abs(np.trace(D) - 1 / (2 * np.pi)))
            total += D
    compl = np.abs(total * (2 * np.pi / Ts) * 0.5 - np.eye(d)).max()
    H = aawigner.SpectrumFn((0.0, 0.0, 1.0))
    dt = 1e-4
    fd = (aawigner.aa_grid(aawigner.evolve(split, H, dt)).W - aawigner.aa_grid(aawigner.evolve(split, H, -dt)).W) / (2 * dt)
    moy = np.abs(aawigner.moyal_rhs(gs, H).W - fd).max()
    lin = aawigner.SpectrumFn((0.0, 1.0))
    static = np.abs(aawigner.moyal_rhs(gf, lin).W).max()
    transport = max(aawigner.rigid_transport_error(split, 1.0, t) for t in np.linspace(0, 2 * np.pi, 9))
    rep = aawigner.phase_op_eom_check(aawigner.SpectrumFn((0.0, 1.5)), 2, [0.0, 0.4, 1.1], d)
    lin_gap = max(abs(e["direct_rate"] - e["literal_rate"]) for e in rep.elements if not e["wrap"])
    sym = aawigner.wwm_symbol(np.diag(np.arange(d)), aawigner.j_grid(d)[::2], [0.0, 1.3])
    sym_err = np.abs(sym - np.arange(d)[:, None]).max()
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    psi /= np.linalg.norm(psi)
    gphase = np.abs(aawigner.aa_grid(np.exp(0.7j) * psi).W - aawigner.aa_grid(psi).W).max()
    E = qosc.phase_operator(d).E
    pj0, _ = aawigner.aa_marginals(psi, aawigner.aa_grid(psi))
    pj1, _ = aawigner.aa_marginals(E @ psi, aawigner.aa_grid(E @ psi))
    equi = np.abs(pj1[::2] - np.roll(pj0[::2], -1)).max()
    return [
        Check("pure Fock closed form", np.abs(gf.W - ref_f).max(), 1e-10),
        Check("split state closed form", np.abs(gs.W - ref_s).max(), 1e-10),
        Check("Fock angle marginal = 1/2pi", np.abs(pt_f - 1 / (2 * np.pi)).max(), 1e-10),
        Check("split angle marginal = (1+cos)/2pi", np.abs(pt_s - (1 + np.cos(gs.theta_values)) / (2 * np.pi)).max(), 1e-10),
        Check("split action marginal", abs(pj_s[2 * n] - 0.5) + abs(pj_s[2 * n - 2] - 0.5), 1e-10),
        Check("angle marginal integrates to 1", abs(aawigner.trapezoid_periodic(pt_s, gs.theta_values) - 1), 1e-8),
        Check("Delta_CT Hermitian", herm, 1e-11),
        Check("Tr Delta_CT = 1/2pi", tr, 1e-11),
        Check("Delta_CT completeness", compl, 1e-9),
        Check("symbol of N at integer J", sym_err, 1e-10),
        Check("Moyal rhs vs evolution, H = n^2", moy, 1e-5),
        Check("Fock state static under H = omega n", static, 1e-10),
        Check("rigid transport, H = omega n", transport, 1e-9),
        Check("phase-operator EOM direct form", rep.max_direct_residual, 1e-6),
        Check("EOM literal form agrees for linear H", lin_gap, 1e-12),
        Check("global phase invariance", gphase, 1e-12),
        Check("E_phi shifts P(J) by one", equi, 1e-12),
    ]


def suite_cli(d, rng):
    from .cli import render_wigner_csv

    _need(d >= 4, "dimension must be >= 4")
    a = render_wigner_csv(d, f"split:{d // 2}", 4 * d)
    b = render_wigner_csv(d, f"split:{d // 2}", 4 * d)
    return [Check("repeated wigner output identical (differing bytes)", sum(x != y for x, y in zip(a, b)) + abs(len(a) - len(b)), 0)]


SUITES = {
    "linalg": suite_linalg,
    "modring": suite_modring,
    "schwinger": suite_schwinger,
    "wk": suite_wk,
    "metaplectic": suite_metaplectic,
    "hwgroup": suite_hwgroup,
    "qosc": suite_qosc,
    "sl2r": suite_sl2r,
    "aawigner": suite_aawigner,
    "cli": suite_cli,
}


def run_suite(name: str, d: int, seed: int = 0, tol: float | None = None) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    for nm in names:
        if nm not in SUITES:
            raise ConfigError(f"unknown suite {nm!r}")
    checks = []
    for nm in names:
        rng = np.random.default_rng(seed)
        for c in SUITES[nm](d, rng):
            c = Check(f"{nm}: {c.name}", float(c.max_residual), c.tol if tol is None else tol)
            checks.append(c)
    return checks
