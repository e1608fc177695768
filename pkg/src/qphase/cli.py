"""Command-line front end: ``qphase <command> [options]``.

Commands: verify, wigner, marginals, evolve, metaplectic, symbol.
Exit status is 0 on success, 1 when a verification check fails and 2 on a
configuration error.
"""

import argparse
import ast
import json
import math
import sys
from pathlib import Path

import numpy as np
from numpy.polynomial import Polynomial

from . import aawigner, metaplectic, modring, qosc
from .suites import ConfigError, run_suite

MAX_DEGREE = 4


# serialization


def fmt(x: float) -> str:
    x = float(x)
    if x == 0:
        return "0"
    return format(x, ".17g")


def _json(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else json.dumps(str(float(obj)))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in seq):
            return "[" + ", ".join(_json(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _json(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON with every float written to 17 significant digits."""
    return _json(obj, indent, 0) + "\n"


def csv_rows(header: list[str], rows) -> str:
    lines = [",".join(header)]
    lines += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


# parsers


def _int_field(text: str, start: int, what: str) -> int:
    body = text[start:]
    try:
        return int(body)
    except ValueError:
        raise ConfigError(f"parse error at position {start}: expected integer {what}, got {body!r}") from None


def parse_state_spec(text: str, d: int) -> np.ndarray:
    """fock:<n> | split:<n> | phase:<r> | amps:<path>, normalized, dimension d."""
    kind, sep, _ = text.partition(":")
    if not sep:
        raise ConfigError(f"parse error at position {len(text)}: expected ':' in state spec")
    start = len(kind) + 1
    if kind == "fock":
        n = _int_field(text, start, "level")
        if not 0 <= n < d:
            raise ConfigError(f"fock level {n} out of range 0..{d - 1}")
        v = np.zeros(d, complex)
        v[n] = 1
        return v
    if kind == "split":
        n = _int_field(text, start, "level")
        if not 1 <= n < d:
            raise ConfigError(f"split level {n} out of range 1..{d - 1}")
        v = np.zeros(d, complex)
        v[n] = v[n - 1] = 1 / np.sqrt(2)
        return v
    if kind == "phase":
        r = _int_field(text, start, "phase label")
        if not 0 <= r < d:
            raise ConfigError(f"phase label {r} out of range 0..{d - 1}")
        return qosc.phase_operator(d).phase_states[:, r].copy()
    if kind == "amps":
        path = Path(text[start:])
        try:
            data = json.loads(path.read_text())
            v = np.array([complex(float(re), float(im)) for re, im in data])
        except (OSError, ValueError, TypeError) as exc:
            raise ConfigError(f"cannot read amplitudes from {path}: {exc}") from None
        if v.size != d:
            raise ConfigError(f"amplitude file has {v.size} entries, dimension is {d}")
        nrm = np.linalg.norm(v)
        if nrm == 0:
            raise ConfigError("amplitude vector is zero")
        return v / nrm
    raise ConfigError(f"parse error at position 0: unknown state kind {kind!r}")


_BINOPS = {ast.Add, ast.Sub, ast.Mult, ast.Pow, ast.Div}


def parse_hamiltonian(text: str) -> aawigner.SpectrumFn:
    """Polynomial in ``n`` with real coefficients, e.g. ``n^2 - 0.25*n``."""
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ConfigError(f"syntax error at position {max((exc.offset or 1) - 1, 0)}: {exc.msg}") from None

    def bad(node, msg):
        raise ConfigError(f"parse error at position {getattr(node, 'col_offset', 0)}: {msg}")

    def ev(node) -> Polynomial:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return Polynomial([float(node.value)])
        if isinstance(node, ast.Name):
            if node.id != "n":
                bad(node, f"unknown symbol {node.id!r}")
            return Polynomial([0.0, 1.0])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            left = ev(node.left)
            right = ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if right.degree() > 0:
                bad(node.right, "exponent and divisor must be constants")
            c = float(right.coef[0])
            if isinstance(node.op, ast.Div):
                if c == 0:
                    bad(node.right, "division by zero")
                return left / c
            if c != int(c) or c < 0:
                bad(node.right, "exponent must be a nonnegative integer")
            if left.degree() * int(c) > MAX_DEGREE:
                bad(node, f"degree exceeds {MAX_DEGREE}")
            return left ** int(c)
        bad(node, f"unsupported expression {ast.dump(node)[:40]}")

    poly = ev(tree).trim()
    if poly.degree() > MAX_DEGREE:
        raise ConfigError(f"degree {poly.degree()} exceeds {MAX_DEGREE}")
    return aawigner.SpectrumFn(tuple(float(c) for c in poly.coef))


# renderers shared by the commands and the cli suite


def render_wigner_csv(d: int, state: str, thetas: int) -> str:
    g = aawigner.aa_grid(parse_state_spec(state, d), thetas)
    rows = ((J, th, g.W[a, b]) for a, J in enumerate(g.J_values) for b, th in enumerate(g.theta_values))
    return csv_rows(["J", "theta", "W"], rows)


def _wigner(cfg) -> str:
    d, T = cfg["dim"], cfg["thetas"]
    if cfg["format"] == "json":
        g = aawigner.aa_grid(parse_state_spec(cfg["state"], d), T)
        return dumps({"dim": d, "J": g.J_values, "theta": g.theta_values, "W": [list(r) for r in g.W]})
    return render_wigner_csv(d, cfg["state"], T)


def _marginals(cfg) -> str:
    d = cfg["dim"]
    psi = parse_state_spec(cfg["state"], d)
    g = aawigner.aa_grid(psi, cfg["thetas"])
    pj, pt = aawigner.aa_marginals(psi, g)
    if cfg["format"] == "json":
        return dumps({"dim": d, "J": g.J_values, "P_J": pj, "theta": g.theta_values, "P_theta": pt})
    return csv_rows(["J", "P_J"], zip(g.J_values, pj)) + "\n" + csv_rows(["theta", "P_theta"], zip(g.theta_values, pt))


def _evolve(cfg) -> str:
    d = cfg["dim"]
    psi = parse_state_spec(cfg["state"], d)
    H = parse_hamiltonian(cfg["hamiltonian"])
    if cfg["steps"] < 1:
        raise ConfigError("steps must be >= 1")
    times = np.linspace(cfg["t0"], cfg["t1"], cfg["steps"] + 1)
    snaps = []
    for t in times:
        psit = aawigner.evolve(psi, H, t)
        g = aawigner.aa_grid(psit, cfg["thetas"])
        snaps.append((t, g.theta_values, aawigner.aa_marginals(psit, g)[1]))
    if cfg["format"] == "json":
        return dumps({"dim": d, "t": times, "theta": snaps[0][1], "P_theta": [list(s[2]) for s in snaps]})
    rows = ((t, th, p) for t, ths, pt in snaps for th, p in zip(ths, pt))
    return csv_rows(["t", "theta", "P_theta"], rows)


def _parse_r(text: str, d: int) -> modring.SL2Elem:
    try:
        s1, t1, s2, t2 = (int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError("--r expects four integers s1,t1,s2,t2") from None
    try:
        return modring.SL2Elem(d, s1, t1, s2, t2)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _metaplectic(cfg) -> tuple[str, int]:
    d = cfg["dim"]
    if d == 2 or not modring.is_prime(d):
        raise ConfigError("dimension must be an odd prime")
    if cfg.get("r"):
        r = _parse_r(cfg["r"], d)
    else:
        r = modring.random_sl2(d, np.random.default_rng(cfg["seed"]))
    g = metaplectic.metaplectic_g(r)
    tol = cfg["tol"] if cfg["tol"] is not None else 1e-9
    cov, wkc = metaplectic.covariance_error(g), metaplectic.wk_covariance_error(g)
    report = {
        "dim": d,
        "r": [[r.s1, r.t1], [r.s2, r.t2]],
        "case": g.case_tag,
        "matrix_re": [list(row) for row in g.mat.real],
        "matrix_im": [list(row) for row in g.mat.imag],
        "covariance_error": cov,
        "wk_covariance_error": wkc,
        "unitarity_error": metaplectic.unitarity(g),
        "tol": tol,
        "pass": bool(max(cov, wkc) <= tol),
    }
    return dumps(report), 0 if report["pass"] else 1


def _symbol(cfg) -> str:
    d = cfg["dim"]
    H = parse_hamiltonian(cfg["hamiltonian"])
    Js = aawigner.j_grid(d)
    ths = aawigner.theta_grid(cfg["thetas"])
    tab = aawigner.wwm_symbol(H.matrix(d), Js, ths, kernel=cfg["kernel"])
    if cfg["format"] == "json":
        return dumps({"dim": d, "J": Js, "theta": ths, "re": [list(r) for r in tab.real], "im": [list(r) for r in tab.imag]})
    rows = ((J, th, tab[a, b].real, tab[a, b].imag) for a, J in enumerate(Js) for b, th in enumerate(ths))
    return csv_rows(["J", "theta", "re", "im"], rows)


def _verify(cfg) -> tuple[str, int]:
    checks = run_suite(cfg["suite"], cfg["dim"], seed=cfg["seed"], tol=cfg["tol"])
    ok = all(c.passed for c in checks)
    report = {"suite": cfg["suite"], "dim": cfg["dim"], "checks": [c.as_dict() for c in checks]}
    return dumps(report), 0 if ok else 1


# argument handling

DEFAULTS = {
    "dim": 8,
    "suite": "all",
    "tol": None,
    "kappa": 1,
    "hamiltonian": "1.0*n",
    "state": "fock:0",
    "thetas": None,
    "t0": 0.0,
    "t1": 1.0,
    "steps": 10,
    "seed": 0,
    "out": None,
    "format": "csv",
    "kernel": "ct",
    "r": None,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values; flags take precedence")
    common.add_argument("--dim", type=int)
    common.add_argument("--suite")
    common.add_argument("--tol", type=float, help="replace every check tolerance")
    common.add_argument("--kappa", type=int)
    common.add_argument("--hamiltonian", help="polynomial in n, e.g. 'n^2 - 0.25*n'")
    common.add_argument("--state", help="fock:<n> | split:<n> | phase:<r> | amps:<path>")
    common.add_argument("--thetas", type=int, help="number of theta samples (default 4*dim)")
    common.add_argument("--t0", type=float)
    common.add_argument("--t1", type=float)
    common.add_argument("--steps", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=["csv", "json"])
    common.add_argument("--kernel", choices=["ct", "aa"], help="symbol kernel")
    common.add_argument("--r", help="SL(2,Z_D) element as s1,t1,s2,t2")

    parser = argparse.ArgumentParser(prog="qphase", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("verify", "run a verification suite and print a JSON report"),
        ("wigner", "action-angle Wigner table as CSV"),
        ("marginals", "action and angle marginals"),
        ("evolve", "angle marginal snapshots under H(N)"),
        ("metaplectic", "metaplectic operator and covariance residuals"),
        ("symbol", "symbol table of H(N)"),
    ]:
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            loaded = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read config file: {exc}") from None
        unknown = set(loaded) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(loaded)
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if not isinstance(cfg["dim"], int) or cfg["dim"] < 1:
        raise ConfigError("dimension must be a positive integer")
    if cfg["thetas"] is None:
        cfg["thetas"] = 4 * cfg["dim"]
    if cfg["thetas"] < 1:
        raise ConfigError("thetas must be positive")
    return cfg


COMMANDS = {
    "verify": _verify,
    "wigner": _wigner,
    "marginals": _marginals,
    "evolve": _evolve,
    "metaplectic": _metaplectic,
    "symbol": _symbol,
}


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        result = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text, code = result if isinstance(result, tuple) else (result, 0)
    if cfg["out"]:
        Path(cfg["out"]).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
