"""
``cqed-lab``: run a scenario from a JSON config and/or flags, emit a CSV or
JSON table.

Config document::

    {
      "scenario": "eit",
      "frequency_unit": 1.0,
      "parameters": {"omega_c": 0.2, "gamma21": 0.001},
      "grid": {"delta": {"start": -5, "stop": 5, "count": 401}},
      "output": {"path": "eit.csv", "format": "csv"}
    }

Frequencies in ``parameters`` and on frequency grids are in units of
``frequency_unit`` (rad/s per unit). Scenarios built on SI circuit elements
(``lc``, ``tline``) report frequencies in the same unit. Command-line flags
override the config; every scenario parameter has a kebab-case flag.

Exit codes: 0 success, 2 configuration or parameter error, 3 solver error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import __version__
from . import circuits as cq
from . import jcm, lambda3, twolevel
from .dynamics import evolve, steady_state
from .errors import ConfigError, CqedError, DomainError, PreconditionError, RegimeError
from .opalg import eig_hermitian, projector

TOOL = "cqed-lab"
EXIT_OK, EXIT_CONFIG, EXIT_SOLVER = 0, 2, 3
_TOP_KEYS = ("scenario", "frequency_unit", "parameters", "grid", "output")


@dataclass
class Table:
    columns: list
    rows: list = field(default_factory=list)


@dataclass
class Scenario:
    name: str
    defaults: dict
    grid: dict                      # axis -> (start, stop, count); empty if none
    run: Callable                   # (params, axes, ctx) -> Table
    help: str = ""
    cross_check: bool = False


@dataclass(frozen=True)
class RunContext:
    unit: float = 1.0
    jobs: int = 1
    cross_check: bool = False

    def map(self, fn, items):
        # results come back in input order whatever the completion order
        items = list(items)
        if self.jobs > 1 and len(items) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                return list(pool.map(fn, items))
        return [fn(x) for x in items]


# --------------------------------------------------------------------------
# scenarios


def _run_lc(p, axes, ctx):
    osc = cq.lc_quantize(p["L"], p["C"])
    t = Table(["n", "energy", "omega", "Z", "z"])
    for n in range(int(p["n_levels"])):
        t.rows.append([n, (n + 0.5) * osc.omega / ctx.unit, osc.omega / ctx.unit, osc.Z, osc.z])
    return t


def _run_tline(p, axes, ctx):
    spec = cq.TransmissionLineSpec(p["ell"], p["cap"], p["length"], int(p["n_max"]))
    t = Table(["n", "k", "omega"])
    for m in cq.tline_modes(spec):
        t.rows.append([m.n, m.k, m.omega / ctx.unit])
    return t


def _run_cpb(p, axes, ctx):
    ng = axes["ng"]
    n_levels = int(p["n_levels"])

    def one(ratio):
        bp = cq.CpbParams(EC=p["EC"], EJ=ratio * p["EC"], Nmax=int(p["Nmax"]))
        return ratio, cq.cpb_bands(bp, ng, n_levels)

    t = Table(["ratio", "ng", "band", "energy"])
    for ratio, bands in ctx.map(one, [float(r) for r in p["ratios"]]):
        for i, g in enumerate(ng):
            for b in range(n_levels):
                t.rows.append([ratio, float(g), b, float(bands.energies[i, b])])
    return t


def _run_transmon(p, axes, ctx):
    n = int(p["n_levels"])
    derived, h = cq.transmon_effective(p["EC"], p["EJ"], n, hbar=1.0)
    duff = eig_hermitian(h).values
    exact = eig_hermitian(cq.cpb_hamiltonian(cq.CpbParams(p["EC"], p["EJ"], p["Ng"], int(p["Nmax"])))).values
    exact = exact[:n] - exact[0]
    t = Table(["level", "duffing", "charge_basis", "residual"])
    for k in range(n):
        t.rows.append([k, float(duff[k]), float(exact[k]), float(duff[k] - exact[k])])
    return t


def _run_flux(p, axes, ctx):
    fp = cq.FluxQubitParams(alpha=p["alpha"], k=p["k"], EJ=p["EJ"])
    pm = axes["phi_minus"]
    u = cq.flux_potential(fp, p["phi_plus"], pm)
    return Table(["phi_minus", "U_over_EJ"], [[float(a), float(b)] for a, b in zip(pm, u)])


def _run_phase(p, axes, ctx):
    pp = cq.PhaseQubitParams(beta_L=p["beta_L"], flux_bias=p["flux_bias"])
    phi = axes["phi"]
    u = cq.phase_potential(pp, phi)
    minima = {round(x, 12) for x, _, _ in cq.phase_well_minima(pp, phi)}
    t = Table(["phi", "U_over_EJ", "curvature", "near_minimum"])
    dphi = abs(phi[1] - phi[0])
    for x, y in zip(phi, u):
        near = int(any(abs(x - m) <= dphi / 2 for m in minima))
        t.rows.append([float(x), float(y), float(np.cos(x) + 1 / pp.beta_L), near])
    return t


def _run_rabi(p, axes, ctx):
    tp = twolevel.TlsDriveParams(gamma=p["gamma"], delta=p["delta"], rabi_g=p["rabi_g"])
    times = axes["t"]
    cols = ["t", "rho_gg"]
    if ctx.cross_check:
        cols += ["rho_gg_numeric", "residual"]
    t = Table(cols)
    analytic = twolevel.rabi_population_gg(tp, times)
    numeric = None
    if ctx.cross_check:
        tr = evolve(twolevel.tls_lindblad_model(tp), projector(2, 0), times)
        numeric = tr.population(0)
    for i, x in enumerate(times):
        row = [float(x), float(analytic[i])]
        if numeric is not None:
            row += [float(numeric[i]), float(numeric[i] - analytic[i])]
        t.rows.append(row)
    return t


def _run_susceptibility(p, axes, ctx):
    u = ctx.unit
    dipole = p["dipole"] or twolevel.dipole_from_decay(p["gamma"] * u, p["wavelength"])
    tp = twolevel.TlsDriveParams(gamma=p["gamma"] * u, delta=0.0, rabi_g=p["rabi_g"] * u,
                                 density=p["density"], dipole=dipole)
    delta = axes["delta"]
    chi = twolevel.tls_susceptibility(tp, delta * u)
    cols = ["delta", "chi"]
    if ctx.cross_check:
        cols += ["chi_numeric", "residual"]
    t = Table(cols)
    numeric = None
    if ctx.cross_check:
        if p["rabi_g"] == 0:
            raise PreconditionError("--cross-check maps rho_eg to chi and needs rabi_g > 0")
        pref = tp.density * tp.dipole ** 2 / (cq.CONSTANTS.hbar * cq.CONSTANTS.eps0)

        def one(d):
            # solved in config units; chi carries one inverse rate, hence 1/u
            m = twolevel.tls_lindblad_model(twolevel.TlsDriveParams(p["gamma"], float(d), p["rabi_g"]))
            return pref * steady_state(m).data[1, 0] / (p["rabi_g"] * u)

        numeric = np.array(ctx.map(one, delta))
    for i, x in enumerate(delta):
        row = [float(x), complex(chi[i])]
        if numeric is not None:
            row += [complex(numeric[i]), complex(numeric[i] - chi[i])]
        t.rows.append(row)
    return t


def _jc_params(p, omega_q=None):
    return jcm.JcmParams(p["omega_r"], p["omega_q"] if omega_q is None else omega_q, p["g"], int(p["n_cav"]))


def _numeric_doublets(jp, n_max):
    es = eig_hermitian(jcm.jc_hamiltonian(jp))
    exc = jcm.excitation_number(jp.n_cav).data
    labels = np.rint(np.einsum("ij,ik,kj->j", es.vectors.conj(), exc, es.vectors).real).astype(int)
    out = {}
    for n in range(n_max + 1):
        vals = np.sort(es.values[labels == n + 1])
        if vals.size != 2:
            raise RegimeError(f"manifold {n} not resolved; increase n_cav")
        out[n] = (float(vals[1]), float(vals[0]))
    return out


def _run_jc(p, axes, ctx):
    n_max = int(p["n_max"])
    if n_max + 2 >= int(p["n_cav"]):
        raise ConfigError(f"n_max={n_max} needs n_cav >= {n_max + 3}")
    cols = ["delta", "n", "E_plus", "E_minus", "theta"]
    if ctx.cross_check:
        cols += ["E_plus_numeric", "E_minus_numeric", "residual_plus", "residual_minus"]

    def one(dl):
        jp = jcm.JcmParams(p["omega_r"], p["omega_r"] + float(dl), p["g"], int(p["n_cav"]))
        num = _numeric_doublets(jp, n_max) if ctx.cross_check else None
        rows = []
        for n in range(n_max + 1):
            ep, em, th = jcm.jc_doublet(n, jp.delta, jp.g, jp.omega_r)
            row = [float(dl), n, ep, em, th]
            if num is not None:
                row += [num[n][0], num[n][1], num[n][0] - ep, num[n][1] - em]
            rows.append(row)
        return rows

    t = Table(cols)
    for rows in ctx.map(one, axes["delta"]):
        t.rows.extend(rows)
    return t


def _run_polariton(p, axes, ctx):
    jp = _jc_params(p)
    chi = jcm.dispersive_shift(jp)
    drive = p["Omega_d"] if p["Omega_d"] is not None else chi / 2
    cols = ["x", "omega_d", "omega_21", "omega_43", "nested"]
    if ctx.cross_check:
        cols += ["omega_21_numeric", "omega_43_numeric", "residual_21", "residual_43"]

    def one(x):
        ds = jcm.DriveSpec(jp.omega_q - float(x) * chi, drive)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", jcm.RegimeWarning)
            b = jcm.polariton_basis(jp, ds)
        row = [float(x), ds.omega_d, b.omega_21, b.omega_43, int(b.nested)]
        if ctx.cross_check:
            w21, w43, _ = jcm.polariton_numeric(jp, ds)
            row += [float(w21), float(w43), float(w21 - b.omega_21), float(w43 - b.omega_43)]
        return row

    return Table(cols, ctx.map(one, axes["x"]))


def _lambda_inputs(p):
    d = lambda3.LambdaDecays(p["gamma31"], p["gamma32"], p["gamma21"])
    s = lambda3.ProbeControlSpec(p["omega_p"], p["omega_c"], 0.0, p["delta2"])
    return s, d


def _run_eit(p, axes, ctx):
    s, d = _lambda_inputs(p)
    delta = axes["delta"]
    chi = lambda3.eit_chi1(s, d, delta)
    cols = ["delta", "chi"]
    numeric = None
    if ctx.cross_check:
        cols += ["chi_numeric", "residual"]
        numeric = lambda3.eit_numeric_chi(s, d, delta, jobs=ctx.jobs)
    t = Table(cols)
    for i, x in enumerate(delta):
        row = [float(x), complex(chi[i])]
        if numeric is not None:
            row += [complex(numeric[i]), complex(numeric[i] - chi[i])]
        t.rows.append(row)
    return t


def _run_stirap(p, axes, ctx):
    decays = None
    if p["gamma31"] or p["gamma32"] or p["gamma21"]:
        decays = lambda3.LambdaDecays(p["gamma31"], p["gamma32"], p["gamma21"])
    cfg = lambda3.StirapConfig(p["omega_p_peak"], p["omega_s_peak"], p["sigma"], p["t_s"],
                               cd_enabled=bool(p["cd"]))
    res = lambda3.run_protocol(cfg, decays, n_times=int(p["n_times"]))
    tr = res.trajectory
    pumps, stokes = cfg.pump()(tr.times), cfg.stokes()(tr.times)
    cd = lambda3._cd_value(tr.times, cfg) if cfg.cd_enabled else np.zeros_like(tr.times)
    t = Table(["t", "P1", "P2", "P3", "omega_p", "omega_s", "omega_a"])
    P1, P2, P3 = tr.population(0), tr.population(2), tr.population(1)
    for i, x in enumerate(tr.times):
        t.rows.append([float(x), float(P1[i]), float(P2[i]), float(P3[i]),
                       float(pumps[i].real), float(stokes[i].real), float(cd[i])])
    return t


SCENARIOS = {s.name: s for s in [
    Scenario("lc", {"L": 1e-9, "C": 1e-12, "n_levels": 5}, {}, _run_lc,
             "quantized LC resonator levels"),
    Scenario("tline", {"ell": 4.2e-7, "cap": 1.6e-10, "length": 0.01, "n_max": 5}, {}, _run_tline,
             "open transmission-line modes"),
    Scenario("cpb-bands", {"EC": 1.0, "ratios": [1.0, 10.0, 50.0], "Nmax": 10, "n_levels": 3},
             {"ng": (0.0, 1.0, 201)}, _run_cpb, "Cooper-pair-box bands versus gate charge"),
    Scenario("transmon", {"EC": 1.0, "EJ": 50.0, "Ng": 0.0, "Nmax": 20, "n_levels": 4}, {},
             _run_transmon, "Duffing transmon levels against the charge-basis spectrum"),
    Scenario("flux", {"alpha": 0.8, "k": 0.5, "EJ": 1.0, "phi_plus": 0.0},
             {"phi_minus": (-math.pi, math.pi, 201)}, _run_flux, "flux-qubit double well"),
    Scenario("phase", {"beta_L": 4.0, "flux_bias": 0.5},
             {"phi": (-2 * math.pi, 4 * math.pi, 601)}, _run_phase, "RF-SQUID phase-qubit potential"),
    Scenario("rabi", {"gamma": 0.0, "delta": 0.0, "rabi_g": 0.5},
             {"t": (0.0, 20.0, 201)}, _run_rabi, "lossless Rabi oscillation", cross_check=True),
    Scenario("susceptibility", {"gamma": 1.0, "rabi_g": 0.5, "density": 1e18, "wavelength": 7.8e-7,
                                "dipole": 0.0},
             {"delta": (-10.0, 10.0, 401)}, _run_susceptibility, "two-level linear susceptibility",
             cross_check=True),
    Scenario("jc-dressed", {"omega_r": 1.0, "g": 0.02, "n_cav": 12, "n_max": 5},
             {"delta": (-0.1, 0.1, 101)}, _run_jc,
             "Jaynes-Cummings doublets versus qubit-cavity detuning", cross_check=True),
    Scenario("polariton", {"omega_r": 7.0, "omega_q": 6.0, "g": 0.05, "n_cav": 10, "Omega_d": None},
             {"x": (0.0, 4.0, 81)}, _run_polariton,
             "doubly-dressed splittings versus drive, omega_d = omega_q - x chi", cross_check=True),
    Scenario("eit", {"gamma31": 1.0, "gamma32": 0.0, "gamma21": 0.0, "omega_c": 0.2,
                     "omega_p": 0.001, "delta2": 0.0},
             {"delta": (-5.0, 5.0, 401)}, _run_eit, "Lambda-system probe susceptibility",
             cross_check=True),
    Scenario("stirap", {"omega_p_peak": 15.0, "omega_s_peak": 15.0, "sigma": 1.0, "t_s": -1.5,
                        "cd": False, "n_times": 401, "gamma31": 0.0, "gamma32": 0.0, "gamma21": 0.0},
             {}, _run_stirap, "STIRAP and counterdiabatic transfer"),
]}


# --------------------------------------------------------------------------
# config handling


def _kebab(key: str) -> str:
    return key.lower().replace("_", "-")


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return doc


def _coerce(key, value, default):
    if isinstance(default, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"parameter {key!r} must be true or false")
        return value
    if isinstance(default, list):
        if not isinstance(value, list) or not value:
            raise ConfigError(f"parameter {key!r} must be a non-empty list")
        return [_coerce(key, v, default[0]) for v in value]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        if value is None and default is None:
            return None
        raise ConfigError(f"parameter {key!r} must be a number")
    if isinstance(default, int) and default is not None and not isinstance(default, bool):
        if float(value) != int(value):
            raise ConfigError(f"parameter {key!r} must be an integer")
        return int(value)
    if not math.isfinite(value):
        raise ConfigError(f"parameter {key!r} must be finite")
    return float(value)


@dataclass
class Resolved:
    scenario: Scenario
    unit: float
    params: dict
    grid: dict
    out_path: str | None
    fmt: str


def resolve(doc: dict, overrides: dict | None = None, grid_overrides: dict | None = None) -> Resolved:
    """Merge a config document with flag overrides and validate its structure."""
    unknown = sorted(set(doc) - set(_TOP_KEYS))
    if unknown:
        raise ConfigError(f"unknown top-level keys {unknown}; accepted: {list(_TOP_KEYS)}")
    name = doc.get("scenario")
    if name not in SCENARIOS:
        raise ConfigError(f"unknown scenario {name!r}; accepted: {sorted(SCENARIOS)}")
    sc = SCENARIOS[name]
    unit = doc.get("frequency_unit", 1.0)
    if isinstance(unit, bool) or not isinstance(unit, (int, float)) or not unit > 0 or not math.isfinite(unit):
        raise ConfigError(f"frequency_unit must be a positive number, got {unit!r}")

    raw = doc.get("parameters", {}) or {}
    if not isinstance(raw, dict):
        raise ConfigError("parameters must be an object")
    bad = sorted(set(raw) - set(sc.defaults))
    if bad:
        raise ConfigError(f"unknown parameters {bad} for scenario {name!r}; accepted: {sorted(sc.defaults)}")
    params = dict(sc.defaults)
    for k, v in {**raw, **(overrides or {})}.items():
        params[k] = _coerce(k, v, sc.defaults[k])

    grid_doc = doc.get("grid", {}) or {}
    if not isinstance(grid_doc, dict):
        raise ConfigError("grid must be an object")
    bad = sorted(set(grid_doc) - set(sc.grid))
    if bad:
        raise ConfigError(f"unknown grid axes {bad} for scenario {name!r}; accepted: {sorted(sc.grid)}")
    grid = {}
    for axis, (start, stop, count) in sc.grid.items():
        spec = {"start": start, "stop": stop, "count": count}
        given = grid_doc.get(axis, {})
        if not isinstance(given, dict):
            raise ConfigError(f"grid axis {axis!r} must be an object with start, stop, count")
        extra = sorted(set(given) - set(spec))
        if extra:
            raise ConfigError(f"unknown keys {extra} in grid axis {axis!r}; accepted: ['count', 'start', 'stop']")
        spec.update(given)
        spec.update((grid_overrides or {}).get(axis, {}))
        try:
            s0, s1, cnt = float(spec["start"]), float(spec["stop"]), spec["count"]
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"grid axis {axis!r}: start and stop must be numbers") from exc
        if isinstance(cnt, bool) or not isinstance(cnt, int) or cnt < 2:
            raise ConfigError(f"grid axis {axis!r}: count must be an integer >= 2, got {cnt!r}")
        grid[axis] = (s0, s1, cnt)

    out = doc.get("output", {}) or {}
    if not isinstance(out, dict):
        raise ConfigError("output must be an object")
    extra = sorted(set(out) - {"path", "format"})
    if extra:
        raise ConfigError(f"unknown output keys {extra}; accepted: ['format', 'path']")
    fmt = out.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"output format must be 'csv' or 'json', got {fmt!r}")
    return Resolved(sc, float(unit), params, grid, out.get("path"), fmt)


# --------------------------------------------------------------------------
# output


def _fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)) or v is None:
        return json.dumps(v, sort_keys=True)
    return repr(v)


def _flatten(table: Table):
    """Split complex columns into ``_re`` / ``_im`` pairs."""
    complex_cols = {j for j, _ in enumerate(table.columns)
                    if any(isinstance(r[j], complex) for r in table.rows)}
    header = []
    for j, c in enumerate(table.columns):
        header += [c + "_re", c + "_im"] if j in complex_cols else [c]
    rows = []
    for r in table.rows:
        out = []
        for j, v in enumerate(r):
            if j in complex_cols:
                z = complex(v)
                out += [z.real, z.imag]
            else:
                out.append(v)
        rows.append(out)
    return header, rows


def _cell(v) -> str:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return repr(float(v))


def render_csv(res: Resolved, table: Table) -> str:
    lines = [f"# {TOOL} {__version__}", f"# scenario: {res.scenario.name}",
             f"# frequency_unit: {res.unit!r}"]
    lines += [f"# param: {k}={_fmt_value(res.params[k])}" for k in sorted(res.params)]
    lines += [f"# grid: {a}={s!r}:{e!r}:{n}" for a, (s, e, n) in sorted(res.grid.items())]
    header, rows = _flatten(table)
    lines.append(",".join(header))
    lines += [",".join(_cell(v) for v in r) for r in rows]
    return "\n".join(lines) + "\n"


def render_json(res: Resolved, table: Table) -> str:
    header, rows = _flatten(table)
    doc = {
        "tool": TOOL, "version": __version__, "scenario": res.scenario.name,
        "frequency_unit": res.unit, "parameters": res.params,
        "grid": {a: {"start": s, "stop": e, "count": n} for a, (s, e, n) in res.grid.items()},
        "columns": header,
        "rows": [[int(v) if isinstance(v, (int, np.integer)) else float(v) for v in r] for r in rows],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def read_csv(text: str):
    """Parse an emitted CSV back into ``(header_lines, columns, float array)``."""
    lines = text.splitlines()
    meta = [ln for ln in lines if ln.startswith("#")]
    body = [ln for ln in lines if not ln.startswith("#")]
    cols = body[0].split(",")
    data = np.array([[float(x) for x in ln.split(",")] for ln in body[1:]])
    return meta, cols, data


def execute(res: Resolved, jobs: int = 1, cross_check: bool = False) -> Table:
    if cross_check and not res.scenario.cross_check:
        raise ConfigError(f"scenario {res.scenario.name!r} has no analytic/numeric pair for --cross-check")
    axes = {a: np.linspace(s, e, n) for a, (s, e, n) in res.grid.items()}
    return res.scenario.run(res.params, axes, RunContext(res.unit, jobs, cross_check))


# --------------------------------------------------------------------------
# validation


def validate_document(doc: dict):
    """Structural and physical checks without running a solver.

    Returns ``(errors, warnings)`` as lists of strings.
    """
    errors, warns = [], []
    try:
        res = resolve(doc)
    except ConfigError as exc:
        return [str(exc)], warns
    p, name = res.params, res.scenario.name

    for k, v in p.items():
        if k.startswith("gamma") and isinstance(v, float) and v < 0:
            errors.append(f"decay rate {k} = {v!r} is negative")
    if name == "polariton":
        det = p["omega_q"] - p["omega_r"]
        ratio = math.inf if det == 0 else abs(p["g"] / det)
        if ratio > 0.1:
            warns.append(f"g/Delta = {ratio:.3g} > 0.1: dispersive approximation unreliable")
    if name == "polariton" and not errors:
        det = p["omega_r"] - p["omega_q"]
        if det != 0 and abs(p["g"] / det) <= 0.1:
            chi = p["g"] ** 2 / det
            lo, hi = p["omega_q"] - 3 * chi, p["omega_q"] - chi
            s, e, _ = res.grid["x"]
            wds = [p["omega_q"] - s * chi, p["omega_q"] - e * chi]
            if chi <= 0:
                warns.append(f"chi = {chi!r} <= 0: nesting window ({lo!r}, {hi!r}) is empty")
            elif any(not lo < w < hi for w in wds):
                warns.append(f"drive frequency range [{min(wds)!r}, {max(wds)!r}] leaves the nesting "
                             f"window omega_q - 3 chi < omega_d < omega_q - chi = ({lo!r}, {hi!r})")
    if name == "eit" and not errors:
        Gamma = p["gamma31"] + p["gamma32"]
        if p["omega_p"] > Gamma / 50:
            warns.append(f"omega_p = {p['omega_p']!r} exceeds the weak-probe bound Gamma31/50 = {Gamma / 50!r}")
    if name == "stirap" and p["cd"] and p["omega_p_peak"] != p["omega_s_peak"]:
        warns.append("unequal peaks: the closed-form CD pulse is replaced by the exact 2 dtheta/dt")
    if name == "cpb-bands" and any(r <= 0 for r in p["ratios"]):
        errors.append("EJ/EC ratios must be positive")
    return errors, warns


# --------------------------------------------------------------------------
# argument parsing


def _add_common(sp):
    sp.add_argument("--config", help="JSON scenario config")
    sp.add_argument("--output", help="output path (default: stdout)")
    sp.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--jobs", type=int, default=1, help="worker threads for grid points")
    sp.add_argument("--cross-check", action="store_true",
                    help="emit analytic and numeric columns with their residual")
    sp.add_argument("--frequency-unit", type=float, help="rad/s per config frequency unit")


def _add_params(sp, sc: Scenario):
    g = sp.add_argument_group("scenario parameters")
    for key, default in sc.defaults.items():
        flag = "--" + _kebab(key)
        dest = "p__" + key
        if isinstance(default, bool):
            g.add_argument(flag, dest=dest, action="store_const", const=True, default=None)
        elif isinstance(default, list):
            g.add_argument(flag, dest=dest, type=float, nargs="+", default=None,
                           metavar="X", help=f"default {default}")
        elif isinstance(default, int):
            g.add_argument(flag, dest=dest, type=int, default=None, help=f"default {default}")
        else:
            g.add_argument(flag, dest=dest, type=float, default=None, help=f"default {default}")
    for axis, (s, e, n) in sc.grid.items():
        g.add_argument(f"--{_kebab(axis)}-grid", dest="g__" + axis, nargs=3, default=None,
                       metavar=("START", "STOP", "COUNT"), help=f"default {s!r} {e!r} {n}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog=TOOL, description="circuit QED scenarios to CSV/JSON tables")
    ap.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for sc in SCENARIOS.values():
        sp = sub.add_parser(sc.name, help=sc.help)
        _add_common(sp)
        _add_params(sp, sc)
    vp = sub.add_parser("validate", help="check a config without running it")
    vp.add_argument("config")
    return ap


def _grid_override(values):
    try:
        return {"start": float(values[0]), "stop": float(values[1]), "count": int(values[2])}
    except ValueError as exc:
        raise ConfigError(f"bad grid specification {values}: {exc}") from exc


def _run_command(args) -> int:
    sc = SCENARIOS[args.command]
    doc = _load_json(args.config) if args.config else {}
    if doc.get("scenario", sc.name) != sc.name:
        raise ConfigError(f"config scenario {doc['scenario']!r} does not match subcommand {sc.name!r}")
    doc = {**doc, "scenario": sc.name}
    if args.frequency_unit is not None:
        doc["frequency_unit"] = args.frequency_unit
    overrides = {k[3:]: v for k, v in vars(args).items() if k.startswith("p__") and v is not None}
    grids = {k[3:]: _grid_override(v) for k, v in vars(args).items() if k.startswith("g__") and v is not None}
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    res = resolve(doc, overrides, grids)
    if args.output:
        res.out_path = args.output
    if args.format:
        res.fmt = args.format
    table = execute(res, jobs=args.jobs, cross_check=args.cross_check)
    text = render_csv(res, table) if res.fmt == "csv" else render_json(res, table)
    if res.out_path:
        with open(res.out_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _validate_command(args) -> int:
    errors, warns = validate_document(_load_json(args.config))
    for w in warns:
        print(f"warning: {w}")
    for e in errors:
        print(f"error: {e}")
    if not errors:
        print("ok")
    return EXIT_CONFIG if errors else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _validate_command(args)
        return _run_command(args)
    except (ConfigError, DomainError, PreconditionError, RegimeError) as exc:
        print(f"{TOOL}: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CqedError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"{TOOL}: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


run = main
