"""Configuration-driven experiment runs with CSV/SVG artifacts.

A config file is line-oriented UTF-8 text: ``key = value`` pairs grouped
under ``[section]`` headers.  Lists are comma-separated; complex numbers
are written ``a+bi`` (or ``inf``); vectors (hyperplane normals, plane
rows) are space-separated components inside a comma-separated list.

Sections and keys::

    [experiment]
    kind        = fmt | smt-riemann | cartan | nochka | ahlfors | plucker
                  | ldl | growth-index | calculus-lemma
    map         = gallery map name        (map experiments)
    curve       = curve gallery name      (curve experiments)
    targets     = 0, 1+0i, inf            (fmt, smt-riemann; optional)
    hyperplanes = 1 0 0, 0 1 0, 0 0 1     (cartan, nochka; optional)
    hyperplane  = 1 -1                    (ahlfors)
    k           = 1                       (plucker/ahlfors order,
                                           ldl derivative order, nochka
                                           subgeneral position)
    lam         = 0.5                     (ahlfors)
    plane       = 1 0 0, 0 1 0            (nochka; optional row list)
    h           = r | log-gap | map:NAME  (calculus-lemma)
    gamma       = one | gap | growth      (calculus-lemma)
    order       = 1 | 2                   (calculus-lemma form)

    [grid]
    r_min = 0.5      r_max = 30      points = 48
    spacing = log | linear | gap     (gap: geometric in 1 - r/R)

    [params]
    eps = 0.1        delta = 0.1     clog = 2.0
    fit_fraction = 0.3333333333333333
    cap = 10.0       seed = 0        cross_check = false
    c_min / c_max    (optional growth-index assertion bounds)
    residual_cap     (fmt/plucker assertion bound on the residual range)

Every experiment writes ``table.csv`` with the fixed header

    r,T,T_area,m_total,N_total,N_ram,S_k,slack,exceptional

(nan fills columns that do not apply), a ``summary.txt`` with fitted
constants, the growth-index estimate, defect surrogates and the
exceptional-set summary, and optionally ``plot.svg``.  Output is
deterministic: re-running a config reproduces table.csv byte for byte,
and results do not depend on the worker count.

Column use by experiment kind: fmt fills T, T_area (when cross-checked),
m_total, N_total; smt-riemann fills T, m_total, N_ram, slack,
exceptional; cartan fills those plus the max-independent-subset average
in S_k; nochka fills T, m_total, N_ram, slack, exceptional; ahlfors puts
the contact-localized area integral in S_k and rhs - lhs in slack;
plucker fills T (= T_{F_k}), S_k and the stationary count in N_ram; ldl
puts the derivative proximity in m_total; growth-index fills T (and
T_area when cross-checked); calculus-lemma puts h in T and
bound - derivative in slack.
"""

from __future__ import annotations

import configparser
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ComputationError, ConfigError
from .funcrep import format_complex, gallery_names, get_map, parse_complex
from .ldl import ldl_residual
from .nevan import characteristic, defect_estimate, fmt_residual, \
    growth_index_from_values, smt_riemann_report
from .nochka import nochka_smt_report
from .precision import MODE as PRECISION_MODE
from .projcurve import ahlfors_estimate_check, cartan_smt_report, \
    coordinate_hyperplanes, curve_gallery, get_curve, plucker_residual
from .quad import RadialGrid, calculus_lemma_check, circle_average
from .rationals import QC

CSV_HEADER = "r,T,T_area,m_total,N_total,N_ram,S_k,slack,exceptional"
KINDS = ("fmt", "smt-riemann", "cartan", "nochka", "ahlfors", "plucker",
         "ldl", "growth-index", "calculus-lemma")

_MAP_KINDS = ("fmt", "smt-riemann", "ldl", "growth-index")
_CURVE_KINDS = ("cartan", "nochka", "ahlfors", "plucker")


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass
class ExperimentConfig:
    """Parsed and validated experiment description."""

    kind: str
    map_name: str = ""
    curve_name: str = ""
    targets: tuple = ()
    hyperplanes: tuple = ()
    hyperplane: tuple = ()
    plane: tuple = ()
    k: int = 1
    lam: float = 0.5
    h_spec: str = "r"
    gamma_spec: str = "one"
    order: int = 1
    grid: RadialGrid = None
    eps: float = 0.1
    delta: float = 0.1
    clog: float = 2.0
    fit_fraction: float = 1.0 / 3.0
    cap: float = 10.0
    seed: int = 0
    cross_check: bool = False
    residual_cap: float = 1.0
    c_min: float = None
    c_max: float = None
    raw: dict = field(default_factory=dict)


def _parse_vector(text):
    parts = str(text).split()
    if not parts:
        raise ConfigError("empty vector in config")
    return tuple(parse_complex(p) for p in parts)


def _parse_list(text):
    items = [s.strip() for s in str(text).split(",")]
    return [s for s in items if s]


def _get_float(sec, key, default):
    if key not in sec:
        return default
    try:
        return float(sec[key])
    except ValueError:
        raise ConfigError("key %r is not a number: %r" % (key, sec[key]))


def _get_int(sec, key, default):
    if key not in sec:
        return default
    try:
        return int(sec[key])
    except ValueError:
        raise ConfigError("key %r is not an integer: %r" % (key, sec[key]))


def _get_bool(sec, key, default):
    if key not in sec:
        return default
    val = sec[key].strip().lower()
    if val in ("true", "yes", "1", "on"):
        return True
    if val in ("false", "no", "0", "off"):
        return False
    raise ConfigError("key %r is not a boolean: %r" % (key, sec[key]))


def _disc_radius_of(cfg):
    if cfg.map_name:
        return get_map(cfg.map_name).disc.radius
    if cfg.curve_name:
        return get_curve(cfg.curve_name).disc.radius
    if cfg.h_spec.startswith("map:"):
        return get_map(cfg.h_spec[4:].strip()).disc.radius
    return math.inf


def _build_grid(sec, disc_radius):
    disc_radius = _get_float(sec, "disc_radius", disc_radius)
    points = _get_int(sec, "points", 48)
    if points < 2:
        raise ConfigError("grid needs at least 2 points")
    spacing = sec.get("spacing", "log").strip().lower()
    bounded = not math.isinf(disc_radius)
    r_min = _get_float(sec, "r_min", 0.05 * disc_radius if bounded else 1.0)
    default_max = 0.999 * disc_radius if bounded else 50.0
    r_max = _get_float(sec, "r_max", default_max)
    if not 0.0 < r_min < r_max:
        raise ConfigError("grid needs 0 < r_min < r_max")
    if r_max >= disc_radius:
        raise ConfigError("grid leaves the disc of definition (R = %g)"
                          % disc_radius)
    if spacing == "log":
        radii = np.geomspace(r_min, r_max, points)
    elif spacing == "linear":
        radii = np.linspace(r_min, r_max, points)
    elif spacing == "gap":
        if not bounded:
            raise ConfigError("gap spacing needs a bounded disc")
        gaps = np.geomspace(1.0 - r_min / disc_radius,
                            1.0 - r_max / disc_radius, points)
        radii = disc_radius * (1.0 - gaps)
    else:
        raise ConfigError("unknown grid spacing %r" % spacing)
    return RadialGrid(tuple(float(r) for r in radii), disc_radius)


def parse_config(path):
    """Read and validate an experiment config file."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        read = parser.read(path, encoding="utf-8")
    except configparser.Error as err:
        raise ConfigError("cannot parse config %s: %s" % (path, err))
    if not read:
        raise ConfigError("config file %s not found" % path)
    if "experiment" not in parser:
        raise ConfigError("config needs an [experiment] section")
    exp = parser["experiment"]
    kind = exp.get("kind", "").strip().lower()
    if kind not in KINDS:
        raise ConfigError("unknown experiment kind %r; known: %s"
                          % (kind, ", ".join(KINDS)))
    cfg = ExperimentConfig(kind=kind)
    cfg.map_name = exp.get("map", "").strip()
    cfg.curve_name = exp.get("curve", "").strip()

    if kind in _MAP_KINDS:
        if not cfg.map_name:
            raise ConfigError("experiment kind %r needs a map" % kind)
    if kind in _CURVE_KINDS:
        if not cfg.curve_name:
            raise ConfigError("experiment kind %r needs a curve" % kind)
    if cfg.map_name and cfg.map_name not in gallery_names():
        raise ConfigError("unknown gallery map %r; known: %s"
                          % (cfg.map_name, ", ".join(gallery_names())))
    if cfg.curve_name and cfg.curve_name not in curve_gallery():
        raise ConfigError("unknown gallery curve %r; known: %s"
                          % (cfg.curve_name,
                             ", ".join(sorted(curve_gallery()))))

    if "targets" in exp:
        cfg.targets = tuple(parse_complex(s)
                            for s in _parse_list(exp["targets"]))
    if "hyperplanes" in exp:
        cfg.hyperplanes = tuple(_parse_vector(s)
                                for s in _parse_list(exp["hyperplanes"]))
    if "hyperplane" in exp:
        cfg.hyperplane = _parse_vector(exp["hyperplane"])
    if "plane" in exp:
        cfg.plane = tuple(_parse_vector(s)
                          for s in _parse_list(exp["plane"]))
    cfg.k = _get_int(exp, "k", 1)
    cfg.lam = _get_float(exp, "lam", 0.5)
    cfg.h_spec = exp.get("h", "r").strip()
    cfg.gamma_spec = exp.get("gamma", "one").strip().lower()
    cfg.order = _get_int(exp, "order", 1)
    if cfg.h_spec.startswith("map:"):
        name = cfg.h_spec[4:].strip()
        if name not in gallery_names():
            raise ConfigError("unknown gallery map %r in h spec" % name)

    params = parser["params"] if "params" in parser else {}
    cfg.eps = _get_float(params, "eps", 0.1)
    cfg.delta = _get_float(params, "delta", 0.1)
    cfg.clog = _get_float(params, "clog", 2.0)
    cfg.fit_fraction = _get_float(params, "fit_fraction", 1.0 / 3.0)
    cfg.cap = _get_float(params, "cap", 10.0)
    cfg.seed = _get_int(params, "seed", 0)
    cfg.cross_check = _get_bool(params, "cross_check", False)
    cfg.residual_cap = _get_float(params, "residual_cap", 1.0)
    cfg.c_min = _get_float(params, "c_min", None)
    cfg.c_max = _get_float(params, "c_max", None)
    for key in ("eps", "delta", "clog", "cap", "residual_cap"):
        if getattr(cfg, key) < 0:
            raise ConfigError("parameter %r must be nonnegative" % key)
    if not 0.0 < cfg.fit_fraction <= 1.0:
        raise ConfigError("fit_fraction must lie in (0, 1]")

    grid_sec = parser["grid"] if "grid" in parser else {}
    cfg.grid = _build_grid(grid_sec, _disc_radius_of(cfg))
    cfg.raw = {s: dict(parser[s]) for s in parser.sections()}
    return cfg


# ---------------------------------------------------------------------------
# exceptional-set accounting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExceptionalSummary:
    """Flagged radii with their growth-weighted measure and a verdict."""

    flagged_radii: tuple
    measure: float
    cap: float
    finite: bool


def exceptional_set_measure(table, c, eps, cap=10.0):
    """Exceptional-set summary from a results table.

    Flags the radii with slack < 0 and weights each by
    exp((c + eps) T(r_i)) * dr_i; the verdict is finite when the weighted
    measure stays below the cap.
    """
    r = np.asarray(table["r"], dtype=float)
    T = np.asarray(table["T"], dtype=float)
    slack = np.asarray(table["slack"], dtype=float)
    with np.errstate(invalid="ignore"):
        flags = slack < 0.0
    widths = np.empty_like(r)
    if len(r) > 1:
        widths[1:-1] = 0.5 * (r[2:] - r[:-2])
        widths[0] = 0.5 * (r[1] - r[0])
        widths[-1] = 0.5 * (r[-1] - r[-2])
    else:
        widths[:] = 1.0
    cc = 0.0 if math.isinf(c) else c
    with np.errstate(over="ignore", invalid="ignore"):
        density = np.exp(np.minimum((cc + eps) * np.where(
            np.isfinite(T), T, 0.0), 700.0))
    measure = float(np.sum(np.where(flags, density * widths, 0.0)))
    return ExceptionalSummary(
        flagged_radii=tuple(float(x) for x in r[flags]),
        measure=measure,
        cap=cap,
        finite=measure <= cap,
    )


# ---------------------------------------------------------------------------
# per-radius parallelism
# ---------------------------------------------------------------------------

def _chunked(fn, radii, threads):
    """Apply an array function over contiguous grid chunks in parallel.

    fn must be a pure per-radius map (each output element depends only on
    its own radius), so the assembled result is identical for any worker
    count or chunking.
    """
    radii = np.asarray(radii, dtype=float)
    if threads <= 1 or len(radii) < 4:
        return np.asarray(fn(radii), dtype=float)
    chunks = np.array_split(radii, min(threads * 2, len(radii)))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda ch: np.asarray(fn(ch), dtype=float),
                              chunks))
    return np.concatenate(parts)


def _characteristic_threaded(holo, radii, threads, cross_check=False):
    """Characteristic with the per-radius circle averages parallelized."""
    if holo.geometry.kind != "p1-fs" or cross_check or threads <= 1:
        # the area integral is cumulative in r; keep it sequential
        return characteristic(holo, radii, cross_check=cross_check)
    T = _chunked(lambda ch: _char_values(holo, ch), radii, threads)
    return {"radii": np.asarray(radii, dtype=float), "method": "cartan",
            "T": T, "T_area": None, "gap": None, "gap_ok": None,
            "evals": 0}


def _char_values(holo, radii):
    """Cartan characteristic values, one independent circle average each."""
    base = float(holo.rep_norm_log_many(np.array([0j]))[0])
    vals = np.empty(len(radii))
    for i, r in enumerate(radii):
        vals[i], _ = circle_average(holo.rep_norm_log_many, float(r))
    return vals - base


# ---------------------------------------------------------------------------
# table assembly
# ---------------------------------------------------------------------------

def _new_table(radii):
    n = len(radii)
    nans = np.full(n, math.nan)
    return {
        "r": np.asarray(radii, dtype=float),
        "T": nans.copy(),
        "T_area": nans.copy(),
        "m_total": nans.copy(),
        "N_total": nans.copy(),
        "N_ram": nans.copy(),
        "S_k": nans.copy(),
        "slack": nans.copy(),
        "exceptional": np.zeros(n, dtype=int),
    }


def _run_fmt(cfg, threads):
    holo = get_map(cfg.map_name)
    radii = cfg.grid.arrays()
    targets = cfg.targets or holo.default_targets
    if not targets:
        raise ConfigError("fmt needs targets (none given, none declared)")
    char = _characteristic_threaded(holo, radii, threads,
                                    cross_check=cfg.cross_check)
    table = _new_table(radii)
    table["T"] = char["T"]
    if char.get("T_area") is not None:
        table["T_area"] = char["T_area"]
    m_total = np.zeros_like(radii)
    N_total = np.zeros_like(radii)
    summary = {}
    residual_hi = -math.inf
    for a in targets:
        rep = fmt_residual(holo, a, radii, origin="log-correction",
                           char=char)
        key = format_complex(a)
        m_total = m_total + rep["m"]
        N_total = N_total + rep["N"]
        summary["fmt_constant[%s]" % key] = rep["constant"]
        summary["max_abs_residual[%s]" % key] = rep["max_abs_residual"]
        rng = float(rep["residual"].max() - rep["residual"].min())
        summary["residual_range[%s]" % key] = rng
        residual_hi = max(residual_hi, rng)
        defect = defect_estimate(rep["m"], char["T"]) \
            if np.all(char["T"][-8:] > 0) else None
        if defect is not None:
            summary["defect[%s]" % key] = defect["defect"]
    table["m_total"] = m_total
    table["N_total"] = N_total
    c = growth_index_from_values(char["T"], radii, holo.disc.radius)
    summary["c_est"] = c
    summary["residual_range_max"] = residual_hi
    ok = residual_hi <= cfg.residual_cap
    return table, summary, ok, c


def _run_smt_riemann(cfg, threads):
    holo = get_map(cfg.map_name)
    radii = cfg.grid.arrays()
    rep = smt_riemann_report(holo, targets=list(cfg.targets) or None,
                             grid=radii, eps=cfg.eps, clog=cfg.clog,
                             fit_fraction=cfg.fit_fraction)
    table = _new_table(radii)
    table["T"] = rep["T"]
    table["m_total"] = rep["m_total"]
    table["N_ram"] = rep["N_ram"]
    table["slack"] = rep["slack"]
    table["exceptional"] = rep["exceptional"].astype(int)
    summary = {"C0": rep["C0"], "c_est": rep["growth_index"],
               "exceptional_measure": rep["exceptional_measure"],
               "n_fit": rep["n_fit"], "ok": rep["ok"]}
    for key, m in rep["m_by_target"].items():
        try:
            defect = defect_estimate(m, rep["T"])
            summary["defect[%s]" % key] = defect["defect"]
        except ComputationError:
            pass
    return table, summary, bool(rep["ok"]), rep["growth_index"]


def _run_cartan(cfg, threads):
    curve = get_curve(cfg.curve_name)
    hyps = list(cfg.hyperplanes) or coordinate_hyperplanes(curve.n)
    radii = cfg.grid.arrays()
    rep = cartan_smt_report(curve, hyps, grid=radii, eps=cfg.eps,
                            clog=cfg.clog, fit_fraction=cfg.fit_fraction)
    table = _new_table(radii)
    table["T"] = rep["T"]
    table["m_total"] = rep["m_total"]
    table["N_ram"] = rep["N_W"]
    table["S_k"] = rep["max_subset_average"]
    table["slack"] = rep["slack"]
    table["exceptional"] = rep["exceptional"].astype(int)
    summary = {"C0": rep["C0"], "c_est": rep["growth_index"],
               "exceptional_measure": rep["exceptional_measure"],
               "n_fit": rep["n_fit"], "ok": rep["ok"],
               "weak_fmt_ok": rep["weak_fmt_ok"],
               "sum_over_T_last": float(rep["sum_over_T"][-1])}
    for name, m in rep["m_by_hyperplane"].items():
        defect = defect_estimate(m, rep["T"])
        summary["defect[%s]" % name] = defect["defect"]
    return table, summary, bool(rep["ok"]), rep["growth_index"]


def _run_nochka(cfg, threads):
    curve = get_curve(cfg.curve_name)
    if not cfg.hyperplanes:
        raise ConfigError("nochka needs explicit hyperplanes")
    radii = cfg.grid.arrays()
    plane = [tuple(QC(x) for x in row) for row in cfg.plane] \
        if cfg.plane else None
    rep = nochka_smt_report(curve, list(cfg.hyperplanes), grid=radii,
                            eps=cfg.eps, plane=plane, clog=cfg.clog,
                            fit_fraction=cfg.fit_fraction)
    table = _new_table(radii)
    table["T"] = rep["T"]
    table["m_total"] = rep["m_total"]
    table["N_ram"] = rep["N_ram"]
    table["slack"] = rep["slack"]
    table["exceptional"] = rep["exceptional"].astype(int)
    summary = {"C0": rep["C0"], "c_est": rep["growth_index"],
               "exceptional_measure": rep["exceptional_measure"],
               "n_fit": rep["n_fit"], "ok": rep["ok"],
               "theta": float(rep["theta"]),
               "omega": ", ".join("%.17g" % float(w)
                                  for w in rep["omega"]),
               "k": rep["k"]}
    return table, summary, bool(rep["ok"]), rep["growth_index"]


def _run_ahlfors(cfg, threads):
    curve = get_curve(cfg.curve_name)
    if not cfg.hyperplane:
        raise ConfigError("ahlfors needs a hyperplane")
    radii = cfg.grid.arrays()
    rep = ahlfors_estimate_check(curve, cfg.k, cfg.hyperplane, cfg.lam,
                                 radii, fit_fraction=cfg.fit_fraction)
    table = _new_table(radii)
    table["T"] = rep["T"]
    table["S_k"] = rep["lhs"]
    table["slack"] = rep["rhs"] - rep["lhs"]
    summary = {"C0": rep["C0"], "lam": rep["lam"], "k": cfg.k,
               "n_fit": rep["n_fit"], "ok": rep["ok"], "c_est": 0.0}
    return table, summary, bool(rep["ok"]), 0.0


def _run_plucker(cfg, threads):
    curve = get_curve(cfg.curve_name)
    radii = cfg.grid.arrays()
    rep = plucker_residual(curve, cfg.k, radii)
    table = _new_table(radii)
    table["T"] = rep["T_k"]
    table["S_k"] = rep["S_k"]
    table["N_ram"] = rep["N_d"]
    summary = {"residual_value": rep["value"],
               "residual_range": rep["range"], "k": cfg.k, "c_est": 0.0}
    ok = rep["range"] <= cfg.residual_cap
    summary["ok"] = ok
    return table, summary, ok, 0.0


def _run_ldl(cfg, threads):
    holo = get_map(cfg.map_name)
    radii = cfg.grid.arrays()
    rep = ldl_residual(holo, radii, k=cfg.k, delta=cfg.delta, eps=cfg.eps,
                       clog=cfg.clog, fit_fraction=cfg.fit_fraction)
    table = _new_table(radii)
    table["T"] = rep["T"]
    table["m_total"] = rep["lhs"]
    table["slack"] = rep["slack"]
    table["exceptional"] = rep["flags"].astype(int)
    summary = {"C0": rep["C0"], "c_est": rep["growth_index"],
               "exceptional_measure": rep["exceptional_measure"],
               "gamma_policy": rep["gamma_policy"], "k": rep["k"],
               "delta": rep["delta"], "ok": rep["ok"]}
    return table, summary, bool(rep["ok"]), rep["growth_index"]


def _run_growth_index(cfg, threads):
    holo = get_map(cfg.map_name)
    radii = cfg.grid.arrays()
    char = _characteristic_threaded(holo, radii, threads,
                                    cross_check=cfg.cross_check)
    table = _new_table(radii)
    table["T"] = char["T"]
    if char.get("T_area") is not None:
        table["T_area"] = char["T_area"]
    c = growth_index_from_values(char["T"], radii, holo.disc.radius)
    summary = {"c_est": c}
    ok = True
    if cfg.c_min is not None:
        ok = ok and c >= cfg.c_min
    if cfg.c_max is not None:
        ok = ok and c <= cfg.c_max
    summary["ok"] = ok
    return table, summary, ok, c


def _run_calculus_lemma(cfg, threads):
    radii = cfg.grid.arrays()
    disc_radius = cfg.grid.disc_radius
    spec = cfg.h_spec
    c = 0.0
    if spec == "r":
        hv = radii.copy()
    elif spec == "log-gap":
        if math.isinf(disc_radius):
            raise ConfigError("h = log-gap needs a bounded grid")
        hv = np.log(1.0 / (1.0 - radii / disc_radius))
    elif spec.startswith("map:"):
        holo = get_map(spec[4:].strip())
        char = _characteristic_threaded(holo, radii, threads)
        hv = char["T"]
        c = growth_index_from_values(hv, radii, holo.disc.radius)
    else:
        raise ConfigError("unknown h spec %r" % spec)
    if cfg.gamma_spec == "one":
        gv = np.ones_like(radii)
    elif cfg.gamma_spec == "gap":
        if math.isinf(disc_radius):
            raise ConfigError("gamma = gap needs a bounded grid")
        gv = 1.0 / (1.0 - radii / disc_radius)
    elif cfg.gamma_spec == "growth":
        cc = 0.0 if math.isinf(c) else c
        with np.errstate(over="ignore"):
            gv = np.exp(np.minimum((cc + cfg.eps) * hv, 700.0))
    else:
        raise ConfigError("unknown gamma spec %r" % cfg.gamma_spec)
    out = calculus_lemma_check(hv, gv, cfg.delta, radii, order=cfg.order)
    table = _new_table(radii)
    table["T"] = hv
    table["slack"] = out["bound"] - out["deriv"]
    table["exceptional"] = out["flags"].astype(int)
    summary = {"measure": out["measure"],
               "flagged_points": int(np.sum(out["flags"])),
               "c_est": c, "delta": cfg.delta, "order": cfg.order}
    if out["flags"].any():
        summary["flagged_max_r"] = float(out["flagged_radii"].max())
    ok = out["measure"] <= cfg.cap
    summary["ok"] = ok
    return table, summary, ok, c


_RUNNERS = {
    "fmt": _run_fmt,
    "smt-riemann": _run_smt_riemann,
    "cartan": _run_cartan,
    "nochka": _run_nochka,
    "ahlfors": _run_ahlfors,
    "plucker": _run_plucker,
    "ldl": _run_ldl,
    "growth-index": _run_growth_index,
    "calculus-lemma": _run_calculus_lemma,
}


# ---------------------------------------------------------------------------
# artifact writing
# ---------------------------------------------------------------------------

def _fmt_float(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return "%d" % x
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return "%.17g" % x
    return str(x)


def write_table_csv(path, table):
    """Write the fixed-schema results table deterministically."""
    cols = CSV_HEADER.split(",")
    n = len(table["r"])
    lines = [CSV_HEADER]
    for i in range(n):
        cells = []
        for col in cols:
            val = table[col][i]
            if col == "exceptional":
                cells.append("%d" % int(val))
            else:
                v = float(val)
                cells.append("nan" if math.isnan(v) else "%.17g" % v)
        lines.append(",".join(cells))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_summary(path, cfg, summary, exceptional):
    lines = ["experiment = %s" % cfg.kind]
    if cfg.map_name:
        lines.append("map = %s" % cfg.map_name)
    if cfg.curve_name:
        lines.append("curve = %s" % cfg.curve_name)
    lines.append("points = %d" % len(cfg.grid.radii))
    lines.append("r_min = %s" % _fmt_float(float(cfg.grid.radii[0])))
    lines.append("r_max = %s" % _fmt_float(float(cfg.grid.radii[-1])))
    lines.append("precision = %s" % PRECISION_MODE)
    for key in sorted(summary):
        lines.append("%s = %s" % (key, _fmt_float(summary[key])))
    lines.append("exceptional_count = %d" % len(exceptional.flagged_radii))
    lines.append("exceptional_weighted_measure = %s"
                 % _fmt_float(exceptional.measure))
    lines.append("exceptional_verdict = %s"
                 % ("finite" if exceptional.finite else "infinite"))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _svg_scale(values, lo_px, hi_px):
    finite = values[np.isfinite(values)]
    if len(finite) == 0:
        return lambda v: 0.5 * (lo_px + hi_px)
    lo, hi = float(finite.min()), float(finite.max())
    if hi - lo < 1e-300:
        hi = lo + 1.0

    def scale(v):
        return lo_px + (hi_px - lo_px) * (v - lo) / (hi - lo)
    return scale


def write_plot_svg(path, cfg, table):
    """Minimal line plot of the table columns against r."""
    width, height = 640, 420
    margin = 50
    r = table["r"]
    x_vals = np.log10(r) if r[-1] / max(r[0], 1e-300) > 20.0 else r
    sx = _svg_scale(x_vals, margin, width - margin)
    series = [("T", "#1f77b4"), ("m_total", "#d62728"),
              ("N_total", "#2ca02c"), ("S_k", "#9467bd"),
              ("slack", "#8c564b")]
    stack = np.concatenate([table[name] for name, _ in series])
    sy = _svg_scale(stack, height - margin, margin)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
        % (width, height),
        '<rect width="%d" height="%d" fill="white"/>' % (width, height),
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
        % (margin, height - margin, width - margin, height - margin),
        '<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="black"/>'
        % (margin, margin, margin, height - margin),
        '<text x="%d" y="%d" font-size="12">r</text>'
        % (width - margin + 8, height - margin + 4),
        '<text x="%d" y="%d" font-size="12">value</text>'
        % (8, margin - 8),
        '<text x="%d" y="%d" font-size="14">%s</text>'
        % (margin, margin - 24, cfg.kind),
    ]
    for name, color in series:
        vals = table[name]
        pts = ["%.6g,%.6g" % (sx(x_vals[i]), sy(float(vals[i])))
               for i in range(len(r)) if math.isfinite(float(vals[i]))]
        if len(pts) >= 2:
            parts.append('<polyline fill="none" stroke="%s" points="%s"/>'
                         % (color, " ".join(pts)))
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def run_experiment(cfg, out_dir, threads=1, svg=False):
    """Run one configured experiment and write its artifact bundle.

    Returns a dict with the table, the summary mapping, the
    ExceptionalSummary and the overall ok flag used by --assert.
    """
    os.makedirs(out_dir, exist_ok=True)
    runner = _RUNNERS[cfg.kind]
    table, summary, ok, c = runner(cfg, max(1, int(threads)))
    # the growth-weighted accounting is reported for every table; each
    # kind's own ok flag already enforces its applicable cap
    exceptional = exceptional_set_measure(table, c, cfg.eps, cap=cfg.cap)
    ok = bool(ok)
    write_table_csv(os.path.join(out_dir, "table.csv"), table)
    write_summary(os.path.join(out_dir, "summary.txt"), cfg, summary,
                  exceptional)
    if svg:
        write_plot_svg(os.path.join(out_dir, "plot.svg"), cfg, table)
    return {"table": table, "summary": summary,
            "exceptional": exceptional, "ok": ok}
