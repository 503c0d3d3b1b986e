"""Job configuration, suite runner and JSON reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from . import __version__
from .classical import DegenerateParameterError, ModelParams, ch_params, mp_params
from .closure import (
    AlphaSystem,
    closure_from_fit,
    ladder_apply,
    ladder_direct,
    smallest_order_observed,
    verify_closure_operator,
    verify_closure_spectral,
)
from .exact_core import GaussianRational, InexactDivisionError, Poly, as_gaussian
from .multi_indexed import (
    ConstructionError,
    IndexSet,
    build_P_Dn_mp_form,
    deformed_system,
)
from .recurrences import (
    build_R_table,
    build_X,
    check_eta0,
    check_symmetry,
    check_top,
    fit_Iz,
    generate_from_rr,
    solve_const_coeffs,
    verify_rr_var,
)

__all__ = [
    "SCHEMA_VERSION",
    "SUITES",
    "ConfigError",
    "JobConfig",
    "parse_config",
    "run",
    "golden_suite",
    "emit",
    "dumps",
    "load_report",
]

SCHEMA_VERSION = 1
SUITES = ("construct", "rr-var", "rr-const", "fit-iz", "closure", "ortho", "zeros", "golden")
_CONFIG_KEYS = {"model", "parameters", "index_set", "y_poly", "n_max", "suites"}


class ConfigError(ValueError):
    """The job configuration is malformed."""


@dataclass(frozen=True)
class JobConfig:
    params: ModelParams
    D: IndexSet
    Y: Poly
    n_max: int
    suites: Tuple[str, ...]
    raw: Dict[str, Any] = field(compare=False, hash=False, default_factory=dict)


def _fraction(v, what: str) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise ConfigError(f"{what}: expected an integer or a 'p/q' string, got {v!r}")
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{what}: {exc}") from None


def _gaussian(v, what: str) -> GaussianRational:
    if isinstance(v, dict):
        extra = set(v) - {"re", "im"}
        if extra:
            raise ConfigError(f"{what}: unknown keys {sorted(extra)}")
        return GaussianRational(_fraction(v.get("re", 0), what), _fraction(v.get("im", 0), what))
    if isinstance(v, str):
        try:
            return as_gaussian(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"{what}: {exc}") from None
    return GaussianRational(_fraction(v, what))


def _int_list(v, what: str) -> List[int]:
    if not isinstance(v, list) or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 0 for d in v):
        raise ConfigError(f"{what}: expected a list of non-negative integers")
    return list(v)


def parse_config(obj: Dict[str, Any]) -> JobConfig:
    """Validate a configuration dictionary before any computation happens."""
    if not isinstance(obj, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(obj) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    model = obj.get("model")
    if model not in ("mp", "ch"):
        raise ConfigError("model must be 'mp' or 'ch'")
    prm = obj.get("parameters", {})
    if not isinstance(prm, dict):
        raise ConfigError("parameters must be an object")
    try:
        if model == "mp":
            extra = set(prm) - {"a", "circle"}
            if extra:
                raise ConfigError(f"unknown MP parameters: {sorted(extra)}")
            circle = prm.get("circle", [3, 4, 5])
            if not (isinstance(circle, list) and len(circle) == 3 and all(isinstance(t, int) for t in circle)):
                raise ConfigError("circle must be an integer triple [p, q, r] with p^2 + q^2 = r^2")
            params = mp_params(_fraction(prm.get("a", 1), "a"), tuple(circle))
            ix = obj.get("index_set", [])
            D = IndexSet.mp(_int_list(ix, "index_set"))
        else:
            extra = set(prm) - {"a1", "a2"}
            if extra:
                raise ConfigError(f"unknown cH parameters: {sorted(extra)}")
            if "a1" not in prm or "a2" not in prm:
                raise ConfigError("cH needs a1 and a2")
            params = ch_params(_gaussian(prm["a1"], "a1"), _gaussian(prm["a2"], "a2"))
            ix = obj.get("index_set", {})
            if not isinstance(ix, dict) or set(ix) - {"typeI", "typeII"}:
                raise ConfigError("cH index_set must be an object with keys typeI and typeII")
            D = IndexSet.ch(_int_list(ix.get("typeI", []), "typeI"), _int_list(ix.get("typeII", []), "typeII"))
    except ConfigError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from None
    y = obj.get("y_poly", ["1"])
    if not isinstance(y, list) or not y:
        raise ConfigError("y_poly must be a non-empty coefficient list (constant term first)")
    Y = Poly([_gaussian(c, "y_poly") for c in y])
    if Y.is_zero():
        raise ConfigError("y_poly must be nonzero")
    n_max = obj.get("n_max", 6)
    if not isinstance(n_max, int) or isinstance(n_max, bool) or n_max < 0:
        raise ConfigError("n_max must be a non-negative integer")
    suites = obj.get("suites", [])
    if not isinstance(suites, list) or any(s not in SUITES for s in suites):
        raise ConfigError(f"suites must be a list drawn from {list(SUITES)}")
    ordered = tuple(s for s in SUITES if s in suites)
    return JobConfig(params, D, Y, n_max, ordered, dict(obj))


# ---------------------------------------------------------------------------
# suites


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _suite_construct(cfg: JobConfig, system) -> dict:
    cases = []
    ok = True
    single_type = cfg.params.is_mp or not (cfg.D.first and cfg.D.second)
    for n in range(cfg.n_max + 1):
        P = system.P(n)
        eig = system.htilde(P) == P * system.energy(n)
        deg = P.degree == cfg.D.ell + n
        case = {"n": n, "degree": P.degree, "eigen": eig, "degree_ok": deg}
        if single_type:
            case["cross_check"] = build_P_Dn_mp_form(cfg.params, cfg.D, n) == P
            ok = ok and case["cross_check"]
        ok = ok and eig and deg
        cases.append(case)
    return {"status": _status(ok), "cases": cases, "Xi": system.Xi.to_json()}


def _suite_rr_var(cfg: JobConfig, system) -> dict:
    M = cfg.D.M
    table = build_R_table(cfg.params, M)
    cases = []
    ok = True
    for n in range(-M - 2, cfg.n_max + 1):
        res = verify_rr_var(system, table, n)
        good = res.is_zero()
        ok = ok and good
        case = {"n": n, "zero": good}
        if not good:
            case["residual"] = res.to_json()
        cases.append(case)
    gen = generate_from_rr(system, table, cfg.n_max)
    same = all(g == system.P(n) for n, g in enumerate(gen))
    cases.append({"generated_matches_determinant": same})
    return {"status": _status(ok and same), "cases": cases}


def _orthogonal_regime(cfg: JobConfig, system) -> bool:
    from .numeric_ortho import strip_check

    return cfg.params.in_orthogonal_range() and strip_check(system).passed


def _suite_rr_const(cfg: JobConfig, system, ctx: dict) -> dict:
    X = build_X(system, cfg.Y)
    rec = solve_const_coeffs(system, X, cfg.n_max, cfg.Y)
    ctx["X"], ctx["rec"] = X, rec
    cases = []
    for n in range(cfg.n_max + 1):
        for k in range(-rec.L, rec.L + 1):
            if n + k >= 0:
                cases.append({"n": n, "k": k, "r": rec.coeff(n, k).to_json()})
    fails = [{"n": n, "residual": res.to_json()} for n, res in rec.failures().items()]
    checks = [check_top(rec, system).to_json()]
    if cfg.D.is_sorted:
        checks.append(check_eta0(rec, system).to_json())
    if _orthogonal_regime(cfg, system):
        checks.append(check_symmetry(rec, system).to_json())
    else:
        checks.append({"name": "h-ratio symmetry", "passed": None, "skipped": "outside the orthogonal regime"})
    ok = rec.ok and all(c["passed"] in (True, None) for c in checks)
    return {
        "status": _status(ok),
        "X": X.to_json(),
        "L": rec.L,
        "residual_failures": fails,
        "checks": checks,
        "cases": cases,
    }


def _ensure_rec(cfg: JobConfig, system, ctx: dict, extra: int = 0):
    X = ctx.get("X") or build_X(system, cfg.Y)
    L = X.degree
    bound = L if cfg.params.is_mp else 2 * L
    need = max(cfg.n_max, bound + 2) + extra
    rec = ctx.get("rec")
    if rec is None or rec.n_max < need:
        rec = solve_const_coeffs(system, X, need, cfg.Y)
    ctx["X"], ctx["rec"] = X, rec
    return X, rec


def _suite_fit_iz(cfg: JobConfig, system, ctx: dict) -> dict:
    X, rec = _ensure_rec(cfg, system, ctx, extra=2)
    fit = fit_Iz(rec, system)
    ctx["fit"] = fit
    ok = fit.held_out_ok and fit.within_bound
    return {
        "status": _status(ok),
        "I": fit.I_poly.to_json(),
        "degree": fit.I_poly.degree,
        "degree_bound": fit.degree_bound,
        "nodes": fit.nodes,
        "held_out": fit.held_out,
        "held_out_ok": fit.held_out_ok,
    }


def _suite_closure(cfg: JobConfig, system, ctx: dict) -> dict:
    X, rec = _ensure_rec(cfg, system, ctx, extra=2)
    fit = ctx.get("fit") or fit_Iz(rec, system)
    L = rec.L
    sys = AlphaSystem(cfg.params, L)
    closure = closure_from_fit(sys, fit)
    n_top = min(cfg.n_max, rec.n_max)
    spectral = verify_closure_spectral(system, rec, closure, n_top)
    ops = []
    for label, probe in (("P0", system.P(0)), ("P1+P2", system.P(1) + system.P(2))):
        try:
            rep = verify_closure_operator(system, X, closure, probe)
            ops.append({"probe": label, "passed": rep.passed})
        except InexactDivisionError as exc:
            ops.append({"probe": label, "passed": False, "error": str(exc)})
    ladder = []
    for n in range(min(5, n_top) + 1):
        for j in range(1, 2 * L + 1):
            coef, target = ladder_apply(rec, L, j, n)
            want = system.P(target) * coef if target >= 0 else Poly()
            ladder.append({"j": j, "n": n, "target": target, "coefficient": coef.to_json(),
                           "direct_matches": ladder_direct(system, X, closure, j, n) == want})
    ok = spectral.passed and all(o["passed"] for o in ops) and all(c["direct_matches"] for c in ladder)
    return {
        "status": _status(ok),
        "closure": closure.to_json(),
        "spectral": spectral.to_json(),
        "operator": ops,
        "ladder": ladder,
        "smallest_order_observed": smallest_order_observed(rec, system),
    }


def _suite_ortho(cfg: JobConfig, system) -> dict:
    from .numeric_ortho import WeightSpec, gram_report, strip_check

    strip = strip_check(system)
    if not cfg.params.in_orthogonal_range() or not strip.passed:
        return {"status": "skipped", "reason": "outside the orthogonal regime", "strip": strip.to_json()}
    rep = gram_report(WeightSpec(cfg.params, cfg.D), min(cfg.n_max, 6))
    return {"status": _status(rep.passed()), "strip": strip.to_json(), "gram": rep.to_json()}


def _suite_zeros(cfg: JobConfig, system) -> dict:
    from .numeric_ortho import interlaces, strip_check, zero_census

    strip = strip_check(system)
    regime = cfg.params.in_orthogonal_range() and strip.passed
    top = min(cfg.n_max, 6)
    census = [zero_census(system.P(n)) for n in range(top + 2)]
    cases = []
    ok = True
    for n in range(top + 1):
        c = census[n]
        case = {"n": n, "census": c.to_json(), "interlaces_next": interlaces(c.real, census[n + 1].real)}
        if regime:
            good = (
                c.real_count == n
                and c.complex_count == cfg.D.ell
                and case["interlaces_next"]
                and c.exact_sign_changes == n
            )
            case["expected_structure"] = good
            ok = ok and good
        cases.append(case)
    return {"status": _status(ok) if regime else "observed", "strip": strip.to_json(), "cases": cases}


def golden_suite() -> dict:
    from .golden import run_all

    results = [r.to_json() for r in run_all()]
    return {"status": _status(all(r["passed"] for r in results)), "cases": results}


def run(cfg: JobConfig) -> dict:
    """Execute the configured suites; verification failures are recorded, never raised."""
    report = {"version": SCHEMA_VERSION, "tool_version": __version__, "config": cfg.raw, "suites": []}
    timing = {}
    ctx: Dict[str, Any] = {}
    system = None
    for name in cfg.suites:
        start = time.perf_counter()
        try:
            if name == "golden":
                body = golden_suite()
            else:
                if system is None:
                    system = deformed_system(cfg.params, cfg.D)
                    system.Xi  # build eagerly so degenerate points surface here
                body = {
                    "construct": lambda: _suite_construct(cfg, system),
                    "rr-var": lambda: _suite_rr_var(cfg, system),
                    "rr-const": lambda: _suite_rr_const(cfg, system, ctx),
                    "fit-iz": lambda: _suite_fit_iz(cfg, system, ctx),
                    "closure": lambda: _suite_closure(cfg, system, ctx),
                    "ortho": lambda: _suite_ortho(cfg, system),
                    "zeros": lambda: _suite_zeros(cfg, system),
                }[name]()
        except (DegenerateParameterError, ConstructionError, InexactDivisionError, ValueError) as exc:
            body = {"status": "error", "error": f"{type(exc).__name__}: {exc}", "cases": []}
        body = {"name": name, **body}
        report["suites"].append(body)
        timing[name] = round(time.perf_counter() - start, 6)
    report["timing"] = timing
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def emit(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(report))


def load_report(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
