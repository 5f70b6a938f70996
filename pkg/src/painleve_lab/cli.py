"""Command-line front end: ``painleve-lab <command> [flags]``.

Every command emits a report (json, csv or pretty text).  The exit code is 0
exactly when every check in the report passes, 1 when a check fails or the
computation raises, and 2 on invalid arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import shlex
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import acceptance
from .backlund import TABLES, apply_to_series, apply_word, parse_word, verify_relations
from .catalog import (CATALOG, CLASSICAL_IDS, build_solution, classical_solution, list_solutions,
                      pair_error, solution_id)
from .errors import ExistenceError, PainleveLabError, ResonanceError
from .lax import build_pair, integrability_residual
from .monodromy import (closed_form_monodromy, det_defects, numerical_monodromy_p6,
                        trace_invariants, verify_cyclic)
from .sampling import generic_params
from .series import TruncatedSeries
from .systems import ALPHA_COUNT, THETA_KEYS, K, ParamSet, PhaseState, series_residual

SCHEMA = 1
COMMANDS = ("series", "backlund", "monodromy", "lax-residual", "verify", "catalog")

DEFAULT_TOL = {
    "series": 1e-10,
    "backlund": 1e-9,
    "relations": 1e-10,
    "monodromy": 1e-6,
    "cyclic_numeric": 1e-7,
    "cyclic_closed": 1e-10,
    "det": 1e-8,
    "lax-residual": 1e-7,
}
DEFAULT_X = (0.3 + 0.7j, -0.6 + 0.4j, 1.7 - 0.5j)
MONODROMY_ORDER = 30

# solutions whose parameters are pinned apart from the listed free keys
_PINNED_THETA = {"P5_RATIONAL_MINUS1": {"0": 0.5, "1": 0.5}}

# closed-form entries shown symbolically next to their values
FORMULAS = {
    "P5_RATIONAL_MINUS1": {
        "M0": "[[0, i exp(i pi theta_inf)], [i exp(-i pi theta_inf), 0]]",
        "M1": "[[0, -i], [-i, 0]]",
        "Gamma0inf": "I",
        "Gamma1inf": "I",
        "G1": "I",
        "G2": "I",
        "E": "diag(exp(-i pi theta_inf), exp(i pi theta_inf))",
    },
}

_ASCII = {"θ∞": "theta_inf", "α": "alpha", "θ": "theta", "∞": "inf", "−": "-", "∈": "in", "ℤ": "Z",
          "Δ": "Delta", "≠": "!="}
_SUBSCRIPTS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def ascii_text(s):
    """ASCII rendering of a message: Greek letters spelled out, subscripts flattened."""
    s = str(s).translate(_SUBSCRIPTS)
    for k, v in _ASCII.items():
        pad = f" {v} " if k in "∈≠" else v
        s = s.replace(k, pad)
    return " ".join(s.split())


# -- value parsing ------------------------------------------------------------------------


def parse_complex(text):
    """``"0.3"``, ``"-0.2i"``, ``"0.1+0.2i"``, ``"1/3"`` or ``"1e-3-2j"`` as a complex number."""
    s = str(text).strip().replace(" ", "").replace("I", "i").replace("i", "j")
    if not s:
        raise ValueError("empty number")
    if "/" in s and "j" not in s:
        num, den = s.split("/", 1)
        return complex(float(num) / float(den))
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    return complex(s)


def parse_list(text):
    if text is None:
        return []
    if isinstance(text, (list, tuple)):
        return list(text)
    s = str(text).strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    return [x.strip().strip("\"'") for x in s.split(",") if x.strip()]


def parse_complex_list(text):
    return [parse_complex(x) for x in parse_list(text)]


# -- config files -------------------------------------------------------------------------


def read_config(path):
    """Read a ``key = value`` file into a dict.

    Blank lines and ``#`` comments are ignored; values may be quoted, and
    lists may be written ``a, b, c`` or ``[a, b, c]``.  Keys are flag names
    without the leading dashes (``theta-inf`` and ``theta_inf`` are the same).
    """
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (x.strip() for x in line.split("=", 1))
            value = value.strip()
            if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
                value = value[1:-1]
            elif value.startswith("[") and value.endswith("]"):
                value = ",".join(parse_list(value))
            out[key.replace("_", "-")] = value
    return out


def _config_tokens(parser, cfg):
    """Turn config entries into argv tokens placed before the command-line flags."""
    options = {}
    for action in parser._actions:
        for opt in action.option_strings:
            if opt.startswith("--"):
                options[opt[2:]] = action
    tokens = []
    for key, value in cfg.items():
        if key == "config":
            continue
        if key not in options:
            raise ValueError(f"unknown config key {key!r}")
        action = options[key]
        if action.nargs == 0:
            if str(value).strip().lower() in ("1", "true", "yes", "on"):
                tokens.append(f"--{key}")
            continue
        tokens.append(f"--{key}={value}")
    return tokens


# -- report encoding ----------------------------------------------------------------------


def encode(value):
    """JSON-ready form: complex as ``{"re", "im"}``, matrices row-major, series as dicts."""
    if isinstance(value, TruncatedSeries):
        return {"leading_exponent": value.leading_exponent,
                "coeffs": [encode(c) for c in value.coeffs],
                "variable_tag": value.variable_tag}
    if isinstance(value, ParamSet):
        return encode(value.to_dict())
    if isinstance(value, PhaseState):
        return {"t": encode(value.t), "y": encode(value.y), "conj": encode(value.conj)}
    if isinstance(value, np.ndarray):
        return [encode(v) for v in value.tolist()]
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": _real(value.real), "im": _real(value.imag)}
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return _real(value)
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    if value is None or isinstance(value, str):
        return value
    if hasattr(value, "value") and hasattr(value, "name"):
        return value.value
    return str(value)


def _real(x):
    x = float(x)
    if math.isfinite(x):
        return x + 0.0
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _fmt_number(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        re, im = v["re"], v["im"]
        if isinstance(re, str) or isinstance(im, str):
            return f"{re}{'+' if not str(im).startswith('-') else ''}{im}i"
        return f"{re:.12g}{im:+.12g}i"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def _flatten(value, prefix=""):
    if isinstance(value, dict) and not (set(value) == {"re", "im"}):
        for k, v in value.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else k)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            yield from _flatten(v, f"{prefix}[{i}]")
    elif isinstance(value, dict):
        yield f"{prefix}.re", value["re"]
        yield f"{prefix}.im", value["im"]
    else:
        yield prefix, value


def _is_leaf_row(v):
    if isinstance(v, list) and any(isinstance(x, str) and len(x) > 40 for x in v):
        return False
    return isinstance(v, list) and all(
        not isinstance(x, (list, dict)) or (isinstance(x, dict) and set(x) == {"re", "im"})
        for x in v)


def _pretty(value, indent=0, out=None):
    out = [] if out is None else out
    pad = "  " * indent
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, dict) and set(v) != {"re", "im"} or (
                    isinstance(v, list) and v and not _is_leaf_row(v)):
                out.append(f"{pad}{k}:")
                _pretty(v, indent + 1, out)
            elif isinstance(v, list):
                out.append(f"{pad}{k}: [{', '.join(_fmt_number(x) for x in v)}]")
            else:
                out.append(f"{pad}{k}: {_fmt_number(v)}")
    elif isinstance(value, list):
        for i, v in enumerate(value):
            if _is_leaf_row(v):
                out.append(f"{pad}[{', '.join(_fmt_number(x) for x in v)}]")
            elif isinstance(v, (dict, list)):
                out.append(f"{pad}- [{i}]")
                _pretty(v, indent + 1, out)
            else:
                out.append(f"{pad}- {_fmt_number(v)}")
    else:
        out.append(f"{pad}{_fmt_number(value)}")
    return out


def render(report, fmt):
    data = encode(report)
    if fmt == "json":
        return json.dumps(data, indent=2, ensure_ascii=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(data):
            w.writerow([k, "" if v is None else v])
        return buf.getvalue()
    return "\n".join(_pretty(data)) + "\n"


# -- checks and errors --------------------------------------------------------------------


def check(name, value, tol):
    value = float(value)
    return {"name": name, "value": value, "tolerance": float(tol),
            "passed": bool(math.isfinite(value) and value < tol)}


def error_record(err):
    rec = {"type": type(err).__name__, "message": str(err), "message_ascii": ascii_text(err)}
    cond = getattr(err, "condition", None)
    if cond:
        rec["condition"] = cond
        rec["condition_ascii"] = ascii_text(cond)
    if isinstance(err, ResonanceError):
        rec["order"] = err.n
    return rec


def _passed(run):
    return "error" not in run and all(c["passed"] for c in run.get("checks", []))


# -- parameters ---------------------------------------------------------------------------


def resolve_id(kind, name):
    return solution_id(kind, name) if name else None


def explicit_params(kind, args, sid=None):
    """Parameters given by flags, or ``None`` when no parameter flag was used."""
    kind = K.parse(kind)
    keys = THETA_KEYS[kind]
    theta_given = args.theta is not None or args.theta_inf is not None
    if args.alpha is not None and theta_given:
        raise ValueError("give either --theta or --alpha, not both")
    if args.alpha is not None:
        vals = [None if x in ("_", "?", "") else parse_complex(x) for x in parse_list(args.alpha)]
        return ParamSet.from_alpha(kind, vals, complete=args.complete)
    pinned = dict(_PINNED_THETA.get(sid, {}))
    if not theta_given and not pinned:
        if not keys and not ALPHA_COUNT[kind]:
            return ParamSet.empty(kind)
        return None
    th = dict(pinned)
    if args.theta is not None:
        items = parse_list(args.theta)
        if items and all("=" in x for x in items):
            th.update({k.strip(): parse_complex(v) for k, v in (x.split("=", 1) for x in items)})
        else:
            free = [k for k in keys if k not in pinned] if len(items) < len(keys) else list(keys)
            if len(items) != len(free):
                raise ValueError(f"{kind.value} takes theta values for {free}, got {len(items)}")
            th.update(zip(free, (parse_complex(x) for x in items)))
    if args.theta_inf is not None:
        th["inf"] = parse_complex(args.theta_inf)
    if set(th) != set(keys):
        if not (set(th) - {"inf"}) and "inf" in keys and not pinned:
            raise ValueError(f"{kind.value} needs theta keys {list(keys)}")
        missing = [k for k in keys if k not in th]
        if missing:
            raise ValueError(f"missing theta values for {missing}")
    return ParamSet.from_theta(kind, th)


def drawn_params(kind, sid, rng):
    """A seeded generic draw (real, in (0.05, 0.45)) for ``sid``."""
    kind = K.parse(kind)
    if sid in _PINNED_THETA:
        th = dict(_PINNED_THETA[sid])
        th.update({k: rng.uniform(0.05, 0.45) for k in THETA_KEYS[kind] if k not in th})
        return ParamSet.from_theta(kind, th)
    ids = (sid,) if sid in CATALOG else ()
    base = K.P6 if kind is K.P6_NORMALIZED else kind
    p = generic_params(base, rng, ids, lo=0.05, hi=0.45, imag=0.0)
    return p.with_kind(kind)


def param_list(kind, sid, args):
    """Explicit parameters, or ``--draws`` seeded draws (one when not given)."""
    p = explicit_params(kind, args, sid)
    if p is not None:
        if args.draws:
            raise ValueError("--draws only applies when no parameters are given")
        return [p]
    rng = np.random.default_rng(args.seed)
    return [drawn_params(kind, sid, rng) for _ in range(args.draws or 1)]


def _pack(p):
    """Picklable form of a ParamSet."""
    return (p.kind.value, None if p.alpha is None else tuple(p.alpha),
            None if p.theta is None else dict(p.theta))


def _unpack(data):
    kind, alpha, theta = data
    if alpha is not None:
        return ParamSet.from_alpha(kind, alpha) if alpha else ParamSet.empty(kind)
    return ParamSet.from_theta(kind, theta)


# -- jobs (run in worker processes) -------------------------------------------------------


def _residual_summary(p, y, conj, upto):
    worst = 0.0
    for r in series_residual(p, y, conj):
        for k in range(r.leading_exponent, min(upto, r.precision - 1) + 1):
            worst = max(worst, abs(r.coefficient(k)))
    return worst


def _build(sid, p, order):
    if sid in CLASSICAL_IDS:
        sol = classical_solution(sid, p, order)
        if sol.series is None:
            raise ExistenceError(f"{sid} has no local series")
        return sol, sol.series
    sol = build_solution(sid, p, order)
    return sol, (sol.y, sol.conj)


def job_series(job):
    p = _unpack(job["params"])
    sid, order, tol = job["id"], job["order"], job["tol"]
    run = {"params": p}
    try:
        sol, (y, conj) = _build(sid, p, order)
    except PainleveLabError as err:
        run["error"] = error_record(err)
        return run
    run["expansion_point"] = getattr(sol, "expansion_point", "0")
    run["conditions"] = list(getattr(sol, "conditions", ()))
    run["series"] = {"y": y, "conj": conj}
    if p.kind is K.P6:
        run["series"]["zbar"] = sol.zbar
    res = _residual_summary(p, y, conj, order - 1)
    run["residual"] = {"max_coefficient": res, "through_order": order - 1}
    run["checks"] = [check("residual", res, tol)]
    return run


def job_backlund_series(job):
    p = _unpack(job["params"])
    kind, sid, word, tol = K.parse(job["eq"]), job["id"], job["word"], job["tol"]
    run = {"params": p, "source": sid, "word": word}
    try:
        sol = build_solution(sid, p, job["order"])
        out = sol
        path = [sid]
        for g in parse_word(word):
            out = apply_to_series(kind, g, out)
            path.append(out.id)
    except PainleveLabError as err:
        run["error"] = error_record(err)
        return run
    run["target"] = out.id
    run["path"] = path
    run["target_params"] = out.params
    run["series"] = {"y": out.y, "conj": out.conj}
    if not parse_word(word):
        run["checks"] = []
        return run
    if out.id is None:
        run["error"] = {"type": "NoTarget", "message": "the image matches no catalog solution",
                        "message_ascii": "the image matches no catalog solution"}
        return run
    try:
        ref = build_solution(out.id, out.params, job["order"])
    except PainleveLabError as err:
        run["error"] = error_record(err)
        return run
    run["checks"] = [check("coefficient_match", pair_error(out, ref, job["compare_order"]), tol)]
    return run


def job_backlund_point(job):
    p = _unpack(job["params"])
    q, pp, t = job["point"]
    run = {"params": p, "point": {"q": q, "p": pp, "t": t}, "word": job["word"]}
    try:
        newp, s = apply_word(job["eq"], job["word"], (q, pp, t), p)
    except PainleveLabError as err:
        run["error"] = error_record(err)
        return run
    run["result"] = {"params": newp, "point": {"q": s.y, "p": s.conj, "t": s.t}}
    run["checks"] = []
    return run


def _matrices(d):
    return {k: v for k, v in d.matrices.items()}


def _closed_record(d, verify, tol):
    rec = {"matrices": _matrices(d), "invariants": trace_invariants(d).to_dict()}
    if d.info:
        rec["info"] = dict(d.info)
    if d.solution_id in FORMULAS:
        rec["formulas"] = FORMULAS[d.solution_id]
    checks = [check(f"det_{k}", v, DEFAULT_TOL["det"]) for k, v in det_defects(d).items()]
    if verify:
        try:
            rec["cyclic_residual"] = verify_cyclic(d)
            checks.append(check("cyclic", rec["cyclic_residual"], tol))
        except PainleveLabError as err:
            rec["cyclic_error"] = error_record(err)
            checks.append({"name": "cyclic", "value": None, "tolerance": tol, "passed": False})
    return rec, checks


def job_monodromy(job):
    p = _unpack(job["params"])
    kind, sid, t = K.parse(job["eq"]), job["id"], job["t"]
    run = {"params": p}
    if t is not None:
        run["t"] = t
    checks = []
    try:
        numeric = None
        if kind in (K.P6, K.P6_NORMALIZED):
            if t is None:
                raise ValueError("P6 monodromy needs --t")
            sol = build_solution(sid, p.with_kind(K.P6), max(job["order"], MONODROMY_ORDER))
            numeric = numerical_monodromy_p6(p.with_kind(K.P6), sol, t)
            inv = trace_invariants(numeric)
            run["numeric"] = {"matrices": _matrices(numeric), "invariants": inv.to_dict(),
                              "cyclic_residual": verify_cyclic(numeric)}
            checks.append(check("cyclic_numeric", run["numeric"]["cyclic_residual"],
                                job["tol_cyclic_numeric"]))
            checks += [check(f"det_{k}", v, DEFAULT_TOL["det"])
                       for k, v in det_defects(numeric).items()]
        if numeric is None or job["compare"]:
            closed = closed_form_monodromy(sid, p)
            rec, cchecks = _closed_record(closed, job["verify_cyclic"], job["tol_cyclic_closed"])
            run["closed_form"] = rec
            checks += cchecks if numeric is None else []
            if numeric is not None:
                a, b = trace_invariants(numeric), trace_invariants(closed)
                deltas = {}
                for group in ("traces", "pairs"):
                    for k, v in getattr(a, group).items():
                        if k in getattr(b, group):
                            deltas[f"tr_{k}" if group == "traces" else k] = abs(v - getattr(b, group)[k])
                run["deltas"] = deltas
                checks += [check(f"delta_{k}", v, job["tol"]) for k, v in deltas.items()]
    except (PainleveLabError, ValueError) as err:
        run["error"] = error_record(err)
        return run
    run["checks"] = checks
    return run


def job_lax(job):
    p = _unpack(job["params"])
    kind, sid, t = K.parse(job["eq"]), job["id"], job["t"]
    run = {"params": p, "t": t}
    try:
        base = p.with_kind(K.P6) if kind is K.P6_NORMALIZED else p
        sol, _ = _build(sid, base, max(job["order"], MONODROMY_ORDER))
        lp = build_pair(kind, base, sol, t)
        res = [integrability_residual(lp, x) for x in job["x"]]
    except (PainleveLabError, ValueError) as err:
        run["error"] = error_record(err)
        return run
    run["residuals"] = [{"x": x, "residual": r} for x, r in zip(job["x"], res)]
    run["checks"] = [check("integrability", max(res), job["tol"])]
    return run


JOBS = {"series": job_series, "backlund-series": job_backlund_series,
        "backlund-point": job_backlund_point, "monodromy": job_monodromy, "lax-residual": job_lax}


def _dispatch(item):
    name, job = item
    return encode(JOBS[name](job))


def run_jobs(name, jobs, workers=None):
    """Run jobs on an ordered worker pool capped by ``PAINLEVE_LAB_THREADS``."""
    nw = min(acceptance.worker_count(workers), len(jobs))
    items = [(name, j) for j in jobs]
    if nw <= 1:
        return [_dispatch(i) for i in items]
    with ProcessPoolExecutor(max_workers=nw) as ex:
        return list(ex.map(_dispatch, items))


# -- commands -----------------------------------------------------------------------------


def _tol(args, key):
    return args.tol if args.tol is not None else DEFAULT_TOL[key]


def _inputs(args, **extra):
    out = {"command": args.command}
    for key in ("eq", "id", "theta", "theta_inf", "alpha", "complete", "order", "t", "tol",
                "seed", "draws"):
        v = getattr(args, key, None)
        if v is not None and v is not False:
            out[key.replace("_", "-")] = v
    out.update(extra)
    return out


def _need(args, *names):
    for n in names:
        if not getattr(args, n.replace("-", "_"), None):
            raise ValueError(f"{args.command} needs --{n}")


def _t_values(args, default=None):
    ts = parse_complex_list(args.t) if args.t is not None else []
    return ts or [default]


def _sweep_report(args, name, kind, sid, jobs_extra, ts=(None,)):
    params = param_list(kind, sid, args)
    jobs = []
    for p in params:
        for t in ts:
            job = {"eq": kind.value, "id": sid, "params": _pack(p), "order": args.order, "t": t}
            job.update(jobs_extra)
            jobs.append(job)
    runs = run_jobs(name, jobs)
    return {"inputs": _inputs(args, **({"id": sid} if sid else {})), "runs": runs,
            "passed": all(_passed(r) for r in runs)}


def cmd_series(args):
    _need(args, "eq", "id")
    kind = K.parse(args.eq)
    sid = resolve_id(kind, args.id)
    return _sweep_report(args, "series", kind, sid, {"tol": _tol(args, "series")})


def cmd_backlund(args):
    _need(args, "eq")
    kind = K.parse(args.eq)
    if args.verify_relations:
        rep = verify_relations(kind, samples=args.samples, seed=args.seed)
        tol = _tol(args, "relations")
        checks = [check(f"relation_{k}", v, tol) for k, v in rep.errors.items()]
        return {"inputs": _inputs(args, samples=args.samples, **{"verify-relations": True}),
                "relations": rep.to_dict(), "checks": checks,
                "passed": all(c["passed"] for c in checks)}
    word = args.word or ""
    if args.apply_to:
        sid = resolve_id(kind, args.apply_to)
        extra = {"word": word, "tol": _tol(args, "backlund"), "compare_order": 8}
        rep = _sweep_report(args, "backlund-series", kind, sid, extra)
        rep["inputs"]["word"] = word
        rep["inputs"]["apply-to"] = args.apply_to
        return rep
    _need(args, "point")
    q, pp, t = parse_complex_list(args.point)
    rep = _sweep_report(args, "backlund-point", kind, None, {"word": word, "point": (q, pp, t)})
    rep["inputs"].update({"word": word, "point": [q, pp, t]})
    return rep


def cmd_monodromy(args):
    _need(args, "eq", "id")
    kind = K.parse(args.eq)
    sid = resolve_id(kind, args.id)
    ts = _t_values(args, 0.1 if kind in (K.P6, K.P6_NORMALIZED) else None)
    extra = {"tol": _tol(args, "monodromy"), "compare": args.compare == "closed-form",
             "verify_cyclic": args.verify_cyclic,
             "tol_cyclic_numeric": DEFAULT_TOL["cyclic_numeric"],
             "tol_cyclic_closed": args.tol if args.tol is not None else DEFAULT_TOL["cyclic_closed"]}
    rep = _sweep_report(args, "monodromy", kind, sid, extra, ts)
    if args.compare:
        rep["inputs"]["compare"] = args.compare
    if args.verify_cyclic:
        rep["inputs"]["verify-cyclic"] = True
    return rep


def cmd_lax_residual(args):
    _need(args, "eq", "id")
    kind = K.parse(args.eq)
    sid = resolve_id(kind, args.id)
    xs = parse_complex_list(args.x) if args.x else list(DEFAULT_X)
    rep = _sweep_report(args, "lax-residual", kind, sid,
                        {"tol": _tol(args, "lax-residual"), "x": xs}, _t_values(args, 0.1))
    rep["inputs"]["x"] = xs
    return rep


def cmd_verify(args):
    numbers = [int(x) for x in parse_list(args.criteria)] or None
    results = acceptance.run_acceptance(numbers, seed=args.seed)
    return {"inputs": _inputs(args, criteria=numbers or sorted(acceptance.CRITERIA)),
            "criteria": [r.to_dict() for r in results], "lines": [r.line() for r in results],
            "passed": all(r.passed for r in results)}


def cmd_catalog(args):
    kinds = [K.parse(args.eq)] if args.eq else None
    rows = []
    for sid in list_solutions(kinds[0] if kinds else None):
        e = CATALOG[sid]
        conds = [c.describe() for c in e.conditions]
        rows.append({"id": sid, "kind": e.kind.value, "expansion_point": e.point,
                     "conditions": conds, "conditions_ascii": [ascii_text(c) for c in conds]})
    for sid in CLASSICAL_IDS:
        k = K.parse(sid.split("_")[0])
        if kinds and k not in kinds and not (k is K.P6 and kinds[0] is K.P6_NORMALIZED):
            continue
        rows.append({"id": sid, "kind": k.value, "expansion_point": "closed form",
                     "conditions": [], "conditions_ascii": []})
    gens = {k.value: sorted(TABLES[k]) for k in TABLES if not kinds or k in kinds}
    return {"inputs": _inputs(args), "solutions": rows, "backlund_generators": gens,
            "passed": True}


HANDLERS = {"series": cmd_series, "backlund": cmd_backlund, "monodromy": cmd_monodromy,
            "lax-residual": cmd_lax_residual, "verify": cmd_verify, "catalog": cmd_catalog}


# -- argument parsing ---------------------------------------------------------------------


def _common(p):
    p.add_argument("--eq", help="equation kind: p1, p2, d6, d7, d8, p4, p5, p6, p6n")
    p.add_argument("--id", help="solution id, e.g. I, 0-I, sym1, rational-minus1")
    p.add_argument("--theta", help="theta values in key order, or key=value pairs")
    p.add_argument("--theta-inf", help="theta at infinity (other thetas from --theta or pinned)")
    p.add_argument("--alpha", help="alpha values; '_' marks the entry completed by --complete")
    p.add_argument("--complete", action="store_true",
                   help="fill the one free alpha from the affine constraint")
    p.add_argument("--order", type=int, default=12, help="series truncation order N")
    p.add_argument("--t", help="deformation time(s), comma separated")
    p.add_argument("--tol", type=float, help="tolerance override for the main check")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="pretty")
    p.add_argument("--seed", type=int, default=0, help="seed for random parameter draws")
    p.add_argument("--draws", type=int, default=0,
                   help="number of seeded generic parameter draws when no parameters are given")
    p.add_argument("--config", help="key = value file; command-line flags override it")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="painleve-lab",
        description="Series solutions, Backlund maps, Lax pairs and monodromy of Painleve equations.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("series", help="build a catalog solution as truncated series")
    _common(p)
    p = sub.add_parser("backlund", help="apply a Backlund word or verify the group relations")
    _common(p)
    p.add_argument("--word", default="", help="generators applied left to right, e.g. 's1 pi'")
    p.add_argument("--apply-to", help="catalog solution id to transform")
    p.add_argument("--point", help="phase point q,p,t in table coordinates")
    p.add_argument("--verify-relations", action="store_true")
    p.add_argument("--samples", type=int, default=50)
    p = sub.add_parser("monodromy", help="numerical and closed-form monodromy")
    _common(p)
    p.add_argument("--compare", choices=("closed-form",), help="compare numerics with closed form")
    p.add_argument("--verify-cyclic", action="store_true", help="check the cyclic relation")
    p = sub.add_parser("lax-residual", help="integrability residual of the Lax pair")
    _common(p)
    p.add_argument("--x", help="spectral points, comma separated")
    p = sub.add_parser("verify", help="run the acceptance suite")
    _common(p)
    p.add_argument("--criteria", help="criterion numbers, comma separated (default: all)")
    p = sub.add_parser("catalog", help="list solution ids and existence conditions")
    _common(p)
    return parser


def _with_config(parser, argv):
    """Splice ``--config`` entries in front of the command-line flags."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return argv
    idx = next((i for i, a in enumerate(argv) if a in COMMANDS), None)
    if idx is None:
        return argv
    subparser = parser._subparsers._group_actions[0].choices[argv[idx]]
    tokens = _config_tokens(subparser, read_config(known.config))
    return argv[:idx + 1] + tokens + argv[idx + 1:]


def main(argv=None):
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _with_config(parser, argv)
    except (OSError, ValueError) as err:
        parser.error(str(err))
    args = parser.parse_args(argv)
    try:
        report = HANDLERS[args.command](args)
    except (PainleveLabError, ValueError) as err:
        report = {"inputs": {"command": args.command, "argv": shlex.join(argv)},
                  "error": error_record(err), "passed": False}
    report = {"schema": SCHEMA, **report}
    text = render(report, args.format)
    try:
        text.encode(sys.stdout.encoding or "ascii")
    except UnicodeEncodeError:
        text = "\n".join(ascii_text(line) if not line.isascii() else line
                         for line in text.split("\n"))
    sys.stdout.write(text)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
