"""Command handlers shared by the HTTP service and the CLI.

Every command produces one envelope:

    {"schema": 1, "command": ..., "verdict": "pass"|"fail"|"inconclusive",
     "assertions": [{"anchor": ..., "holds": ...}, ...],
     "config": <request echo>, "report": <payload>, "timestamp": ...}

The anchor is a stable identifier for the assertion being checked, so
reports can be compared across runs and versions. Verdicts follow the exit
convention: pass = every assertion holds (vacuously true for estimate-only
commands), fail = an assertion failed or a premise is infinite, and
inconclusive = the data cannot decide (non-convergent quadrature, failed
rescale, vacuous reference mass).
"""
from __future__ import annotations

import math
from datetime import datetime, timezone

import numpy as np

from .. import comparison, explore, hyper, moments
from ..distributions import parse_spec
from ..errors import (
    GridTooCoarse,
    InfiniteMoment,
    NonConvergent,
    NotSubregular,
    RescaleFailed,
    UsageError,
)
from ..gauss_stable import checks as gs_checks
from ..gauss_stable import laws as gs_laws
from ..gauss_stable import sets as gs_sets
from ..rng import run_batches
from . import schemas

SCHEMA_VERSION = 1

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"

EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
EXIT_USAGE = 3


def jsonable(obj):
    """Plain-JSON view: numpy scalars unwrapped, arrays listed, non-finite
    floats encoded as 'inf'/'-inf'/'nan' strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if math.isnan(f):
            return "nan"
        if math.isinf(f):
            return "inf" if f > 0 else "-inf"
        return f
    return obj


def _matrix(obj) -> np.ndarray:
    if isinstance(obj, dict):
        return gs_sets.parse_matrix(obj, "covariance")
    arr = np.asarray(obj, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    return arr


def _params(req, **overrides) -> hyper.HyperParams:
    kw = {"p": req.p, "q": req.q}
    for field in ("t_grid_size", "rel_tol", "rho"):
        if hasattr(req, field):
            kw[field] = getattr(req, field)
    if getattr(req, "n_grid", None):
        kw["n_grid"] = tuple(req.n_grid)
    kw.update(overrides)
    return hyper.HyperParams(**kw)


def _hold(anchor: str, holds: bool, **extra) -> dict:
    out = {"anchor": anchor, "holds": bool(holds)}
    out.update(extra)
    return out


# --- scalar-law commands ------------------------------------------------------


def _moments(req: schemas.MomentsRequest):
    spec = parse_spec(req.dist)
    word = moments.Word.parse(req.word)
    comp = moments.compose_cdf(spec, word)
    value = moments.raw_moment(comp, req.r, req.rel_tol)
    payload = {
        "distribution": spec.name,
        "word": str(word),
        "copies": word.total_copies,
        "r": req.r,
        "moment": value,
        "norm": value ** (1.0 / req.r) if value > 0 else 0.0,
    }
    assertions = []
    if req.mc_check:
        if word.total_copies > 1 << 20:
            raise UsageError(
                "mc_check resamples the composed law; words this large are "
                "quadrature-only")

        def worker(rng, m):
            draws = comp.sampler(rng, m) ** req.r
            return (draws.sum(), (draws * draws).sum(), np.int64(m))

        s1, s2, m = run_batches(worker, req.seed, 0, int(req.samples),
                                threads=req.threads)
        m = int(m)
        est = s1 / m
        se = math.sqrt(max(s2 / m - est * est, 0.0) / m)
        payload["mc_estimate"] = est
        payload["mc_stderr"] = se
        payload["mc_samples"] = m
        assertions.append(_hold("word-moment-mc", abs(value - est) <= 4.0 * se,
                                gap=abs(value - est), stderr=se))
    return payload, assertions, None


def _bounds(req: schemas.BoundsRequest):
    spec = parse_spec(req.dist)
    rows, assertions = [], []
    for n in req.n_values:
        lower, upper, b = moments.max_moment_bounds(spec, int(n), req.r)
        rows.append({"n": int(n), "lower": lower, "upper": upper,
                     "tail_quantile": b})
        assertions.append(_hold("max-moment-sandwich", lower <= upper, n=int(n)))
    payload = {"distribution": spec.name, "r": req.r, "moment_rows": rows}
    if req.t is not None:
        tail_rows = []
        for n in req.n_values:
            lo, mid, hi = moments.max_tail_sandwich(spec, req.t, int(n))
            tail_rows.append({"n": int(n), "lower": lo, "exact": mid, "upper": hi})
            assertions.append(_hold(
                "max-tail-sandwich",
                lo <= mid + 1e-12 and mid <= hi + 1e-12, n=int(n)))
        payload["t"] = req.t
        payload["tail_rows"] = tail_rows
    return payload, assertions, None


def _hyper(req: schemas.HyperRequest, kind: str):
    spec = parse_spec(req.dist)
    params = _params(req)
    check = hyper.check_min_conditions if kind == moments.MIN \
        else hyper.check_max_conditions
    rep = check(spec, params)
    payload = rep.to_dict()
    payload["distribution"] = spec.name
    assertions = [
        _hold(cid, v["verdict"] == "holds")
        for cid, v in rep.condition_verdicts.items()
    ]
    if kind == moments.MIN and req.lam is not None:
        pz = hyper.paley_zygmund_check(spec, params, req.lam)
        payload["scaled_tail_lower"] = pz
        assertions.append(_hold("min-scaled-tail-lower", pz["all_hold"]))
    return payload, assertions, None


def _hyper_minmax(req: schemas.HyperMinmaxRequest):
    spec = parse_spec(req.dist)
    params = hyper.HyperParams(p=req.p, q=req.q, t_grid_size=req.t_grid_size,
                               rel_tol=req.rel_tol)
    words = moments.alternating_words(req.pairs, tuple(req.counts))
    result = hyper.iterated_hyper_check(spec, params, words)
    payload = dict(result)
    payload["distribution"] = spec.name
    payload["word_count"] = len(words)
    assertions = [
        _hold("clip-sigma-positive", result["sigma"] > 0.0, sigma=result["sigma"]),
        _hold("iterated-word-ratio", result["all_hold"],
              failing=[w["word"] for w in result["words"] if not w["holds"]]),
    ]
    return payload, assertions, None


def _constants(req: schemas.ConstantsRequest):
    delta, R, beta = hyper.integral_rate_constants(req.r)
    payload = {
        "inputs": {"C": req.C, "p": req.p, "q": req.q, "lam": req.lam,
                   "b": req.b, "r": req.r},
        "truncation_scale": hyper.moment_truncation_scale(req.C, req.p, req.q),
        "doubling_constant": hyper.min_doubling_constant(req.C, req.p, req.q),
        "scaled_tail_lower_bound": hyper.paley_zygmund_lower(
            req.C, req.p, req.q, req.lam),
        "small_ball_rate": hyper.small_ball_rate(req.b),
        "integral_constants": {"delta": delta, "R": R, "beta": beta},
    }
    return payload, [], None


def _compare(req: schemas.CompareRequest):
    specx = parse_spec(req.dist_x)
    specy = parse_spec(req.dist_y)
    params = hyper.HyperParams(p=req.p, q=req.q, rel_tol=req.rel_tol)
    wanted = (["small-ball", "tail", "two-sided", "thinning"]
              if req.direction == "all" else [req.direction])
    payload = {"dist_x": specx.name, "dist_y": specy.name}
    assertions = []
    if "small-ball" in wanted:
        v = comparison.small_ball_comparison(specx, specy, params)
        payload["small_ball"] = v.to_dict()
        assertions.append(_hold("small-ball-transfer", v.holds))
    if "tail" in wanted:
        v = comparison.tail_comparison(specx, specy, params)
        payload["tail"] = v.to_dict()
        assertions.append(_hold("tail-transfer", v.holds))
    if "two-sided" in wanted:
        v = comparison.two_sided_comparison(specx, specy, params)
        payload["two_sided"] = v.to_dict()
        assertions.append(_hold("two-sided-domination", v.holds))
    if "thinning" in wanted:
        rep = comparison.thinning_equivalence(specx, specy, params,
                                              C_tail=req.C_tail)
        payload["thinning"] = rep
        assertions.append(_hold("thinning-equivalence", rep["all_hold"]))
    return payload, assertions, None


# --- vector-law commands ------------------------------------------------------


def _small_ball(req: schemas.SmallBallRequest):
    law = gs_laws.parse_law(req.law)
    cs = gs_sets.parse_set(req.set_)
    est = gs_checks.small_ball(law, cs, y=req.y, radii=tuple(req.radii),
                               n_samples=req.samples, seed=req.seed,
                               threads=req.threads)
    return est.to_dict(), [], None


def _kanter(req: schemas.KanterRequest):
    law = gs_laws.parse_law(req.law)
    cs = gs_sets.parse_set(req.set_)
    rep = gs_checks.kanter_bound_check(
        law, cs, kappa_grid=req.kappa_grid, shifts=req.shifts,
        n_samples=req.samples, seed=req.seed, threads=req.threads)
    return rep, [_hold("shifted-ball-concentration", rep["all_hold"])], None


def _regularity(req: schemas.RegularityRequest):
    law = gs_laws.parse_law(req.law)
    cs = gs_sets.parse_set(req.set_)
    rep = gs_checks.regularity_check(
        law, cs, b=req.b, t_grid=req.t_grid, n_samples=req.samples,
        seed=req.seed, threads=req.threads)
    if rep["verdict"] == "inconclusive":
        return rep, [], INCONCLUSIVE
    return rep, [_hold("dilation-rate-bound", rep["all_hold"])], None


def _correlation(req: schemas.CorrelationRequest):
    law = gs_laws.gaussian(_matrix(req.cov))
    sets = [gs_sets.parse_set(s) for s in req.sets]
    rep = gs_checks.correlation_check(
        law, sets, alpha_scale=req.alpha_scale, n_samples=req.samples,
        seed=req.seed, threads=req.threads)
    if rep["must_hold"]:
        return rep, [_hold("product-correlation", rep["holds"])], None
    # beyond the proven configurations this is exploration
    return rep, [], None


def _slepian(req: schemas.SlepianRequest):
    law = gs_laws.gaussian(_matrix(req.cov))
    sets = [gs_sets.parse_set(s) for s in req.sets]
    rep = gs_checks.slepian_sqrt2_check(
        law, sets, n_samples=req.samples, seed=req.seed, threads=req.threads)
    return rep, [_hold("shared-max-mean-bound", rep["holds"])], None


def _min_profile(req: schemas.MinProfileRequest):
    law = gs_laws.gaussian(_matrix(req.cov))
    sets = [gs_sets.parse_set(s) for s in req.sets]
    rep = gs_checks.shared_vs_independent_min_profile(
        law, sets, n_grid=req.n_grid, q=req.q, n_samples=req.samples,
        seed=req.seed, threads=req.threads)
    return rep, [], None


def _integral_check(req: schemas.IntegralCheckRequest):
    law = gs_laws.parse_law(req.law)
    cs = gs_sets.parse_set(req.set_)
    rep = gs_checks.integrated_small_ball_check(
        law, cs, b=req.b, t_grid=req.t_grid, n_samples=req.samples,
        seed=req.seed, threads=req.threads)
    assertions = [_hold("integrated-dilation-rate", rep["holds"])]
    if rep.get("constants"):
        assertions.append(_hold("power-rate-crosscheck",
                                rep["power_rate_all_hold"]))
    return rep, assertions, None


def _explore(req: schemas.ExploreRequest):
    cov = _matrix(req.cov) if req.cov is not None else np.eye(1)
    law = gs_laws.gaussian(cov)
    cs = (gs_sets.parse_set(req.set_) if req.set_ is not None
          else gs_sets.euclidean_ball(law.dim))
    probe = explore.min_constant_probe(
        law, cs, p=req.p, q=req.q, n_grid=req.n_grid, n_samples=req.samples,
        seed=req.seed, threads=req.threads)
    payload = {"min_constant": probe,
               "candidates": probe["candidates"]}
    if req.sweep_sets:
        sweep = explore.dilation_sweep(
            law, [gs_sets.parse_set(s) for s in req.sweep_sets],
            scale_grid=req.scale_grid, n_samples=max(req.samples, 10**5),
            seed=req.seed, threads=req.threads)
        payload["dilation_sweep"] = sweep
    return payload, [], None


HANDLERS = {
    "moments": (schemas.MomentsRequest, _moments),
    "bounds": (schemas.BoundsRequest, _bounds),
    "hyper-min": (schemas.HyperRequest, lambda r: _hyper(r, moments.MIN)),
    "hyper-max": (schemas.HyperRequest, lambda r: _hyper(r, moments.MAX)),
    "hyper-minmax": (schemas.HyperMinmaxRequest, _hyper_minmax),
    "constants": (schemas.ConstantsRequest, _constants),
    "compare": (schemas.CompareRequest, _compare),
    "small-ball": (schemas.SmallBallRequest, _small_ball),
    "kanter": (schemas.KanterRequest, _kanter),
    "regularity": (schemas.RegularityRequest, _regularity),
    "correlation": (schemas.CorrelationRequest, _correlation),
    "slepian": (schemas.SlepianRequest, _slepian),
    "hyp62": (schemas.MinProfileRequest, _min_profile),
    "integral72": (schemas.IntegralCheckRequest, _integral_check),
    "explore-conjectures": (schemas.ExploreRequest, _explore),
}


def run(command: str, request, timestamp: bool = True) -> dict:
    """Execute one command and wrap its result in the report envelope.

    Parse- and domain-level errors propagate (the callers map them to
    usage exits / HTTP 422); evaluation-level failures are folded into
    the verdict.
    """
    if command not in HANDLERS:
        raise UsageError(f"unknown command {command!r}")
    _, handler = HANDLERS[command]
    config = request.model_dump(by_alias=True)
    # worker count must not change report bytes: same config + seed means
    # the same report no matter how the batches were scheduled
    config.pop("threads", None)
    envelope = {
        "schema": SCHEMA_VERSION,
        "command": command,
        "config": jsonable(config),
    }
    try:
        payload, assertions, override = handler(request)
    except InfiniteMoment as exc:
        envelope["verdict"] = FAIL
        envelope["assertions"] = []
        envelope["report"] = {"error": {"type": "InfiniteMoment",
                                        "message": str(exc)}}
    except NotSubregular as exc:
        envelope["verdict"] = FAIL
        envelope["assertions"] = []
        envelope["report"] = {"error": {"type": "NotSubregular",
                                        "message": str(exc)}}
    except (NonConvergent, RescaleFailed, GridTooCoarse) as exc:
        envelope["verdict"] = INCONCLUSIVE
        envelope["assertions"] = []
        envelope["report"] = {"error": {"type": type(exc).__name__,
                                        "message": str(exc)}}
    else:
        if override is not None:
            verdict = override
        else:
            verdict = PASS if all(a["holds"] for a in assertions) else FAIL
        envelope["verdict"] = verdict
        envelope["assertions"] = jsonable(assertions)
        envelope["report"] = jsonable(payload)
    if timestamp:
        envelope["timestamp"] = datetime.now(timezone.utc).isoformat()
    return envelope


def exit_code(envelope: dict) -> int:
    return EXIT_CODES[envelope["verdict"]]
