"""Command line driver; a thin client over the service handlers.

Reports are JSON by default: sorted keys, schema tag, non-finite values
as strings. Same configuration and seed produce byte-identical output
regardless of ``--threads`` when ``--no-timestamp`` is set. Exit status:
0 every assertion holds, 1 an assertion failed, 2 the run was
inconclusive, 3 usage error.

Vector arguments (``--law``, ``--sets``, ``--cov``, shifts) accept inline
JSON or ``@path`` to a JSON file.
"""
from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .errors import DomainError, ParseError, UsageError
from .service import runner, schemas

ENV_SEED = "MINMAX_HYPER_SEED"


def _resolve_seed(seed):
    if seed is not None:
        return int(seed)
    raw = os.environ.get(ENV_SEED, "").strip()
    if raw:
        try:
            return int(raw)
        except ValueError as exc:
            raise UsageError(f"{ENV_SEED} must be an integer, got {raw!r}") from exc
    return 0


def _json_arg(text, what: str):
    if text is None:
        return None
    if isinstance(text, str) and text.startswith("@"):
        path = Path(text[1:])
        if not path.exists():
            raise UsageError(f"{what}: file {path} not found")
        text = path.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc})") from exc


def _one_set(obj):
    if isinstance(obj, list):
        if len(obj) != 1:
            raise UsageError("this command takes exactly one set")
        obj = obj[0]
    return obj


def _many_sets(obj):
    if obj is None:
        raise UsageError("--sets is required")
    if isinstance(obj, dict):
        return [obj]
    return list(obj)


def _render_text(env: dict) -> str:
    lines = [f"command: {env['command']}", f"verdict: {env['verdict']}"]
    for a in env.get("assertions", []):
        mark = "ok" if a["holds"] else "FAIL"
        extra = {k: v for k, v in a.items() if k not in ("anchor", "holds")}
        tail = f"  {json.dumps(extra, sort_keys=True)}" if extra else ""
        lines.append(f"  [{mark}] {a['anchor']}{tail}")
    report = env.get("report", {})
    for key in sorted(report):
        value = report[key]
        if isinstance(value, (str, int, float, bool)) or value is None:
            lines.append(f"{key}: {value}")
        elif isinstance(value, list):
            lines.append(f"{key}: {len(value)} entries")
        elif isinstance(value, dict):
            keys = ", ".join(sorted(value)[:6])
            lines.append(f"{key}: {{{keys}}}")
    if "timestamp" in env:
        lines.append(f"timestamp: {env['timestamp']}")
    return "\n".join(lines) + "\n"


def _emit(command: str, kwargs: dict, fmt: str, out, no_timestamp: bool):
    model, _ = runner.HANDLERS[command]
    try:
        request = model(**kwargs)
        env = runner.run(command, request, timestamp=not no_timestamp)
    except (ParseError, DomainError, UsageError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(runner.EXIT_USAGE)
    if fmt == "json":
        text = json.dumps(env, sort_keys=True, indent=2) + "\n"
    else:
        text = _render_text(env)
    if out:
        Path(out).write_text(text)
        click.echo(f"{command}: {env['verdict']} -> {out}")
    else:
        click.echo(text, nl=False)
    sys.exit(runner.exit_code(env))


def _io_options(f):
    f = click.option("--no-timestamp", is_flag=True, default=False,
                     help="omit the timestamp field (for byte comparison)")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                     default="json", show_default=True)(f)
    f = click.option("--out", type=click.Path(dir_okay=False), default=None,
                     help="write the report here instead of stdout")(f)
    return f


def _seed_option(f):
    return click.option("--seed", type=int, default=None,
                        help=f"RNG seed [default: ${ENV_SEED} or 0]")(f)


def _mc_options(default_samples):
    def wrap(f):
        f = click.option("--threads", type=int, default=1, show_default=True)(f)
        f = click.option("--samples", type=int, default=default_samples,
                         show_default=True)(f)
        f = _seed_option(f)
        return f
    return wrap


class _UsageGroup(click.Group):
    """Map argument-preparation errors (bad JSON, missing @file, bad env
    seed) to the usage exit, same as errors raised inside the handlers."""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (ParseError, DomainError, UsageError) as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(runner.EXIT_USAGE)


@click.group(cls=_UsageGroup)
@click.version_option(package_name="minmax-hyper")
def main():
    """Certified numeric checks for moments of iterated minima and maxima."""


@main.command()
@click.option("--dist", required=True, help='distribution text, e.g. "exp(1)"')
@click.option("--word", default="id", show_default=True,
              help='composition word, e.g. "max2.min3" (leftmost acts last)')
@click.option("--r", type=float, default=1.0, show_default=True)
@click.option("--rel-tol", type=float, default=1e-9, show_default=True)
@click.option("--mc-check", is_flag=True, default=False,
              help="cross-check the quadrature against a sampling estimate")
@_mc_options(10**6)
@_io_options
def moments(dist, word, r, rel_tol, mc_check, samples, seed, threads, fmt,
            out, no_timestamp):
    """Moment of a min/max composition word by exact quadrature."""
    _emit("moments", dict(dist=dist, word=word, r=r, rel_tol=rel_tol,
                          mc_check=mc_check, samples=samples,
                          seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--dist", required=True)
@click.option("--r", type=float, default=2.0, show_default=True)
@click.option("--n", "n_values", type=int, multiple=True,
              default=(1, 10, 100, 10_000), show_default=True)
@click.option("--t", type=float, default=None,
              help="also tabulate the max tail sandwich at this level")
@_seed_option
@_io_options
def bounds(dist, r, n_values, t, seed, fmt, out, no_timestamp):
    """Two-sided envelopes for moments and tails of maxima."""
    _emit("bounds", dict(dist=dist, r=r, n_values=list(n_values), t=t,
                         seed=_resolve_seed(seed)),
          fmt, out, no_timestamp)


def _hyper_options(f):
    f = click.option("--lam", type=float, default=None,
                     help="also check the scaled-tail lower bound (min only)")(f)
    f = click.option("--rho", type=float, default=0.5, show_default=True)(f)
    f = click.option("--rel-tol", type=float, default=1e-8, show_default=True)(f)
    f = click.option("--t-grid-size", type=int, default=400, show_default=True)(f)
    f = click.option("--n", "n_grid", type=int, multiple=True,
                     help="replicate-count grid override")(f)
    f = click.option("--q", type=float, default=2.0, show_default=True)(f)
    f = click.option("--p", type=float, default=1.0, show_default=True)(f)
    f = click.option("--dist", required=True)(f)
    return f


def _hyper_kwargs(dist, p, q, n_grid, t_grid_size, rel_tol, rho, lam, seed):
    return dict(dist=dist, p=p, q=q, n_grid=list(n_grid) or None,
                t_grid_size=t_grid_size, rel_tol=rel_tol, rho=rho, lam=lam,
                seed=_resolve_seed(seed))


@main.command("hyper-min")
@_hyper_options
@_seed_option
@_io_options
def hyper_min(dist, p, q, n_grid, t_grid_size, rel_tol, rho, lam, seed, fmt,
              out, no_timestamp):
    """Norm-ratio constant and certified conditions for minima."""
    _emit("hyper-min",
          _hyper_kwargs(dist, p, q, n_grid, t_grid_size, rel_tol, rho, lam, seed),
          fmt, out, no_timestamp)


@main.command("hyper-max")
@_hyper_options
@_seed_option
@_io_options
def hyper_max(dist, p, q, n_grid, t_grid_size, rel_tol, rho, lam, seed, fmt,
              out, no_timestamp):
    """Norm-ratio constant and certified conditions for maxima."""
    _emit("hyper-max",
          _hyper_kwargs(dist, p, q, n_grid, t_grid_size, rel_tol, rho, lam, seed),
          fmt, out, no_timestamp)


@main.command("hyper-minmax")
@click.option("--dist", required=True)
@click.option("--p", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=2.0, show_default=True)
@click.option("--pairs", type=int, default=2, show_default=True)
@click.option("--counts", type=int, multiple=True, default=(2, 4, 8),
              show_default=True)
@click.option("--t-grid-size", type=int, default=400, show_default=True)
@click.option("--rel-tol", type=float, default=1e-8, show_default=True)
@_seed_option
@_io_options
def hyper_minmax(dist, p, q, pairs, counts, t_grid_size, rel_tol, seed, fmt,
                 out, no_timestamp):
    """Clip-threshold search plus the alternating-word ratio sweep."""
    _emit("hyper-minmax",
          dict(dist=dist, p=p, q=q, pairs=pairs, counts=list(counts),
               t_grid_size=t_grid_size, rel_tol=rel_tol,
               seed=_resolve_seed(seed)),
          fmt, out, no_timestamp)


@main.command()
@click.option("--C", "big_c", type=float, default=2.0, show_default=True,
              help="norm-ratio constant feeding the closed forms")
@click.option("--p", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=2.0, show_default=True)
@click.option("--lam", type=float, default=0.5, show_default=True)
@click.option("--b", type=float, default=0.5, show_default=True)
@click.option("--r", type=float, default=0.25, show_default=True,
              help="integral-to-mass ratio for the derived rate constants")
@_io_options
def constants(big_c, p, q, lam, b, r, fmt, out, no_timestamp):
    """Closed-form constants derived from a norm-ratio constant."""
    _emit("constants", dict(C=big_c, p=p, q=q, lam=lam, b=b, r=r),
          fmt, out, no_timestamp)


@main.command()
@click.option("--dist-x", required=True)
@click.option("--dist-y", required=True)
@click.option("--p", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=2.0, show_default=True)
@click.option("--direction",
              type=click.Choice(["all", "small-ball", "tail", "two-sided",
                                 "thinning"]),
              default="all", show_default=True)
@click.option("--c-tail", type=float, default=None,
              help="thinning factor; fitted from the tail ratio when omitted")
@click.option("--rel-tol", type=float, default=1e-8, show_default=True)
@_seed_option
@_io_options
def compare(dist_x, dist_y, p, q, direction, c_tail, rel_tol, seed, fmt, out,
            no_timestamp):
    """Transfer comparisons between two scalar laws."""
    _emit("compare",
          dict(dist_x=dist_x, dist_y=dist_y, p=p, q=q, direction=direction,
               C_tail=c_tail, rel_tol=rel_tol, seed=_resolve_seed(seed)),
          fmt, out, no_timestamp)


@main.command("small-ball")
@click.option("--law", required=True, help="vector law JSON or @file")
@click.option("--sets", "set_arg", required=True, help="one set JSON or @file")
@click.option("--y", default=None, help="shift vector JSON")
@click.option("--radii", type=float, multiple=True,
              default=(0.25, 0.5, 1.0, 2.0), show_default=True)
@_mc_options(10**6)
@_io_options
def small_ball(law, set_arg, y, radii, samples, seed, threads, fmt, out,
               no_timestamp):
    """Wilson-interval estimates of nu(t*set + y) on a radius grid."""
    _emit("small-ball",
          dict(law=_json_arg(law, "--law"),
               set=_one_set(_json_arg(set_arg, "--sets")),
               y=_json_arg(y, "--y"), radii=list(radii), samples=samples,
               seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--law", required=True)
@click.option("--sets", "set_arg", required=True)
@click.option("--kappa", "kappa_grid", type=float, multiple=True,
              help="dilation grid [default: 10-point log grid in (0.05, 1]]")
@click.option("--shift", "shifts", multiple=True,
              help="shift vector JSON; repeatable [default: 3 auto shifts]")
@_mc_options(10**6)
@_io_options
def kanter(law, set_arg, kappa_grid, shifts, samples, seed, threads, fmt, out,
           no_timestamp):
    """Concentration bound for shifted dilates of a symmetric convex set."""
    _emit("kanter",
          dict(law=_json_arg(law, "--law"),
               set=_one_set(_json_arg(set_arg, "--sets")),
               kappa_grid=list(kappa_grid) or None,
               shifts=[_json_arg(s, "--shift") for s in shifts] or None,
               samples=samples, seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--law", required=True)
@click.option("--sets", "set_arg", required=True)
@click.option("--b", type=float, default=0.5, show_default=True)
@click.option("--t", "t_grid", type=float, multiple=True,
              help="dilation grid [default: 20-point log grid in (0.05, 1]]")
@_mc_options(10**6)
@_io_options
def regularity(law, set_arg, b, t_grid, samples, seed, threads, fmt, out,
               no_timestamp):
    """Power-rate dilation bound on a rescaled set, plus the exponent fit."""
    _emit("regularity",
          dict(law=_json_arg(law, "--law"),
               set=_one_set(_json_arg(set_arg, "--sets")),
               b=b, t_grid=list(t_grid) or None, samples=samples,
               seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--cov", required=True, help="covariance matrix JSON or @file")
@click.option("--sets", "sets_arg", required=True, help="JSON list of sets")
@click.option("--alpha", "alpha_scale", type=float, default=1.0,
              show_default=True, help="dilation applied to the intersection")
@_mc_options(10**6)
@_io_options
def correlation(cov, sets_arg, alpha_scale, samples, seed, threads, fmt, out,
                no_timestamp):
    """Product-correlation check for a Gaussian law over convex sets."""
    _emit("correlation",
          dict(cov=_json_arg(cov, "--cov"),
               sets=_many_sets(_json_arg(sets_arg, "--sets")),
               alpha_scale=alpha_scale, samples=samples,
               seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--cov", required=True)
@click.option("--sets", "sets_arg", required=True)
@_mc_options(10**6)
@_io_options
def slepian(cov, sets_arg, samples, seed, threads, fmt, out, no_timestamp):
    """Mean of the shared-vector max vs sqrt(2) times the independent max."""
    _emit("slepian",
          dict(cov=_json_arg(cov, "--cov"),
               sets=_many_sets(_json_arg(sets_arg, "--sets")),
               samples=samples, seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--cov", required=True)
@click.option("--sets", "sets_arg", required=True)
@click.option("--q", type=float, default=2.0, show_default=True)
@click.option("--n", "n_grid", type=int, multiple=True,
              help="tournament sizes [default: powers of two up to 256]")
@_mc_options(10**5)
@_io_options
def hyp62(cov, sets_arg, q, n_grid, samples, seed, threads, fmt, out,
          no_timestamp):
    """Shared vs independent tournament-minimum norms (estimates only)."""
    _emit("hyp62",
          dict(cov=_json_arg(cov, "--cov"),
               sets=_many_sets(_json_arg(sets_arg, "--sets")),
               q=q, n_grid=list(n_grid) or None, samples=samples,
               seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--law", required=True)
@click.option("--sets", "set_arg", required=True)
@click.option("--b", type=float, default=0.5, show_default=True)
@click.option("--t", "t_grid", type=float, multiple=True)
@_mc_options(10**6)
@_io_options
def integral72(law, set_arg, b, t_grid, samples, seed, threads, fmt, out,
               no_timestamp):
    """Averaged-dilation certificate and its derived power-rate constants."""
    _emit("integral72",
          dict(law=_json_arg(law, "--law"),
               set=_one_set(_json_arg(set_arg, "--sets")),
               b=b, t_grid=list(t_grid) or None, samples=samples,
               seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command("explore-conjectures")
@click.option("--p", type=float, default=1.0, show_default=True)
@click.option("--q", type=float, default=2.0, show_default=True)
@click.option("--cov", default=None, help="probe covariance [default: [[1]]]")
@click.option("--sets", "set_arg", default=None,
              help="probe norm set [default: euclidean ball]")
@click.option("--sweep-sets", default=None,
              help="JSON list of sets; adds the intersection dilation sweep")
@click.option("--scale", "scale_grid", type=float, multiple=True,
              help="dilation grid for the sweep [default: 1.0 .. 2.0]")
@click.option("--n", "n_grid", type=int, multiple=True)
@_mc_options(10**5)
@_io_options
def explore_conjectures(p, q, cov, set_arg, sweep_sets, scale_grid, n_grid,
                        samples, seed, threads, fmt, out, no_timestamp):
    """Estimates around the open constants; reported, never asserted."""
    _emit("explore-conjectures",
          dict(p=p, q=q, cov=_json_arg(cov, "--cov"),
               set=(_one_set(_json_arg(set_arg, "--sets"))
                    if set_arg else None),
               sweep_sets=(_many_sets(_json_arg(sweep_sets, "--sweep-sets"))
                           if sweep_sets else None),
               scale_grid=list(scale_grid) or None,
               n_grid=list(n_grid) or None, samples=samples,
               seed=_resolve_seed(seed), threads=threads),
          fmt, out, no_timestamp)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
