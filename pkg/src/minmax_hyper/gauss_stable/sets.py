"""Symmetric convex bodies encoded by their Minkowski gauge.

Every set carries a vectorized ``gauge`` mapping an (n, d) sample block to
the (n,) array of gauge values; membership is gauge <= 1 and the dilate
t*B is tested as gauge <= t, so one sampling pass serves a whole radius
grid. Builders cover slabs, ellipsoids, lp balls and finite intersections,
plus a JSON wire format for each.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ..errors import DomainError, ParseError
from ..rng import stream_rng

MAX_DIM = 64

SLAB = "SLAB"
ELLIPSOID = "ELLIPSOID"
LPBALL = "LPBALL"
INTERSECTION = "INTERSECTION"


@dataclass(frozen=True)
class ConvexSet:
    """A closed symmetric convex set with an exact gauge function."""

    kind: str
    dim: int
    gauge: Callable[[np.ndarray], np.ndarray]
    name: str
    params: dict = field(default_factory=dict)
    members: tuple = ()  # intersection components, empty otherwise

    def membership(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.gauge(x)) <= 1.0

    def scaled(self, c: float) -> "ConvexSet":
        """The dilate c*B (gauge divided by c), keeping the kind."""
        if not (c > 0.0 and np.isfinite(c)):
            raise DomainError(f"scale factor must be positive finite, got {c!r}")
        if self.kind == SLAB:
            return slab(self.params["u"], self.params["width"] * c)
        if self.kind == ELLIPSOID:
            return ellipsoid(np.asarray(self.params["Q"]) / (c * c))
        if self.kind == LPBALL:
            return lpball(self.params["p"], self.params["radius"] * c, self.dim)
        return intersection([m.scaled(c) for m in self.members])

    def to_json(self) -> dict:
        if self.kind == SLAB:
            return {"kind": "slab", "u": list(map(float, self.params["u"])),
                    "width": float(self.params["width"])}
        if self.kind == ELLIPSOID:
            q = np.asarray(self.params["Q"], dtype=float)
            return {"kind": "ellipsoid",
                    "Q": {"dim": self.dim, "data": [float(v) for v in q.ravel()]}}
        if self.kind == LPBALL:
            return {"kind": "lpball", "p": float(self.params["p"]),
                    "radius": float(self.params["radius"]), "dim": self.dim}
        return {"kind": "intersection", "sets": [m.to_json() for m in self.members]}


def _check_dim(d: int) -> int:
    d = int(d)
    if not 1 <= d <= MAX_DIM:
        raise DomainError(f"dimension must lie in 1..{MAX_DIM}, got {d}")
    return d


def _as_block(x, d: int) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if a.ndim == 1:
        a = a[None, :]
    if a.shape[-1] != d:
        raise DomainError(f"points have dimension {a.shape[-1]}, set has {d}")
    return a


def slab(u: Sequence[float], width: float) -> ConvexSet:
    """{x : |<x, u>| <= width}; unbounded across u, so the gauge vanishes
    on the orthogonal complement."""
    u = np.asarray(u, dtype=float)
    d = _check_dim(u.size)
    if not np.all(np.isfinite(u)) or not np.any(u != 0.0):
        raise DomainError("slab direction must be finite and nonzero")
    if not (width > 0.0 and np.isfinite(width)):
        raise DomainError(f"slab width must be positive finite, got {width!r}")

    def gauge(x):
        return np.abs(_as_block(x, d) @ u) / width

    return ConvexSet(kind=SLAB, dim=d, gauge=gauge,
                     name=f"slab(d={d},width={width:g})",
                     params={"u": tuple(map(float, u)), "width": float(width)})


def ellipsoid(Q) -> ConvexSet:
    """{x : x^T Q x <= 1} for symmetric positive semidefinite Q."""
    Q = np.asarray(Q, dtype=float)
    if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
        raise DomainError("ellipsoid matrix must be square")
    d = _check_dim(Q.shape[0])
    if not np.all(np.isfinite(Q)):
        raise DomainError("ellipsoid matrix must be finite")
    if not np.allclose(Q, Q.T, rtol=0.0, atol=1e-10 * max(1.0, np.abs(Q).max())):
        raise DomainError("ellipsoid matrix must be symmetric")
    Qs = 0.5 * (Q + Q.T)
    w = np.linalg.eigvalsh(Qs)
    if w[0] < -1e-10 * max(1.0, abs(w[-1])):
        raise DomainError("ellipsoid matrix must be positive semidefinite")

    def gauge(x):
        b = _as_block(x, d)
        q = np.einsum("ij,jk,ik->i", b, Qs, b)
        return np.sqrt(np.maximum(q, 0.0))

    return ConvexSet(kind=ELLIPSOID, dim=d, gauge=gauge,
                     name=f"ellipsoid(d={d})", params={"Q": Qs})


def lpball(p: float, radius: float, dim: int) -> ConvexSet:
    """{x : ||x||_p <= radius}; p in [1, inf], radius finite (the whole
    space is rejected, approximate it with a huge radius instead)."""
    d = _check_dim(dim)
    p = float(p)
    if not p >= 1.0:
        raise DomainError(f"lp exponent must be >= 1, got {p!r}")
    if not (radius > 0.0 and np.isfinite(radius)):
        raise DomainError(f"lp radius must be positive finite, got {radius!r}")

    def gauge(x):
        b = _as_block(x, d)
        if np.isinf(p):
            return np.abs(b).max(axis=-1) / radius
        return np.linalg.norm(b, ord=p, axis=-1) / radius

    label = "inf" if np.isinf(p) else f"{p:g}"
    return ConvexSet(kind=LPBALL, dim=d, gauge=gauge,
                     name=f"lpball(p={label},r={radius:g},d={d})",
                     params={"p": p, "radius": float(radius)})


def euclidean_ball(dim: int, radius: float = 1.0) -> ConvexSet:
    return lpball(2.0, radius, dim)


def intersection(sets: Sequence[ConvexSet]) -> ConvexSet:
    sets = tuple(sets)
    if not sets:
        raise DomainError("intersection needs at least one set")
    d = sets[0].dim
    if any(s.dim != d for s in sets):
        raise DomainError("intersection members must share a dimension")
    gauges = [s.gauge for s in sets]

    def gauge(x):
        vals = gauges[0](x)
        for g in gauges[1:]:
            vals = np.maximum(vals, g(x))
        return vals

    return ConvexSet(kind=INTERSECTION, dim=d, gauge=gauge,
                     name="inter(" + ",".join(s.name for s in sets) + ")",
                     members=sets)


def parse_matrix(obj, what: str = "matrix") -> np.ndarray:
    """Row-major {"dim": d, "data": [...]} wire format, or nested lists."""
    if isinstance(obj, (list, tuple)):
        try:
            arr = np.asarray(obj, dtype=float)
        except ValueError as exc:
            raise ParseError(f"{what} rows are ragged or non-numeric") from exc
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ParseError(f"{what} must be square, got shape {arr.shape}")
        _check_dim(arr.shape[0])
        return arr
    if not isinstance(obj, dict) or "dim" not in obj or "data" not in obj:
        raise ParseError(f'{what} must be {{"dim": d, "data": [row-major]}} '
                         "or a square nested list")
    d = _check_dim(obj["dim"])
    data = np.asarray(obj["data"], dtype=float)
    if data.size != d * d:
        raise ParseError(f"{what} data has {data.size} entries, expected {d * d}")
    return data.reshape(d, d)


def parse_set(obj) -> ConvexSet:
    """Build a ConvexSet from its JSON description (dict or JSON text)."""
    if isinstance(obj, (str, bytes)):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid set JSON: {exc}") from exc
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError('set description must be an object with a "kind"')
    kind = str(obj["kind"]).lower()
    try:
        if kind == "slab":
            return slab(obj["u"], obj["width"])
        if kind == "ellipsoid":
            return ellipsoid(parse_matrix(obj["Q"], "ellipsoid Q"))
        if kind == "lpball":
            p = obj["p"]
            p = np.inf if p in ("inf", "Infinity") else float(p)
            return lpball(p, obj["radius"], obj["dim"])
        if kind == "intersection":
            return intersection([parse_set(s) for s in obj["sets"]])
    except KeyError as exc:
        raise ParseError(f"set kind {kind!r} is missing field {exc}") from exc
    raise ParseError(f"unknown set kind {obj['kind']!r}")


def convexity_check(cs: ConvexSet, seed: int = 0, pairs: int = 10_000) -> bool:
    """Random midpoint sampling: members' midpoints must be members.

    The sharper gauge form is asserted: gauge is homogeneous, so convexity
    is exactly midpoint subadditivity up to roundoff.
    """
    rng = stream_rng(seed, 0)
    x = rng.standard_normal((pairs, cs.dim)) * rng.lognormal(0.0, 1.0, (pairs, 1))
    y = rng.standard_normal((pairs, cs.dim)) * rng.lognormal(0.0, 1.0, (pairs, 1))
    gm = cs.gauge(0.5 * (x + y))
    cap = 0.5 * (cs.gauge(x) + cs.gauge(y))
    return bool(np.all(gm <= cap * (1.0 + 1e-9) + 1e-12))


def symmetry_check(cs: ConvexSet, seed: int = 0, n: int = 10_000) -> bool:
    rng = stream_rng(seed, 1)
    x = rng.standard_normal((n, cs.dim))
    return bool(np.allclose(cs.gauge(x), cs.gauge(-x), rtol=1e-12, atol=1e-15))


def gauge_consistency_check(cs: ConvexSet, seed: int = 0, n: int = 10_000) -> bool:
    """Points scaled onto the boundary must have gauge 1 within 1e-9."""
    rng = stream_rng(seed, 2)
    x = rng.standard_normal((n, cs.dim))
    g = cs.gauge(x)
    live = g > 1e-12
    if not live.any():
        return True
    y = x[live] / g[live, None]
    return bool(np.all(np.abs(cs.gauge(y) - 1.0) <= 1e-9))
