import math
import numpy as np
import minmax_hyper.gauss_stable as gs
from minmax_hyper.rng import stream_rng

# --- sets: gauge sanity
ball = gs.euclidean_ball(2)
assert abs(ball.gauge(np.array([[3.0, 4.0]]))[0] - 5.0) < 1e-12
sl = gs.slab([1.0, 0.0], 2.0)
assert abs(sl.gauge(np.array([[3.0, 99.0]]))[0] - 1.5) < 1e-12
ell = gs.ellipsoid(np.diag([4.0, 1.0]))  # gauge^2 = x'Qx = 4x^2 + y^2
assert abs(ell.gauge(np.array([[0.5, 0.0]]))[0] - 1.0) < 1e-12
cube = gs.lpball(float("inf"), 1.0, 2)
assert abs(cube.gauge(np.array([[0.3, -0.9]]))[0] - 0.9) < 1e-12
inter = gs.intersection([ball, sl])
assert abs(inter.gauge(np.array([[3.0, 4.0]]))[0] - 5.0) < 1e-12
for cs in (ball, sl, ell, cube, inter):
    assert gs.convexity_check(cs), cs.name
    assert gs.symmetry_check(cs), cs.name
    assert gs.gauge_consistency_check(cs), cs.name
sc = ball.scaled(2.0)
assert abs(sc.gauge(np.array([[3.0, 4.0]]))[0] - 2.5) < 1e-12
rt = gs.parse_set(inter.to_json())
assert abs(rt.gauge(np.array([[3.0, 4.0]]))[0] - 5.0) < 1e-12
print("sets OK")

# --- laws: gaussian chi2_2, subgaussian alpha=2 == N(0, 2 Sigma), indep cauchy
rng = stream_rng(7, 0)
law = gs.gaussian(np.eye(2))
x = gs.sample(law, 200_000, rng)
r2 = (x * x).sum(axis=1)
# P(chi2_2 <= 1) = 1 - exp(-1/2)
assert abs((r2 <= 1.0).mean() - (1 - math.exp(-0.5))) < 5e-3

law2 = gs.stable_subgaussian(2.0, np.eye(1))
y = gs.sample(law2, 400_000, stream_rng(7, 1))
assert abs(y.var() - 2.0) < 0.02, y.var()

cau = gs.stable_indep(1.0, [1.0])
z = gs.sample(cau, 400_000, stream_rng(7, 2))
assert abs(np.quantile(z, 0.75) - 1.0) < 0.02  # Cauchy Q3 = tan(pi/4) = 1
rt = gs.parse_law(law2.describe())
assert rt.kind == law2.kind and rt.alpha == law2.alpha
print("laws OK")

# --- small_ball oracle: GAUSSIAN(I2), euclidean ball, P = 1 - exp(-t^2/2)
est = gs.small_ball(gs.gaussian(np.eye(2)), gs.euclidean_ball(2),
                    radii=(0.25, 0.5, 1.0, 2.0), n_samples=10**6, seed=3)
for t, p, (lo, hi) in zip(est.radii, est.estimates, est.ci):
    truth = 1.0 - math.exp(-t * t / 2.0)
    assert lo <= truth <= hi, (t, p, truth, lo, hi)
    assert abs(p - truth) < 4 * math.sqrt(truth * (1 - truth) / est.sample_count) * 1.5
print("small_ball chi2 oracle OK", [round(v, 5) for v in est.estimates])

# determinism across threads
est2 = gs.small_ball(gs.gaussian(np.eye(2)), gs.euclidean_ball(2),
                     radii=(0.25, 0.5, 1.0, 2.0), n_samples=10**6, seed=3, threads=4)
assert est.estimates == est2.estimates
print("threads determinism OK")

# --- anderson shift
rep = gs.anderson_shift_check(gs.gaussian(np.eye(2)), gs.euclidean_ball(2),
                              n_samples=2 * 10**5, seed=5)
assert rep["all_hold"], rep
print("anderson OK", rep["centered"], [r["estimate"] for r in rep["rows"]])

# --- kanter: alpha=2, kappa=0.5, ball with nu(B) = 1 - exp(-1/2)
rep = gs.kanter_bound_check(gs.gaussian(np.eye(2)), gs.euclidean_ball(2),
                            kappa_grid=[0.25, 0.5, 1.0], n_samples=2 * 10**5, seed=1)
assert rep["all_hold"], rep
row = [r for r in rep["rows"] if r["kappa"] == 0.5 and r["shift_norm"] == 0.0][0]
truth = 1.0 - math.exp(-0.125)
formula = 1.5 * 0.5 / math.sqrt(math.exp(-0.5))
print("kanter est", round(row["estimate"], 5), "truth", round(truth, 5),
      "bound", round(row["bound"], 5), "formula", round(formula, 5))
assert abs(row["estimate"] - truth) < 5e-3
assert abs(row["bound"] - 1.5 * 0.5 / math.sqrt(1 - rep["nu_B"])) < 1e-12

# --- regularity: R(0.5) = 6 sqrt(2), rescale to ~0.4
rep = gs.regularity_check(gs.gaussian(np.eye(2)), gs.euclidean_ball(2),
                          b=0.5, n_samples=2 * 10**5, seed=2)
assert abs(rep["rate_constant"] - 6 * math.sqrt(2)) < 1e-12
assert rep["verdict"] == "holds", rep
assert abs(rep["reference_mass"] - 0.4) < 0.01, rep["reference_mass"]
# chi2_2 near 0: nu(tB) ~ c t^2 so fit ~ 2... on (0.05, 1] with mass ~0.4 scale
print("regularity OK ref", round(rep["reference_mass"], 4),
      "expfit", round(rep["exponent_fit"], 3), "escalated", rep["escalated"])

# alpha = 1 subgaussian regularity: exponent near alpha/2 = 0.5 at small t
rep = gs.regularity_check(gs.stable_subgaussian(1.0, np.eye(2)),
                          gs.euclidean_ball(2), b=0.5, n_samples=2 * 10**5, seed=2)
assert rep["verdict"] == "holds", [r for r in rep["rows"] if not r["holds"]]
print("regularity alpha=1 OK expfit", round(rep["exponent_fit"], 3))

# --- correlation: orthogonal slabs are exactly independent (diff ~ 0)
s1 = gs.slab([1.0, 0.0], 1.0)
s2 = gs.slab([0.0, 1.0], 1.0)
rep = gs.correlation_check(gs.gaussian(np.eye(2)), [s1, s2],
                           n_samples=2 * 10**5, seed=4)
assert rep["holds"] and rep["must_hold"], rep
assert abs(rep["difference"]) < 6 * rep["stderr"] + 1e-3
# correlated gaussian, parallel-ish slabs: strict positive diff
rep2 = gs.correlation_check(gs.gaussian(np.array([[1.0, 0.9], [0.9, 1.0]])),
                            [s1, s2], n_samples=2 * 10**5, seed=4)
assert rep2["holds"] and rep2["difference"] > 0, rep2
print("correlation OK", rep["difference"], rep2["difference"])

# --- slepian: L=1 ratio exactly 1 statistically; identical sets ratio ~ 1
rep = gs.slepian_sqrt2_check(np.eye(2), [gs.euclidean_ball(2)],
                             n_samples=2 * 10**5, seed=6)
assert rep["holds"] and abs(rep["ratio"] - 1.0) < 0.01, rep
rep = gs.slepian_sqrt2_check(np.eye(3),
                             [gs.euclidean_ball(3), gs.lpball(float("inf"), 1.0, 3)],
                             n_samples=2 * 10**5, seed=6)
assert rep["holds"], rep
print("slepian OK ratio", round(rep["ratio"], 4))

# --- hyp62 profile: report-only, ratio near 1 for L=1
rep = gs.shared_vs_independent_min_profile(np.eye(2), [gs.euclidean_ball(2)],
                                           n_grid=(1, 4, 16), n_samples=10**5,
                                           seed=8)
assert rep["asserted"] is False
for r in rep["rows"]:
    assert abs(r["ratio"] - 1.0) < 6 * r["ratio_stderr"] + 0.02, r
print("profile OK", [round(r["ratio"], 3) for r in rep["rows"]])

# --- integral72: 1-dim gaussian, ratio -> 1/2 as t -> 0, certified r < 1
rep = gs.integrated_small_ball_check(gs.gaussian(np.eye(1)), gs.lpball(2, 1.0, 1),
                                     b=0.5, n_samples=2 * 10**5, seed=9)
assert rep["holds"], rep
assert rep["constants"] is not None and rep["r_fit"] < 1.0
small_t = rep["rows"][0]
assert abs(small_t["ratio"] - 0.5) < 0.02, small_t
assert rep["power_rate_all_hold"], rep
d, R, beta = rep["constants"]["delta"], rep["constants"]["R"], rep["constants"]["beta"]
assert abs(d - (1 - math.sqrt(rep["r_fit"]))) < 1e-12
print("integral OK r_fit", round(rep["r_fit"], 4), "R", round(R, 3), "beta", round(beta, 3))

print("ALL GAUSS_STABLE SMOKE OK")
