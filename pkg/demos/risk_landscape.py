"""Walk through the analytic engine at one parameter point.

Evaluates the risk potential, locates its minimizer by the two
independent routes, and prints the five limiting risks with the
information-ordering they must obey.

Run:  python demos/risk_landscape.py
"""

import numpy as np

from sslbayes import (
    ModelParams,
    fixed_point_map,
    mutual_info_limit,
    potential_f,
    potential_f_prime,
    risk_report,
    solve_q_star,
)

params = ModelParams(alpha=1.0, sigma2=0.9, eta=0.2)
print(f"model: alpha={params.alpha}, sigma2={params.sigma2}, eta={params.eta}")
print()

# The potential is strictly convex-like with a single interior minimum.
print("potential landscape f(q):")
for q in (0.0, 0.1, 0.2, 0.3, 0.4, 0.6, 0.8, 0.95):
    marker = " <- min region" if 0.25 < q < 0.4 else ""
    print(f"  f({q:.2f}) = {potential_f(q, params):+.6f}   f'({q:.2f}) = {potential_f_prime(q, params):+.6f}{marker}")
print()

report = solve_q_star(params)
print(f"q* = {report.q_star:.12f}")
print(f"  fixed-point iterations: {report.iterations}")
print(f"  agreement between fixed point and minimization: {report.method_gap:.2e}")
print(f"  overlaps: q_u = {report.overlaps.q_u:.6f}, q_v = {report.overlaps.q_v:.6f}")
print(f"  self-consistency F(q*) - q* = {fixed_point_map(report.q_star, params) - report.q_star:+.2e}")
print(f"  mutual information limit: {mutual_info_limit(params):.6f} nats/sample")
print()

r = risk_report(params)
print("limiting misclassification risks:")
print(f"  oracle (center known)        {r.oracle:.6f}")
print(f"  supervised on all N          {r.supervised_full:.6f}")
print(f"  semi-supervised (labels+all) {r.semi_supervised:.6f}")
print(f"  supervised on labeled only   {r.supervised_labeled:.6f}")
print(f"  unsupervised (no labels)     {r.unsupervised:.6f}")
print()
assert r.oracle <= r.semi_supervised <= min(r.supervised_labeled, r.unsupervised)
print("ordering verified: oracle <= SSL <= min(supervised-labeled, unsupervised)")

# The value of the unlabeled data: gap between labeled-only and SSL.
gain = r.supervised_labeled - r.semi_supervised
print(f"risk reduction bought by the unlabeled data: {gain:.4f}")

# And diminishing returns in eta: the first labels help far more than the last.
etas = np.array([0.01, 0.05, 0.1, 0.2, 0.5, 1.0])
risks = [risk_report(ModelParams(1.0, 0.9, e)).semi_supervised for e in etas]
print()
print("semi-supervised risk along eta (diminishing returns of labels):")
for e, risk in zip(etas, risks):
    print(f"  eta={e:<5g} risk={risk:.6f}")
