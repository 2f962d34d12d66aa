"""Produce the two reference risk-curve CSVs (risk vs eta, risk vs 1/sigma2).

Writes demos/output/curve_eta.csv and demos/output/curve_inv_sigma2.csv
with the schema `axis_value,oracle,supervised_full,supervised_labeled,
unsupervised,semi_supervised,q_star`.  These files are what the plot
frontend consumes; the same artifacts come out of

    sslbayes curve --axis eta --grid-start 0.005 --grid-stop 1 \
        --grid-points 200 --alpha 1 --sigma2 0.9 --out curve_eta.csv

Run:  python demos/figure_curves.py
"""

from pathlib import Path

import numpy as np

from sslbayes.harness import curve_csv
from sslbayes.risks import SweepSpec

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

# Left panel: risk versus fraction of labeled data at fixed noise.
eta_spec = SweepSpec(
    axis="eta",
    grid=tuple(np.linspace(0.005, 1.0, 200)),
    alpha=1.0,
    sigma2=0.9,
)
eta_path = out_dir / "curve_eta.csv"
eta_path.write_text(curve_csv(eta_spec), newline="")
print(f"wrote {eta_path} ({len(eta_spec.grid)} points, alpha=1, sigma2=0.9)")

# Right panel: risk versus inverse noise at a fixed 20% labeled fraction.
# The unsupervised column sits at chance until 1/sigma2 crosses 1, the
# spectral phase transition at alpha = 1.
s2_spec = SweepSpec(
    axis="inv_sigma2",
    grid=tuple(np.linspace(0.1, 5.0, 200)),
    alpha=1.0,
    eta=0.2,
)
s2_path = out_dir / "curve_inv_sigma2.csv"
s2_path.write_text(curve_csv(s2_spec), newline="")
print(f"wrote {s2_path} ({len(s2_spec.grid)} points, alpha=1, eta=0.2)")

# A quick look at the transition in the second file.
rows = s2_path.read_text().strip().split("\n")[1:]
print()
print("unsupervised risk around the spectral transition (1/sigma2 = 1):")
for line in rows:
    vals = [float(x) for x in line.split(",")]
    if 0.85 <= vals[0] <= 1.25:
        print(f"  1/sigma2 = {vals[0]:.3f}   unsupervised = {vals[4]:.6f}")
