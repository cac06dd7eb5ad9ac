"""Print the headline quantities for every reference measure.

    python scripts/fixture_survey.py [--order N]
"""

import argparse
import math

import numpy as np

from otpuc.diagnostics import baxter_report, szego_integral, szego_partial_products, strong_szego_sums
from otpuc.diagnostics import szego_function_coefficients
from otpuc.errors import SzegoConditionError
from otpuc.fixtures import all_measures
from otpuc.measures import moments
from otpuc.opuc import verblunsky_from_moments
from otpuc.otp import otp_coefficients


def survey(N: int) -> None:
    for name, m in all_measures().items():
        n = min(N, 8) if name == "ger" else N  # the gapped measure is ill-conditioned
        c = moments(m, 2 * n + 2)
        lad = verblunsky_from_moments(c, 2 * n)
        k = otp_coefficients(c, n)
        S = szego_integral(m)
        try:
            L = szego_function_coefficients(m, n)
        except SzegoConditionError:
            L = None
        prod = szego_partial_products(k, n).scalars["product"]
        bax = baxter_report(c, k, n)
        ss = strong_szego_sums(k, L, n)
        print(f"{name:6s} N={n:2d}  S={S: .6f}  exp(S)={math.exp(S) if math.isfinite(S) else 0.0:.6f}  "
              f"K_N={prod:.6f}  Σ|α|={bax.scalars['even_sum'] + bax.scalars['odd_sum']:.4f} ({bax.verdicts['otp_sum']})  "
              f"S_α={ss.scalars['S_alpha']:.4f} ({ss.verdicts['S_alpha']})")
        print("        |α_0..7| =", np.array2string(np.abs(lad.alphas[:8]), precision=4))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--order", type=int, default=16)
    survey(ap.parse_args().order)
