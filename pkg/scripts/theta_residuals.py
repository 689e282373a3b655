"""Residuals of the theta functional equation versus truncation depth.

Shows how fast the sampled residual of s(z + gamma) = e(gamma, z) s(z)
saturates at roundoff as the series truncation grows, for a few moduli
and characteristics. Useful when picking a `terms` value for tori with
small Im tau.
"""

import argparse

import numpy as np

from torusbundles import ThetaCharacteristic, Torus, e_factor, theta_eval, verify_theta_function


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=32)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--terms", type=int, nargs="+", default=[5, 10, 20, 40])
    args = ap.parse_args()

    taus = [1j, 0.3 + 1.1j, 0.1 + 0.35j]
    xis = [ThetaCharacteristic(), ThetaCharacteristic(0.5, 0.0), ThetaCharacteristic(0.25, 0.3)]

    header = "tau".ljust(12) + "xi".ljust(14) + "".join(f"terms={t}".rjust(14) for t in args.terms)
    print(header)
    for tau in taus:
        torus = Torus(tau)
        for xi in xis:
            row = f"{tau}".ljust(12) + f"({xi.a},{xi.b})".ljust(14)
            for terms in args.terms:
                report = verify_theta_function(
                    torus,
                    lambda p, n, z: e_factor(torus, xi, p, n, z),
                    lambda z, _terms=terms: theta_eval(torus, xi, z, terms=_terms),
                    samples=args.samples,
                    rng=np.random.default_rng(args.seed),
                )
                row += f"{report.max_residual:>14.3e}"
            print(row)
    print("\nresiduals are scaled by 1 + max |value|; the plateau is double precision")


if __name__ == "__main__":
    main()
