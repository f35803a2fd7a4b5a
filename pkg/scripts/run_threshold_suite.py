#!/usr/bin/env python3
"""Locate every named usefulness/UQT threshold by bisection and compare
against the analytic values."""

import numpy as np

from uqtchan import explorer

CASES = [
    ("werner", "p", (0.3, 0.9), "useful", {}, 0.5, "Werner Bell weight"),
    ("gadc", "gamma", (0.1, 1.0), "useful", {"N": 0.7},
     2.0 * (np.sqrt(2.0) - 1.0), "amplitude-damping loss"),
    ("depolarizing_m", "p", (0.1, 0.7), "useful", {}, 0.5, "depolarizing weight"),
    ("lambda_tilde_nu", "C", (0.4, 0.7), "uqt", {},
     (np.sqrt(17.0) - 1.0) / 6.0, "matched concurrence, four-operator family"),
    ("lambda_star_nu", "C", (0.3, 0.6), "uqt", {},
     np.sqrt(5.0 - 2.0 * np.sqrt(3.0)) / 3.0, "matched concurrence, damping family"),
]


def main():
    print(f"{'family':17s} {'param':6s} {'predicate':9s} {'found':>12s} "
          f"{'analytic':>12s} {'error':>9s}")
    for family, param, bracket, predicate, fixed, analytic, note in CASES:
        res = explorer.find_threshold(family, param, bracket, predicate,
                                      tol=1e-8, fixed=fixed)
        err = abs(res.critical_value - analytic)
        print(f"{family:17s} {param:6s} {predicate:9s} {res.critical_value:12.8f} "
              f"{analytic:12.8f} {err:9.1e}   ({note})")


if __name__ == "__main__":
    main()
