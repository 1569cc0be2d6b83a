"""Sweep the condition-number cap for the Loewner-bound and Young suites.

Shows how often the upper bound of the spectral geometric mean is not
applicable as the sampled elements get worse conditioned.

    python3 scripts/bounds_sweep.py --samples 500
"""

import argparse

from jordanmeans.suites import spectral_bounds_suite, young_suite

CAPS = (1.5, 2.0, 3.0, 4.0, 10.0, 30.0, 100.0)


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    print(f"{'cap':>6} {'both':>7} {'n/a':>5} {'lower':>9} {'upper':>9} {'young':>9}")
    for cap in CAPS:
        b = spectral_bounds_suite(seed=args.seed, samples=args.samples, cap=cap)
        y = young_suite(seed=args.seed, samples=max(1, args.samples // 5), cap=cap)
        print(
            f"{cap:6g} {b.notes['both_fraction']:7.1%} {b.notes['not_applicable']:5d} "
            f"{b.check('lower').max_violation:9.1e} {b.check('upper').max_violation:9.1e} {y.max_violation:9.1e}"
        )


if __name__ == "__main__":
    main()
