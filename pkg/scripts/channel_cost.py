#!/usr/bin/env python3
"""Channel-protocol sweep: acceptance, outcome frequency, and cost per angle.

The acceptance rate should sit at 1/2 independent of the axes, the +b
frequency at (1 + cos(angle))/2, and the empirical cost at 2 bits per
accepted round.
"""

import argparse
import math

from mdhv import channel
from mdhv.quantum import BlochVector


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--accepted", type=int, default=100_000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--step", type=int, default=30)
    args = ap.parse_args()

    a = BlochVector(0.0, 0.0, 1.0)
    info = channel.mutual_information_report()
    print(f"# I(lambda:a) = {info.mutual_information:.6f} nats = "
          f"{info.mutual_information / math.log(2.0):.6f} bits")
    print(f"{'angle':>6} {'acceptance':>11} {'freq(+b)':>9} {'expected':>9} {'cost_bits':>10}")
    for k, deg in enumerate(range(0, 181, args.step)):
        b = BlochVector.from_polar(math.radians(deg), 0.0)
        t = channel.run_channel(a, b, args.accepted, args.seed + k)
        expected = (1.0 + math.cos(math.radians(deg))) / 2.0
        print(
            f"{deg:6d} {t.acceptance_rate():11.5f} "
            f"{t.outcome_frequencies()['+b']:9.5f} {expected:9.5f} "
            f"{channel.communication_cost(t):10.5f}"
        )


if __name__ == "__main__":
    main()
