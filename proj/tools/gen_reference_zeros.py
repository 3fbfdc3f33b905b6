#!/usr/bin/env python3
"""Write the first N zeta zero ordinates (mpmath, 30 digits) as a plain_list file."""
import argparse
import mpmath as mp

parser = argparse.ArgumentParser()
parser.add_argument("--count", type=int, default=1000)
parser.add_argument("--out", default="tests/data/zeros_1000.txt")
args = parser.parse_args()

mp.mp.dps = 30
with open(args.out, "w") as f:
    f.write("# first %d ordinates of zeta zeros on the critical line (mpmath zetazero)\n" % args.count)
    for k in range(1, args.count + 1):
        f.write(mp.nstr(mp.im(mp.zetazero(k)), 22, min_fixed=0, max_fixed=10) + "\n")
