"""Rerun the convention searches and print the winners.

    python3 scripts/calibrate.py

Each search tries a small list of candidate signs and factors and keeps the
ones under which the relevant identities hold exactly.
"""

import time

from antialg import geometry, representations, superization


def show(name, fn):
    t = time.perf_counter()
    out = fn()
    print("%-14s %s  (%.1fs)" % (name, out, time.perf_counter() - t))


def main():
    show("superization", superization.calibrate_superization)
    show("FRep", representations.calibrate_FRep)
    show("contact", representations.calibrate_contact)
    show("geometry", lambda: geometry.calibrate_geometry()[0])


if __name__ == "__main__":
    main()
