"""Approximate a target set from indistinguishability classes and from soft sets.

Run with: python demos/rough_sets.py
"""

from __future__ import annotations

from uncertain_lattice import rough as ro
from uncertain_lattice.soft import HyperSoftSet, SoftSet


def fmt(xs) -> str:
    return "{" + ", ".join(sorted(map(str, xs))) + "}"


def main() -> None:
    # patients grouped by identical symptom profiles
    clinic = ro.Partition(["p1", "p2", "p3", "p4", "p5", "p6"], [{"p1", "p2"}, {"p3", "p4"}, {"p5", "p6"}])
    flu = {"p1", "p2", "p3"}
    pair = ro.rough_approx(clinic, flu)
    reg = ro.regions(pair, clinic.universe)
    print("target  ", fmt(flu))
    print("lower   ", fmt(pair.lower), "(certainly flu)")
    print("upper   ", fmt(pair.upper), "(possibly flu)")
    print("boundary", fmt(reg.bnd), "definable:", reg.definable)

    # the same idea with a soft set: parameters pick out granules
    houses = SoftSet("abcde", {"cheap": {"a", "b"}, "wooden": {"b", "c", "d"}, "green": {"e"}})
    pair = ro.soft_rough_approx(houses, {"a", "b", "e"})
    print("\nsoft lower", fmt(pair.lower), " soft upper", fmt(pair.upper))

    # a hypersoft set approximates each attribute combination separately
    hs = HyperSoftSet(clinic.universe, (("young", "old"), ("city", "rural")),
                      {("young", "city"): {"p1", "p2", "p3"}, ("old", "rural"): {"p5"}})
    for key, p in ro.hyperrough(hs, clinic).items():
        print(f"{key}: lower {fmt(p.lower)} upper {fmt(p.upper)}")


if __name__ == "__main__":
    main()
