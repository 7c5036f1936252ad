"""Iterated powersets, hyper sets and their superhyper lift.

Run with: python demos/hyper_tower.py
"""

from __future__ import annotations

from uncertain_lattice import hyperlift as hl
from uncertain_lattice._common import CapExceeded


def main() -> None:
    for n in range(3):
        tower = hl.iterated_powerset(["a", "b"], n)
        print(f"level {n}: {len(tower.elements)} elements, largest {max(map(hl.encode, tower.elements), key=len)}")
    try:
        hl.iterated_powerset(["a", "b", "c"], 3)
    except CapExceeded as err:
        print("level 3 over three atoms:", err)

    # each element carries several candidate degrees
    h = hl.HyperGradedSet("Neutrosophic", ["x", "y"], {"x": {(0.7, 0.2, 0.1), (0.6, 0.3, 0.3)}, "y": {(0.2, 0.5, 0.9)}})
    print("\nas hyperfuzzy:", {k: sorted(v) for k, v in hl.hyperneutro_to_hyperfuzzy(h).grades.items()})

    lifted = hl.lift_pointwise(h)
    for key in sorted(lifted.grades, key=hl.encode):
        print(f"  {hl.encode(key):8} {len(lifted.grades[key])} triple(s)")
    assert hl.restrict_to_singletons(lifted) == h
    print("restricting the lift to singletons gives back the original set")

    vague = hl.superneutro_to_supervague(lifted)
    print("vague pairs for {x,y}:", sorted(vague.grades[frozenset(["x", "y"])]))


if __name__ == "__main__":
    main()
