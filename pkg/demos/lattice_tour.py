"""Walk a fuzzy set up the generalization lattice and back down by reduction.

Run with: python demos/lattice_tour.py
"""

from __future__ import annotations

from uncertain_lattice.grades import Kind, graded_set
from uncertain_lattice.lattice import convert, embedding_path, hierarchy_check, is_generalization, verify_lattice


def show(title: str, s) -> None:
    print(f"{title}:")
    for x in s.universe:
        g = s.grades[x]
        print(f"  {x}: {g.kind.value} {g.values}")


def main() -> None:
    temps = graded_set(Kind.FUZZY, {"cold": 0.1, "mild": 0.6, "hot": 0.95})
    show("start", temps)

    # Fuzzy sits below Quadripartitioned, so this is an embedding
    print("\nFuzzy <= Quadripartitioned?", is_generalization("Fuzzy", "Quadripartitioned"))
    print("path:", " ; ".join(e.id for e in embedding_path("Fuzzy", "Quadripartitioned")))
    quad = convert(temps, "Quadripartitioned", source="Fuzzy")
    show("embedded", quad)

    # and this direction only exists as a reduction
    back = convert(quad, "Neutrosophic", source="Quadripartitioned")
    show("reduced to neutrosophic", back)

    print("\nevery kind a crisp set reaches:")
    crisp = graded_set(Kind.CRISP, {"a": 1, "b": 0})
    for kind, status in hierarchy_check(crisp, "Crisp").items():
        print(f"  {status:>3}  {kind}")

    report = verify_lattice(samples=25, seed=1)
    failed = [r.edge_id for r in report.results if r.passed < r.tested]
    print(f"\nspot check: {len(report.results)} edges, 25 samples each, failures: {failed or 'none'}")


if __name__ == "__main__":
    main()
