"""Write the DIMACS fixtures used by the acceptance tests into instances/."""

from pathlib import Path

from eqcol.graph import mycielski_graph, queen_graph, write_dimacs

OUT = Path(__file__).resolve().parent.parent / "instances"

INSTANCES = {
    "queen8_8": (queen_graph(8), ["queen8_8: queen moves on an 8x8 board, squares row-major"]),
    "myciel5": (mycielski_graph(5), ["myciel5: Mycielski graph, triangle-free, chromatic number 6"]),
}

if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, (g, comments) in INSTANCES.items():
        path = OUT / f"{name}.col"
        path.write_text(write_dimacs(g, comments))
        print(f"{path}: n={g.n} m={g.m}")
