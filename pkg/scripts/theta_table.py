"""Is the Sierpinski system's algebra isomorphic to the opens of the
Sierpinski space?  One row per variety and test algebra."""

from affsys.catalog import boolean, chain, diamond, drastic_chain, lukasiewicz, two
from affsys.systems import theta_comparison

ROWS = [
    ("set", two("set")),
    ("supsl", two("supsl")),
    ("supsl", chain(3, "supsl")),
    ("frame", two()),
    ("frame", chain(3)),
    ("frame", diamond("frame")),
    ("cbalg", two("cbalg")),
    ("cbalg", boolean(2, "cbalg")),
    ("uquant", lukasiewicz(3)),
    ("uquant", lukasiewicz(4)),
    ("uquant", drastic_chain(4)),
    ("uquant", chain(3, "uquant")),
]


def main() -> None:
    print(f"{'variety':8} {'L':28} {'iso':5} {'morphism ok':12} witness")
    for variety, L in ROWS:
        rec = theta_comparison(L)
        name = "{" + ",".join(L.names) + "}"
        print(f"{variety:8} {name:28} {str(rec.is_iso):5} {str(bool(rec.prop22)):12} {rec.witness or ''}")


if __name__ == "__main__":
    main()
