"""Sizes of n-fold coproducts of small algebras, with timings."""

import time

from affsys.catalog import boolean, chain, diamond, two
from affsys.coproducts import coproduct
from affsys.errors import BudgetExceeded

CASES = [
    ("frame", "3-chain", lambda: chain(3)),
    ("frame", "diamond", lambda: diamond("frame")),
    ("supsl", "2-chain", lambda: chain(2, "supsl")),
    ("supsl", "3-chain", lambda: chain(3, "supsl")),
    ("cbalg", "diamond", lambda: diamond("cbalg")),
    ("cbalg", "2", lambda: two("cbalg")),
    ("set", "2", lambda: two("set")),
    ("frame", "boolean8", lambda: boolean(3, "frame")),
]


def main() -> None:
    for variety, name, make in CASES:
        sizes = []
        for n in (1, 2, 3, 4):
            start = time.perf_counter()
            try:
                size = coproduct(variety, [make()] * n).algebra.n
            except BudgetExceeded:
                size = "cap"
            sizes.append(f"{size} ({time.perf_counter() - start:.2f}s)")
        print(f"{variety:6} {name:9} n=1..4: " + ", ".join(sizes))


if __name__ == "__main__":
    main()
