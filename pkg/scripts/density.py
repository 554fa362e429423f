"""How close |G| gets to n_k(G)^2 across the corpus.

For each group, the k in 1..exp(G) minimizing |G| / n_k^2 (k with n_k = 0
skipped), sorted so the tightest groups come first.

    python3 scripts/density.py --max-order 100 --top 25
"""

import argparse
from fractions import Fraction

from notpowers.families import builtin_corpus
from notpowers.powers import count_non_powers, exponent


def tightest(G):
    best = None
    for k in range(1, exponent(G) + 1):
        n = count_non_powers(G, k)
        if n and (best is None or Fraction(G.order, n * n) > best[0]):
            best = (Fraction(G.order, n * n), k, n)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=100)
    ap.add_argument("--top", type=int, default=20)
    args = ap.parse_args()

    rows = []
    for G in builtin_corpus(args.max_order):
        t = tightest(G)
        if t:
            rows.append((t[0], G.label, G.order, t[1], t[2]))
    rows.sort(key=lambda r: (-r[0], r[2], r[1]))
    print(f"{'group':36} {'|G|':>5} {'k':>4} {'n_k':>5} {'|G|/n^2':>10}")
    for ratio, label, order, k, n in rows[: args.top]:
        print(f"{label:36} {order:5} {k:4} {n:5} {float(ratio):10.4f}")


if __name__ == "__main__":
    main()
