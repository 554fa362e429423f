"""Write every builtin corpus group as a Cayley file, for use with `verify --corpus dir:...`.

    python3 scripts/export_corpus.py --max-order 24 out/
"""

import argparse
from pathlib import Path

from notpowers.families import builtin_corpus
from notpowers.io import cayley_text


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("directory", type=Path)
    ap.add_argument("--max-order", type=int, default=24)
    args = ap.parse_args()

    args.directory.mkdir(parents=True, exist_ok=True)
    corpus = builtin_corpus(args.max_order)
    width = len(str(len(corpus)))
    for i, G in enumerate(corpus):
        safe = G.label.replace(":", "_").replace("|", "x").replace(",", "-")
        (args.directory / f"{i:0{width}d}_{safe}.cayley").write_text(cayley_text(G))
    print(f"wrote {len(corpus)} groups to {args.directory}")


if __name__ == "__main__":
    main()
