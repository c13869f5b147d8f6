"""Train the bundled models on the synthetic corpus and write them to the package data directory."""

import argparse
from pathlib import Path

from tempus.corpus import generate_corpus
from tempus.pipeline import BUNDLED_MODEL_DIR, train_models


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--docs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--epochs", type=int, default=10)
    ap.add_argument("--out", type=Path, default=BUNDLED_MODEL_DIR)
    args = ap.parse_args(argv)
    records = list(generate_corpus(args.docs, seed=args.seed))
    models = train_models(records, epochs=args.epochs, seed=args.seed)
    models.save(args.out)
    print(f"wrote models for {len(records)} documents to {args.out}")


if __name__ == "__main__":
    main()
