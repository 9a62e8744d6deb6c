#!/usr/bin/env python3
"""Materialize MovieLens-100k as a bipartite edge list.

GroupLens is not always reachable from build machines, so the ratings table is
pulled from the copy bundled inside the pytorch-widedeep wheel on PyPI.

Writes:
  <out>/ml100k.edges   "u<user>\ti<movie>\t<rating>" one line per rating
  <out>/ml100k.parts   "<node>\tU|I" partition sidecar
"""
import argparse
import glob
import io
import os
import subprocess
import sys
import tempfile
import zipfile

import pandas as pd

WHEEL = "pytorch-widedeep==1.7.0"
MEMBER = "pytorch_widedeep/datasets/data/MovieLens100k_data.parquet.brotli"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    with tempfile.TemporaryDirectory() as tmp:
        subprocess.check_call([sys.executable, "-m", "pip", "download", "--no-deps", "-q", "-d", tmp, WHEEL])
        wheel = glob.glob(os.path.join(tmp, "*.whl"))[0]
        with zipfile.ZipFile(wheel) as z:
            df = pd.read_parquet(io.BytesIO(z.read(MEMBER)))

    if len(df) != 100000:
        sys.exit(f"unexpected row count {len(df)}")

    edges = os.path.join(args.out, "ml100k.edges")
    with open(edges, "w") as f:
        f.write("# MovieLens-100k user-item ratings (user, movie, rating)\n")
        for u, m, r in zip(df.user_id, df.movie_id, df.rating):
            f.write(f"u{u}\ti{m}\t{r}\n")
    with open(os.path.join(args.out, "ml100k.parts"), "w") as f:
        for u in sorted(df.user_id.unique()):
            f.write(f"u{u}\tU\n")
        for m in sorted(df.movie_id.unique()):
            f.write(f"i{m}\tI\n")
    print(f"wrote {edges}: {len(df)} edges, {df.user_id.nunique()} users, {df.movie_id.nunique()} items")


if __name__ == "__main__":
    main()
