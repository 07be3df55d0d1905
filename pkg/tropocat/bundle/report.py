import os

import pandas as pd

from tropocat.bundle.utils import make_dir

HOMOLOGY_COLUMNS = ["degree", "dim C", "rank ∂", "Betti"]


def homology2pandas(degrees, dims, ranks, bettis):
    # One row per degree
    rows = [{"degree": p, "dim C": d, "rank ∂": r, "Betti": b} for p, d, r, b in zip(degrees, dims, ranks, bettis)]
    return pd.DataFrame(rows, columns=HOMOLOGY_COLUMNS)


def compare2pandas(df_delta, df_gc):
    """Joins both pipelines through the dictionary: simplicial degree e-1 <-> edge-degree e."""
    df_left = df_delta[["degree", "Betti"]].rename(columns={"degree": "delta degree", "Betti": "delta Betti"})
    df_left["edge degree"] = df_left["delta degree"] + 1
    df_right = df_gc[["degree", "Betti"]].rename(columns={"degree": "edge degree", "Betti": "gc Betti"})

    df = pd.merge(df_left, df_right, on="edge degree", how="outer").sort_values("edge degree")
    df["delta degree"] = df["edge degree"] - 1
    df = df.fillna(0)
    for col in ["edge degree", "delta degree", "delta Betti", "gc Betti"]:
        df[col] = df[col].astype(int)
    df["equal"] = df["delta Betti"] == df["gc Betti"]
    return df[["edge degree", "delta degree", "delta Betti", "gc Betti", "equal"]].reset_index(drop=True)


def table2csv(df):
    return df.to_csv(index=False, lineterminator="\n")


def save_table(df, savepath):
    dirname = os.path.dirname(savepath)
    if dirname:
        make_dir(dirname)
    df.to_csv(savepath, index=False, lineterminator="\n")
    return savepath
