#!/usr/bin/env python3
# Copyright 2026 The NDLS Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Converts the public Planetoid pickles into the ndls on-disk layout.

Input: a directory holding ind.<name>.{x,y,tx,ty,allx,ally,graph,test.index}
as distributed with the standard Planetoid splits. Output, per dataset:

    <out>/<name>/edges.txt      "u v" per undirected edge
    <out>/<name>/features.bin   u32 n, u32 f, then float32 row-major
    <out>/<name>/labels.txt     one class per line, -1 for unlabeled
    <out>/<name>/{train,val,test}.txt
    <out>/<name>/config.json

Splits are the standard ones: the first |y| nodes train, the next 500
validate, test.index tests. Citeseer's isolated test nodes get zero feature
rows and label -1 so ids stay aligned with test.index.

Example:
    python3 tools/planetoid_to_ndls.py --raw data/planetoid --out data/ndls cora citeseer pubmed
    NDLS_PLANETOID_DIR=data/ndls ./build/tests/acceptance/ndls_acceptance
"""

import argparse
import json
import pathlib
import pickle
import struct
import sys

import numpy as np
import scipy.sparse as sp

VAL_SIZE = 500


def load_pickle(path):
    with open(path, "rb") as f:
        return pickle.load(f, encoding="latin1")


def dense(m):
    return m.toarray() if sp.issparse(m) else np.asarray(m)


def convert(raw, out, name, normalize):
    parts = {k: load_pickle(raw / f"ind.{name}.{k}")
             for k in ("x", "y", "tx", "ty", "allx", "ally", "graph")}
    test_index = [int(line) for line in open(raw / f"ind.{name}.test.index")]
    test_sorted = np.sort(test_index)

    tx, ty = dense(parts["tx"]), dense(parts["ty"])
    if name == "citeseer":
        full = range(test_sorted.min(), test_sorted.max() + 1)
        tx_ext = np.zeros((len(full), tx.shape[1]))
        tx_ext[test_sorted - test_sorted.min()] = tx
        ty_ext = np.zeros((len(full), ty.shape[1]))
        ty_ext[test_sorted - test_sorted.min()] = ty
        tx, ty = tx_ext, ty_ext

    features = np.vstack([dense(parts["allx"]), tx]).astype(np.float64)
    onehot = np.vstack([dense(parts["ally"]), ty])
    features[test_index] = features[test_sorted]
    onehot[test_index] = onehot[test_sorted]

    n = features.shape[0]
    labels = np.where(onehot.sum(axis=1) > 0, onehot.argmax(axis=1), -1)
    if normalize:
        sums = features.sum(axis=1, keepdims=True)
        sums[sums == 0] = 1.0
        features /= sums

    edges = set()
    for u, nbrs in parts["graph"].items():
        for v in nbrs:
            if u != v and u < n and v < n:
                edges.add((min(u, v), max(u, v)))

    num_train = dense(parts["y"]).shape[0]
    train = list(range(num_train))
    val = list(range(num_train, num_train + VAL_SIZE))
    test = sorted(i for i in test_index if labels[i] >= 0)

    dest = out / name
    dest.mkdir(parents=True, exist_ok=True)
    with open(dest / "edges.txt", "w") as f:
        f.writelines(f"{u} {v}\n" for u, v in sorted(edges))
    with open(dest / "features.bin", "wb") as f:
        f.write(struct.pack("<II", n, features.shape[1]))
        f.write(features.astype("<f4").tobytes(order="C"))
    with open(dest / "labels.txt", "w") as f:
        f.writelines(f"{int(c)}\n" for c in labels)
    for split, ids in (("train", train), ("val", val), ("test", test)):
        with open(dest / f"{split}.txt", "w") as f:
            f.writelines(f"{i}\n" for i in ids)
    config = {
        "edges": "edges.txt",
        "features": "features.bin",
        "labels": "labels.txt",
        "splits": {"train": "train.txt", "val": "val.txt", "test": "test.txt"},
    }
    with open(dest / "config.json", "w") as f:
        json.dump(config, f, indent=2)
    print(f"{name}: {n} nodes, {len(edges)} edges, {features.shape[1]} features, "
          f"{labels.max() + 1} classes, train/val/test {len(train)}/{len(val)}/{len(test)}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--raw", type=pathlib.Path, required=True,
                        help="directory with the ind.<name>.* files")
    parser.add_argument("--out", type=pathlib.Path, required=True)
    parser.add_argument("--no-normalize", action="store_true",
                        help="keep raw features instead of row-normalizing")
    parser.add_argument("names", nargs="+", choices=["cora", "citeseer", "pubmed"])
    args = parser.parse_args()
    for name in args.names:
        try:
            convert(args.raw, args.out, name, not args.no_normalize)
        except FileNotFoundError as e:
            print(f"{name}: missing input {e.filename}", file=sys.stderr)
            return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
