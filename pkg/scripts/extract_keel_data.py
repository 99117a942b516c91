"""Rebuild data/vowel.csv and data/pendigits.csv from the keel-ds wheel.

    pip download keel-ds==0.2.5 --no-deps -d /tmp/keel
    python scripts/extract_keel_data.py /tmp/keel/keel_ds-0.2.5-py3-none-any.whl

Vowel: all 990 rows, the ten acoustic features and the class (the three
leading bookkeeping columns are dropped).

Pendigits: KEEL ships the merged 10,992-row set.  The 3,498-row test
partition cannot be recovered from it, so a stratified 3,498-row sample is
drawn with seed 0 (per-class sizes by largest remainder).
"""
import argparse
import zipfile
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
PENDIGITS_SIZE = 3498


def _rows(wheel: zipfile.ZipFile, member: str) -> np.ndarray:
    text = wheel.read(member).decode()
    return np.array([[float(v) for v in line.split(",")] for line in text.splitlines() if line.strip()])


def _stratified_sample(labels: np.ndarray, size: int, seed: int) -> np.ndarray:
    classes, counts = np.unique(labels, return_counts=True)
    exact = counts * size / counts.sum()
    take = np.floor(exact).astype(int)
    for i in np.argsort(-(exact - take), kind="stable")[: size - take.sum()]:
        take[i] += 1
    rng = np.random.default_rng(seed)
    picked = [rng.choice(np.flatnonzero(labels == c), size=t, replace=False) for c, t in zip(classes, take)]
    return np.sort(np.concatenate(picked))


def _write(path: Path, table: np.ndarray) -> None:
    def fmt(v):
        return str(int(v)) if float(v).is_integer() else repr(float(v))

    path.write_text("".join(",".join(fmt(v) for v in row) + "\n" for row in table))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("wheel")
    parser.add_argument("--out", default=str(ROOT / "data"))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with zipfile.ZipFile(args.wheel) as wheel:
        vowel = _rows(wheel, "keel_ds/data/balanced/raw/vowel.dat")[:, 3:]
        pen = _rows(wheel, "keel_ds/data/balanced/raw/penbased.dat")
    _write(out / "vowel.csv", vowel)
    _write(out / "pendigits.csv", pen[_stratified_sample(pen[:, -1], PENDIGITS_SIZE, seed=0)])
    print(f"vowel: {vowel.shape}, pendigits: ({PENDIGITS_SIZE}, {pen.shape[1]})")


if __name__ == "__main__":
    main()
