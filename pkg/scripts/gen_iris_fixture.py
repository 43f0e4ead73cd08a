"""Regenerate tests/fixtures/iris.csv from scikit-learn.

scikit-learn ships Fisher's corrected measurements; the classic UCI
distribution of the file differs in rows 35 and 38 (1-indexed), so those
two rows are patched back to the UCI values. Output matches the widely
mirrored headered iris.csv: quoted headers, one-decimal numbers, quoted
variety names.
"""

from pathlib import Path

from sklearn.datasets import load_iris

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "iris.csv"

HEADERS = ["sepal.length", "sepal.width", "petal.length", "petal.width", "variety"]
VARIETIES = {0: "Setosa", 1: "Versicolor", 2: "Virginica"}

# index -> (column, UCI value)
UCI_PATCHES = {
    34: {3: 0.1},
    37: {1: 3.1, 2: 1.5},
}


def main() -> None:
    bundle = load_iris()
    lines = [",".join(f'"{h}"' for h in HEADERS)]
    for i, (row, target) in enumerate(zip(bundle.data, bundle.target)):
        values = list(row)
        for col, uci_value in UCI_PATCHES.get(i, {}).items():
            values[col] = uci_value
        cells = [f"{v:.1f}" for v in values] + [f'"{VARIETIES[int(target)]}"']
        lines.append(",".join(cells))
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(lines) - 1} rows)")


if __name__ == "__main__":
    main()
