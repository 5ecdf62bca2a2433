"""Regenerate tests/golden/*.json from the current CLI.

    python3 tests/make_golden.py

Only rerun after a deliberate change to report contents; test_cli.py
compares against these files.
"""

import sys
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"

# name -> (argv, expected exit code)
CASES = {
    "analyze_n23": (["analyze", "catalog:n23"], 0),
    "analyze_footnote": (["analyze", "catalog:footnote-basis"], 0),
    "analyze_sl2": (["analyze", "catalog:sl2"], 0),
    "analyze_h2_weights": (["analyze", "catalog:h2", "--weights", "X1:1,X2:1,Y1:2,Y2:2"], 0),
    "contract_sl2": (["contract", "catalog:sl2"], 0),
    "contract_footnote": (["contract", "catalog:footnote-basis"], 0),
    "contract_h1_line": (["contract", "catalog:h1*abelian:1"], 0),
    "check_system_3": (["check-system", "catalog:n23-system-3"], 0),
    "check_system_4": (["check-system", "catalog:n23-system-4"], 0),
    "check_system_noncommuting": (
        ["check-system", "catalog:n23", "--grading", "1,1,2,3,3", "--op", "X1^2", "--op", "X2^2"],
        2,
    ),
    "check_system_injective": (["check-system", "catalog:abelian:2", "--op", "-i*X1", "--op", "-i*X2"], 0),
    "check_system_not_injective": (["check-system", "catalog:abelian:2", "--op", "-X1^2"], 0),
    "product_n23_n23": (["product", "catalog:n23", "catalog:n23"], 0),
    "product_sl2_line": (["product", "catalog:sl2", "catalog:abelian:1"], 0),
    "catalog_list": (["catalog"], 0),
    "catalog_n23": (["catalog", "n23"], 0),
    "spectrum_plancherel": (["spectrum", "plancherel", "--op", "-X1^2", "--f", "exp(-lambda)"], 0),
    "spectrum_polar": (["spectrum", "polar", "--op", "-X1^2", "--box", "0:1", "--t", "2"], 0),
    "spectrum_kernel": (
        ["spectrum", "kernel", "--op", "-X1^2", "--f", "exp(-lambda)", "--g", "exp(-lambda)", "--heat", "2"],
        0,
    ),
    "spectrum_growth": (["spectrum", "growth", "--op", "-X1^2"], 0),
    "spectrum_sample": (
        ["spectrum", "sample", "--op", "-X1^2", "--op", "-X2^2", "--samples", "10000", "--radius", "2",
         "--edges", "0:4:4"],
        0,
    ),
    "spectrum_pushforward": (
        ["spectrum", "pushforward", "--op", "-i*X1", "--P", "lambda^2", "--ref-op", "-X1^2",
         "--samples", "20000", "--radius", "2", "--ref-radius", "2.5", "--edges", "0:4:8", "--tol", "0.05"],
        0,
    ),
    "error_syntax": (["analyze", "catalog:n23", "--basis", "X1,(X2", "--weights", "1,1"], 3),
    "error_unknown": (["analyze", "catalog:nope"], 3),
    "error_nonabelian": (["spectrum", "growth", "--algebra", "catalog:h1", "--op", "-X^2"], 2),
}


def run(name, tmp_dir):
    from weightedlie.cli import main

    argv, _ = CASES[name]
    out = Path(tmp_dir) / f"{name}.json"
    code = main(argv + ["--out", str(out)])
    return code, out.read_text()


def main():
    import tempfile

    GOLDEN.mkdir(exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        for name, (_, expected) in CASES.items():
            code, text = run(name, tmp)
            if code != expected:
                sys.exit(f"{name}: exit {code}, expected {expected}")
            (GOLDEN / f"{name}.json").write_text(text)
            print(f"wrote {name}")


if __name__ == "__main__":
    main()
