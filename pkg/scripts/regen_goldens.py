"""Rewrite tests/golden/*.txt from the current derivations.

Run after an intentional change to the compiler, optimizer or trace
format, then review the diff before committing.
"""
from pathlib import Path

from objeval.derivations import all_traces

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, text in all_traces().items():
        path = GOLDEN / f"{name}.txt"
        old = path.read_text(encoding="utf-8") if path.exists() else None
        path.write_text(text, encoding="utf-8")
        print(f"{'unchanged' if old == text else 'wrote':9}  {path.name}")


if __name__ == "__main__":
    main()
