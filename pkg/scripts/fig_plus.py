"""Trace of + [2, 3] with both operands entering through can_nat."""
from objeval.derivations import plus

if __name__ == "__main__":
    print(plus().trace(), end="")
