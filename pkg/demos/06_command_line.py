# The same checks from the command line, on definitions read from files.
# Each call below is what `ordalg ...` does in a shell.
#
# Run from the repository root:  python demos/06_command_line.py

from pathlib import Path

from ordalg.cli import run

data = Path(__file__).resolve().parent / "data"

# Definitions are plain text: ordered sets, algebras by table or by a term,
# homomorphisms and diagrams.

print((data / "chains.alg").read_text())

commands = [
    ["validate", str(data / "chains.alg"), str(data / "trunc.alg"), str(data / "pointed.alg")],
    ["-f", str(data / "chains.alg"), "check", "proto", "chain2"],
    ["-f", str(data / "chains.alg"), "check", "degenerate", "chain2"],
    ["-f", str(data / "trunc.alg"), "check", "ord-maltsev", "trunc3"],
    ["-f", str(data / "pointed.alg"), "check", "ss5l", "squeeze"],
    ["check", "maltsev", "Z3", "--depth", "1"],
]

# Exit status: 0 pass, 1 fail, 2 inconclusive, 3 bad input.

for argv in commands:
    status = run(argv)
    print("exit status", status)
    print()
