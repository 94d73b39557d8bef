"""Compare the compiled and pure-Python jet kernels.

    python benchmarks/bench_backends.py [--repeat N]

Times raw jet evaluation of a few fields and a full Hamiltonian flow per
backend, and checks that both backends return identical numbers.
"""
import argparse
import time

from parakahler import _backend
from parakahler.calculus import Tape, parse_expr
from parakahler.hamiltonian import HamiltonianSystem, hamilton_flow

FIELDS = ("x^2+y^2", "sinh(x)*y", "cosh(2*y)+x^2", "exp(-x^2)*sin(3*y)+ln(1+x^2*y^2)")


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_jets(name, text, n, repeat):
    tape = Tape(parse_expr(text), name)
    pts = [(0.001 * k - 1.0, 0.5 + 0.0005 * k) for k in range(n)]

    def run():
        return [tape.raw(x, y) for x, y in pts]

    return best_of(run, repeat)


def bench_flow(name, repeat):
    sys = HamiltonianSystem("sinh(x)*y", backend=name)
    return best_of(lambda: hamilton_flow(sys, (0.5, 2.5), 10.0, 1e-3).states, repeat)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--points", type=int, default=20000)
    args = ap.parse_args()
    names = [n for n in ("cython", "python") if n in _backend.BACKENDS]
    if len(names) < 2:
        print("compiled kernels not built; only the python backend is available")
    print(f"{'case':<48}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for text in FIELDS:
        times, outs = zip(*(bench_jets(n, text, args.points, args.repeat) for n in names))
        row = f"jets x{args.points}: {text:<34}"[:48].ljust(48)
        row += "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(names) == 2:
            row += f"{times[1] / times[0]:>11.1f}x" + ("" if outs[0] == outs[1] else "  MISMATCH")
        print(row)
    times, outs = zip(*(bench_flow(n, args.repeat) for n in names))
    row = "hamilton_flow sinh(x)*y, T=10, h=1e-3".ljust(48)
    row += "".join(f"{t * 1e3:>10.1f}ms" for t in times)
    if len(names) == 2:
        same = outs[0].tobytes() == outs[1].tobytes()
        row += f"{times[1] / times[0]:>11.1f}x" + ("" if same else "  MISMATCH")
    print(row)


if __name__ == "__main__":
    main()
