"""Cross-check the CLI against cvxpy, scipy and networkx.

usage: oracle_cross_check.py <path to spectral-chroma>
"""

import itertools
import json
import subprocess
import sys
import tempfile

import cvxpy as cp
import networkx as nx
import numpy as np
from scipy.optimize import linprog

CLI = sys.argv[1]

CASES = [
    ["--family", "cycle", "5"],
    ["--family", "cycle", "7"],
    ["--family", "petersen"],
    ["--family", "complete", "4"],
    ["--family", "complete-multipartite", "2", "3", "3"],
    ["--family", "erdos-renyi", "8", "0.5", "1"],
    ["--family", "erdos-renyi", "9", "0.5", "4"],
    ["--family", "erdos-renyi", "10", "0.3", "7"],
]


def run(args):
    p = subprocess.run([CLI, *args, "--format", "json", "--no-timestamp"], capture_output=True, text=True)
    if p.returncode != 0:
        sys.exit(f"{' '.join(args)} exited {p.returncode}: {p.stderr}")
    return json.loads(p.stdout)


def kyfan_theta(g, w, k):
    # min over edge-supported Z of the sum of the k largest eigenvalues of sqrt(w)sqrt(w)^T + Z,
    # with fractional k through  min k t + tr Y,  Y >= 0,  Y >= A + Z - tI.
    n = g.number_of_nodes()
    s = np.sqrt(w)
    a = np.outer(s, s)
    zv = cp.Variable(g.number_of_edges())
    z = 0
    for idx, (i, j) in enumerate(g.edges()):
        e = np.zeros((n, n))
        e[i, j] = e[j, i] = 1.0
        z = z + zv[idx] * e
    t = cp.Variable()
    y = cp.Variable((n, n), symmetric=True)
    cons = [y >> 0, y - (a + z - t * np.eye(n)) >> 0]
    prob = cp.Problem(cp.Minimize(k * t + cp.trace(y)), cons)
    prob.solve(solver=cp.CLARABEL)
    return prob.value


def fractional_chromatic(g):
    sets = [c for c in nx.find_cliques(nx.complement(g))]
    n = g.number_of_nodes()
    a = np.zeros((n, len(sets)))
    for j, s in enumerate(sets):
        a[s, j] = 1.0
    r = linprog(np.ones(len(sets)), A_ub=-a, b_ub=-np.ones(n), bounds=(0, None), method="highs")
    return r.fun


def main():
    rng = np.random.default_rng(5)
    worst = 0.0
    for args in CASES:
        b = run(["bounds", *args])
        g = nx.from_graph6_bytes(b["graph6"].encode())
        name = b["name"]
        alpha = max(len(c) for c in nx.find_cliques(nx.complement(g)))
        assert b["alpha"] == alpha, (name, b["alpha"], alpha)
        cf = fractional_chromatic(g)
        assert abs(b["chi_f_value"] - cf) <= 1e-6, (name, b["chi_f_value"], cf)
        n = g.number_of_nodes()
        for k, weighted in itertools.product([1.0, 2.5, 3.0], [False, True]):
            w = rng.uniform(0.0, 2.0, n) if weighted else np.ones(n)
            with tempfile.NamedTemporaryFile("w", suffix=".txt") as f:
                f.write("\n".join(repr(float(x)) for x in w) + "\n")
                f.flush()
                ours = run(["theta-k", *args, "--k", str(k), "--weights", f.name])["value"]
            ref = kyfan_theta(g, w, k)
            err = abs(ours - ref) / max(1.0, abs(ref))
            worst = max(worst, err)
            assert err <= 1e-5, (name, k, weighted, ours, ref)
        print(f"{name}: alpha={alpha} chi_f={cf:.6f} ok")
    print(f"worst relative theta_k difference {worst:.2e}")


if __name__ == "__main__":
    main()
