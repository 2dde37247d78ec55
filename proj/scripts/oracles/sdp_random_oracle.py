#!/usr/bin/env python3
"""Generate reference block SDPs plus their optima as a frozen C++ include.

Each case is a random feasible, bounded block SDP: the objective blocks are
shifted to be positive definite (so the dual is strictly feasible at y = 0)
and the right-hand sides come from a strictly feasible primal point, so
strong duality holds with a unique well-conditioned optimum.  The problem
data and the reference optimum (computed with cvxpy/SCS at high accuracy)
are written to tests/sdp_oracle_cases.inc, which the C++ test-suite includes
verbatim.

Run from the repository root:  python3 scripts/oracles/sdp_random_oracle.py
"""
import numpy as np
import cvxpy as cp


def rand_sym(rng, n, scale=1.0):
    m = rng.standard_normal((n, n))
    return scale * (m + m.T) / 2


def make_problem(seed, sizes, m):
    rng = np.random.Generator(np.random.MT19937(seed))
    C = []
    for n in sizes:
        s = rand_sym(rng, n)
        lam = np.linalg.eigvalsh(s).min()
        C.append(s + (1.05 * max(0.0, -lam) + 0.1) * np.eye(n))
    X0 = []
    for n in sizes:
        s = rand_sym(rng, n, 0.3)
        X0.append(np.eye(n) + s @ s.T)
    cons = []
    for _ in range(m):
        A = [rand_sym(rng, n) for n in sizes]
        rhs = sum(float(np.trace(a @ x)) for a, x in zip(A, X0))
        cons.append((A, rhs))
    return C, cons


def solve(C, cons, sizes):
    X = [cp.Variable((n, n), symmetric=True) for n in sizes]
    constraints = [x >> 0 for x in X]
    for A, rhs in cons:
        constraints.append(sum(cp.trace(a @ x) for a, x in zip(A, X)) == rhs)
    prob = cp.Problem(
        cp.Minimize(sum(cp.trace(c @ x) for c, x in zip(C, X))), constraints)
    prob.solve(solver=cp.SCS, eps=1e-11, max_iters=500000)
    return prob.value, prob.status


def rand_herm(rng, n, scale=1.0):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return scale * (m + m.conj().T) / 2


def make_complex_problem(seed, n, m):
    rng = np.random.Generator(np.random.MT19937(seed))
    s = rand_herm(rng, n)
    lam = np.linalg.eigvalsh(s).min()
    C = s + (1.05 * max(0.0, -lam) + 0.1) * np.eye(n)
    g = rand_herm(rng, n, 0.3)
    X0 = np.eye(n) + g @ g.conj().T
    cons = []
    for _ in range(m):
        A = rand_herm(rng, n)
        cons.append((A, float(np.real(np.trace(A @ X0)))))
    return C, cons


def solve_complex(C, cons, n):
    X = cp.Variable((n, n), hermitian=True)
    constraints = [X >> 0]
    for A, rhs in cons:
        constraints.append(cp.real(cp.trace(A @ X)) == rhs)
    prob = cp.Problem(cp.Minimize(cp.real(cp.trace(C @ X))), constraints)
    prob.solve(solver=cp.SCS, eps=1e-11, max_iters=500000)
    return prob.value, prob.status


def fmt(x):
    return repr(float(x))


def emit_matrix(out, mat):
    flat = ", ".join(fmt(v) for v in np.asarray(mat).ravel())
    out.append("{" + flat + "}")


CASES = [
    (11, [3], 2),
    (12, [4], 5),
    (13, [2, 3], 4),
    (14, [3, 3, 2], 6),
    (15, [5], 8),
]


def main():
    lines = []
    lines.append("// Frozen reference block SDPs with high-accuracy optima.")
    lines.append("// Generated by scripts/oracles/sdp_random_oracle.py; do not edit by hand.")
    lines.append("")
    lines.append("struct OracleConstraint {")
    lines.append("  std::vector<std::vector<double>> blocks;  // row-major, one per block")
    lines.append("  double rhs;")
    lines.append("};")
    lines.append("")
    lines.append("struct OracleCase {")
    lines.append("  std::vector<int> sizes;")
    lines.append("  std::vector<std::vector<double>> objective;  // row-major")
    lines.append("  std::vector<OracleConstraint> constraints;")
    lines.append("  double min_value;")
    lines.append("};")
    lines.append("")
    lines.append("inline std::vector<OracleCase> sdp_oracle_cases() {")
    lines.append("  std::vector<OracleCase> cases;")
    for seed, sizes, m in CASES:
        C, cons = make_problem(seed, sizes, m)
        val, status = solve(C, cons, sizes)
        assert status == "optimal", (seed, status)
        print(f"seed={seed} sizes={sizes} m={m}  status={status}  value={val:.12f}")
        lines.append("  {")
        lines.append("    OracleCase k;")
        lines.append("    k.sizes = {" + ", ".join(str(s) for s in sizes) + "};")
        mats = []
        for c in C:
            emit_matrix(mats, c)
        lines.append("    k.objective = {" + ",\n                   ".join(mats) + "};")
        for A, rhs in cons:
            mats = []
            for a in A:
                emit_matrix(mats, a)
            lines.append("    k.constraints.push_back({{" +
                         ",\n                             ".join(mats) +
                         "}, " + fmt(rhs) + "});")
        lines.append("    k.min_value = " + fmt(val) + ";")
        lines.append("    cases.push_back(std::move(k));")
        lines.append("  }")
    lines.append("  return cases;")
    lines.append("}")

    # One genuinely complex Hermitian case, stored as interleaved
    # (real, imag) pairs row-major.
    seed, n, m = (21, 3, 4)
    C, cons = make_complex_problem(seed, n, m)
    val, status = solve_complex(C, cons, n)
    assert status == "optimal", (seed, status)
    print(f"complex seed={seed} n={n} m={m}  status={status}  value={val:.12f}")
    lines.append("")
    lines.append("struct ComplexOracleCase {")
    lines.append("  int size;")
    lines.append("  std::vector<double> objective_ri;  // re,im interleaved, row-major")
    lines.append("  std::vector<std::pair<std::vector<double>, double>> constraints_ri;")
    lines.append("  double min_value;")
    lines.append("};")
    lines.append("")
    lines.append("inline ComplexOracleCase sdp_complex_oracle_case() {")
    lines.append("  ComplexOracleCase k;")
    lines.append("  k.size = %d;" % n)

    def ri_flat(mat):
        vals = []
        for v in np.asarray(mat).ravel():
            vals.append(fmt(np.real(v)))
            vals.append(fmt(np.imag(v)))
        return "{" + ", ".join(vals) + "}"

    lines.append("  k.objective_ri = " + ri_flat(C) + ";")
    for A, rhs in cons:
        lines.append("  k.constraints_ri.push_back({" + ri_flat(A) + ", " +
                     fmt(rhs) + "});")
    lines.append("  k.min_value = " + fmt(val) + ";")
    lines.append("  return k;")
    lines.append("}")
    with open("tests/sdp_oracle_cases.inc", "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote tests/sdp_oracle_cases.inc")


if __name__ == "__main__":
    main()
