"""Exact evaluation of the quadratic sums defining the induced weights.

Rows k, m, n, r write e1..e4 against 1, I, J, K:
e1 = (1 + iI)/2, e2 = (1 - iI)/2, e3 = (iJ - K)/2, e4 = (iJ + K)/2.
psi_j has coordinates k_j k_u + m_j m_u + n_j n_u + r_j r_u against (1, I, J, K).

Run directly to print the values frozen in test_operators.GOLDEN_STANDARD_PSI.
"""

import sympy as sp

half, ihalf = sp.Rational(1, 2), sp.I / 2
k = [half, ihalf, 0, 0]
m = [half, -ihalf, 0, 0]
n = [0, 0, ihalf, -half]
r = [0, 0, ihalf, half]


def sums():
    return [[sp.nsimplify(k[j] * k[u] + m[j] * m[u] + n[j] * n[u] + r[j] * r[u]) for u in range(4)] for j in range(4)]


if __name__ == "__main__":
    for j, row in enumerate(sums(), start=1):
        print(f"psi{j} =", " + ".join(f"({c})*{b}" for c, b in zip(row, ("1", "I", "J", "K")) if c != 0))
