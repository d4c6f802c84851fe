"""Writes jack_golden.txt by Gram-Schmidt in the power-sum basis.

P_lambda is m_lambda orthogonalised against the m_mu below it in
lexicographic order, under <p_rho, p_sigma> = delta z_rho alpha^l(rho)
with alpha = 1/theta. J_lambda = c_lambda P_lambda with the hook product
c_lambda = prod_s (alpha a(s) + l(s) + 1). Terms of length above n are
dropped. Only sympy rationals; nothing is shared with the Rust code.
"""
from math import factorial
from collections import Counter
import sys

from sympy import Rational, Matrix


def partitions(k, cap=None):
    cap = k if cap is None else cap
    if k == 0:
        yield ()
        return
    for first in range(min(k, cap), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


def z(rho):
    out = 1
    for part, mult in Counter(rho).items():
        out *= part**mult * factorial(mult)
    return out


def p_in_m(rho, k, basis):
    """Coefficients of p_rho on m_mu, read off the exponent vectors."""
    # expand prod_j (x_1^r + ... + x_k^r) as exponent-vector counts
    terms = Counter({(0,) * k: 1})
    for r in rho:
        nxt = Counter()
        for e, c in terms.items():
            for i in range(k):
                f = list(e)
                f[i] += r
                nxt[tuple(f)] += c
        terms = nxt
    return [terms.get(tuple(list(mu) + [0] * (k - len(mu))), 0) for mu in basis]


def conj(lam):
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0])) if lam else ()


def hook_c(lam, alpha):
    lc = conj(lam)
    out = Rational(1)
    for i, row in enumerate(lam):
        for j in range(row):
            out *= alpha * (row - j - 1) + (lc[j] - i - 1) + 1
    return out


def jack_table(k, alpha):
    basis = sorted(partitions(k))  # lexicographic, a linear extension of dominance
    pm = Matrix([p_in_m(rho, k, basis) for rho in basis])  # rows: p_rho in m
    m_in_p = pm.inv()  # rows: m_mu in p
    gram = Matrix.diag(*[z(rho) * alpha ** len(rho) for rho in basis])

    def ip(u, v):
        return (u * gram * v.T)[0, 0]

    ps = {}
    for idx, lam in enumerate(basis):
        v = m_in_p.row(idx)
        for mu in basis[:idx]:
            q = ps[mu]
            v = v - ip(v, q) / ip(q, q) * q
        ps[lam] = v
    out = {}
    for lam in basis:
        coeffs = ps[lam] * pm  # back to monomials
        c = hook_c(lam, alpha)
        out[lam] = {mu: c * coeffs[0, j] for j, mu in enumerate(basis) if coeffs[0, j] != 0}
    return out


def fmt_part(p):
    return "(" + ",".join(map(str, p)) + ")"


def main():
    thetas = [Rational(1, 2), Rational(3, 4), Rational(1), Rational(3, 2), Rational(2)]
    lines = ["# J_lambda(z; theta) by Gram-Schmidt in power sums (jack_oracle.py)"]
    for theta in thetas:
        alpha = 1 / theta
        for k in range(1, 6):
            table = jack_table(k, alpha)
            for lam in sorted(table, reverse=True):
                for n in range(len(lam), 4):
                    terms = {mu: c for mu, c in table[lam].items() if len(mu) <= n}
                    body = " ".join(f"{fmt_part(mu)}={c}" for mu, c in sorted(terms.items(), reverse=True))
                    lines.append(f"lambda={fmt_part(lam)} n={n} theta={theta} : {body}")
    sys.stdout.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
