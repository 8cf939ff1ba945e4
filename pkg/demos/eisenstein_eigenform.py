"""Build F_{14,S} for E8, apply T_S(q) and compare with the predicted eigenvalue."""

from fractions import Fraction

from orthomf import load_gram
from orthomf.eisenstein import F_series, ell_eisenstein
from orthomf.exact import bernoulli, fmt_rat
from orthomf.fourier import star
from orthomf.hecke import apply_TSq, counts, rho


def main():
    sp = load_gram("e8")
    k = 14
    f = F_series(sp, k, 4)
    print(f"F_{k}: {len(f)} stored orbits with m, l <= {f.B}")
    for lam in [(0,) * 10, (1, *(0,) * 8, 0), (1, *(0,) * 8, 1), (2, *(0,) * 8, 2)]:
        print(f"  alpha(m={lam[0]}, mu=0, l={lam[-1]}) = {fmt_rat(f.coeff(lam))}")

    s = star(f)
    e = ell_eisenstein(k - 4, len(s) - 1).scale(Fraction(-2 * k) / bernoulli(k))
    print(f"star image equals -(2k/B_k) E_{k - 4}: {s == e}")

    for q in (2, 3):
        c = counts(sp, q)
        r = rho(sp, k, q)
        g = apply_TSq(f, q)
        print(f"q = {q}: N = {c['N']}, rho = {fmt_rat(r)}, "
              f"eigenform on m, l <= {g.B}: {g == f.restrict(g.B).scale(r)}")


if __name__ == "__main__":
    main()
