"""Coset counts per family for the bundled lattices and small primes."""

from orthomf import load_gram
from orthomf.hecke import counts


def main():
    for name, primes in (("e8", (2, 3)), ("d4", (3, 5)), ("a2", (2, 5)), ("n2det7", (2, 3, 5))):
        sp = load_gram(name)
        for q in primes:
            c = counts(sp, q)
            fams = "  ".join(f"{x}={c['N_' + x]}" for x in "abcdef")
            print(f"{name:7s} q={q}  {fams}  total={c['rho0']}")


if __name__ == "__main__":
    main()
