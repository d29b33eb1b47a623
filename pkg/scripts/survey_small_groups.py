"""Enumerate symmetric-type data with one or two generators over small groups
and tabulate ribbon counts, H^2_inv, and whether the double exists.

    python scripts/survey_small_groups.py --max-order 8
"""
import argparse
import itertools
from collections import Counter
from fractions import Fraction

from pointedbraid.abgroup import Bicharacter, FinAbGroup
from pointedbraid.double import is_self_dual
from pointedbraid.qls import InvalidDatum, validate_datum
from pointedbraid.quadruple import h2_inv
from pointedbraid.rform import ribbon_structures
from pointedbraid.scalars import CyclotomicContext, lcm

GROUPS = [(2,), (3,), (4,), (2, 2), (5,), (6,), (7,), (8,), (2, 4), (2, 2, 2), (9,), (3, 3), (10,), (12,),
          (2, 6), (4, 4), (2, 8), (16,), (2, 2, 4)]


def bicharacters(G):
    """All bicharacters of G as turn tables on generators."""
    k = G.rank
    opts = []
    for i in range(k):
        for j in range(k):
            # invariant-factor form: gcd(m_i, m_j) = min(m_i, m_j)
            d = min(G.invariants[i], G.invariants[j])
            opts.append([Fraction(t, d) for t in range(d)])
    for turns in itertools.product(*opts):
        yield Bicharacter(G, tuple(tuple(turns[i * k + j] for j in range(k)) for i in range(k)))


def data_for(G, r0, n):
    """Generators (g, chi) forced by r0: chi = r0(g, -), need r0(-, g) = chi^{-1} and chi(g) = -1."""
    labels = []
    for g in G.elements():
        chi = r0.left_character(g)
        if chi.turn(g) == Fraction(1, 2) and r0.right_character(g) == chi.inverse():
            labels.append((g, chi))
    for combo in itertools.combinations_with_replacement(labels, n):
        yield [g for g, _ in combo], [c for _, c in combo]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=8)
    ap.add_argument("--generators", type=int, default=2)
    args = ap.parse_args(argv)
    for inv in GROUPS:
        G = FinAbGroup(inv)
        if G.order > args.max_order:
            continue
        ctx = CyclotomicContext(lcm(G.exponent, 2))
        stats = Counter()
        for r0 in bicharacters(G):
            for n in range(1, args.generators + 1):
                for degrees, chars in data_for(G, r0, n):
                    try:
                        V = validate_datum(ctx, G, r0, degrees, chars)
                    except InvalidDatum:
                        stats["invalid"] += 1
                        continue
                    stats["data"] += 1
                    stats[f"ribbon={len(ribbon_structures(V))}"] += 1
                    stats[f"h2inv={h2_inv(V).as_tuple()}"] += 1
                    stats["self_dual" if is_self_dual(V)[0] else "not_self_dual"] += 1
        print(f"{'x'.join(map(str, inv)):>8}: " + ", ".join(f"{k} {v}" for k, v in sorted(stats.items())))


if __name__ == "__main__":
    main()
