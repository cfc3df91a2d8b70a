"""Flat SU(2) connections on Brieskorn spheres from equivariant signatures.

Run with: python3 demos/03_brieskorn_spheres.py
"""

from knotfloer.branched import brieskorn_count, coprime_triples, equivariant_signature_sum, p2_terms

for triple in [(2, 3, 5), (2, 3, 7), (2, 3, 11), (3, 5, 2)]:
    total = equivariant_signature_sum(*triple)
    n = brieskorn_count(*triple)
    terms = p2_terms(*triple)
    print(f"Sigma{triple}: signature sum {total}, count {n}, per-alpha counts {terms}, sum {sum(terms)}")

# The two-to-one correspondence over all small triples.
bad = [t for t in coprime_triples(120) if 2 * brieskorn_count(*t) != sum(p2_terms(*t))]
print("triples with pqr <= 120 failing the identity:", bad)
