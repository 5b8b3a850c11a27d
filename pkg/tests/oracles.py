"""Brute-force references that share no code with the package.

Permutations come straight from itertools.permutations, cycles are plain
tuples, and every search is exhaustive over subsets.
"""

from itertools import combinations, permutations


def cycles_of(p):
    """Canonical cycle tuple of a 0-based one-line permutation, 1-based output."""
    n = len(p)
    seen = set()
    out = []
    for i in range(n):
        if i in seen:
            continue
        c = []
        j = i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        out.append(tuple(c))
    return tuple(out)


def brute_snk(n, k):
    """Sorted list of canonical cycle tuples for S_{n,k}."""
    return sorted(c for c in (cycles_of(p) for p in permutations(range(n))) if len(c) == k)


def rising_factorial_coeffs(n):
    """Coefficients of x(x+1)...(x+n-1); entry k is [n k]."""
    poly = [1]
    for i in range(n):
        nxt = [0] * (len(poly) + 1)
        for d, a in enumerate(poly):
            nxt[d + 1] += a
            nxt[d] += i * a
        poly = nxt
    return poly


def pairwise_disjoint(members):
    for a, b in combinations(members, 2):
        if set(a) & set(b):
            return False
    return True


def naive_nu(members):
    """Largest r such that some r members pairwise share no cycle."""
    members = list(members)
    best = 0
    for r in range(1, len(members) + 1):
        if any(pairwise_disjoint(H) for H in combinations(members, r)):
            best = r
        else:
            break
    return best


def naive_emc(n, k, s):
    """max |A| over all A in S_{n,k} with nu(A) <= s, by scanning subset sizes downward."""
    ground = brute_snk(n, k)
    for size in range(len(ground), -1, -1):
        for A in combinations(ground, size):
            if naive_nu(A) <= s:
                return size
    return 0


def stirling_brute(n, k):
    return sum(1 for p in permutations(range(n)) if len(cycles_of(p)) == k)
