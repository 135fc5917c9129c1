"""Independent brute-force oracles for the exact linear algebra layer.

Nothing here may call into burnloc.normalforms: membership is decided by
exhaustive bounded-coefficient search or by the integer adjugate, quotients are
enumerated coset by coset, and invariant factors are recovered from p-torsion
counts of the enumerated cosets.
"""

from fractions import Fraction
from itertools import product


def exhaustive_member(rows, vec, bound=3):
    """Is vec a combination of rows with all coefficients in [-bound, bound]?

    Meet-in-the-middle over the two halves of the coefficient box.
    """
    rows = [tuple(r) for r in rows]
    n = len(vec)
    if not rows:
        return all(x == 0 for x in vec)
    half = len(rows) // 2
    first, second = rows[:half], rows[half:]
    coeffs = range(-bound, bound + 1)
    partial = {}
    for cs in product(coeffs, repeat=len(first)):
        s = tuple(sum(c * r[j] for c, r in zip(cs, first)) for j in range(n))
        partial[s] = cs
    target = tuple(vec)
    for cs in product(coeffs, repeat=len(second)):
        s = tuple(sum(c * r[j] for c, r in zip(cs, second)) for j in range(n))
        rest = tuple(t - x for t, x in zip(target, s))
        if rest in partial:
            return True
    return False


def det_int(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    total = 0
    for j, entry in enumerate(M[0]):
        if entry == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * entry * det_int(minor)
    return total


def adjugate_int(M):
    """adj(M) with M @ adj(M) = det(M) * I, by cofactors."""
    n = len(M)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(M) if k != j]
            adj[i][j] = (-1) ** (i + j) * det_int(minor)
    return adj


class SquareLatticeOracle:
    """Membership in the row lattice of a nonsingular square matrix.

    x * A = v has the unique rational solution x = v * adj(A) / det(A), so
    v is in the lattice iff v * adj(A) == 0 componentwise mod det(A); the
    residue vector (v * adj mod det) is a perfect coset invariant.
    """

    def __init__(self, rows):
        self.n = len(rows)
        self.rows = [list(r) for r in rows]
        self.det = det_int(self.rows)
        if self.det == 0:
            raise ValueError("matrix is singular")
        self.adj = adjugate_int(self.rows)

    def signature(self, vec):
        d = abs(self.det)
        return tuple(
            sum(vec[i] * self.adj[i][j] for i in range(self.n)) % d
            for j in range(self.n)
        )

    def member(self, vec):
        return all(s == 0 for s in self.signature(vec))


def enumerate_cosets(oracle, limit=256):
    """BFS coset enumeration of Z^n modulo the lattice; returns representatives."""
    n = oracle.n
    zero = tuple([0] * n)
    reps = {oracle.signature(zero): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                for step in (1, -1):
                    cand = list(r)
                    cand[i] += step
                    cand = tuple(cand)
                    sig = oracle.signature(cand)
                    if sig not in reps:
                        reps[sig] = cand
                        nxt.append(cand)
                        if len(reps) > limit:
                            raise ValueError(f"more than {limit} cosets")
        frontier = nxt
    return list(reps.values())


def _prime_factors(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def quotient_invariant_factors(oracle, reps):
    """Invariant factors of the enumerated quotient, from p-torsion counts.

    |{x : p^i * x = 0}| = p^(sum_j min(i, e_j)) pins down the exponent multiset
    e_1 >= e_2 >= ... of the p-primary part.
    """
    order = len(reps)
    primary = {}
    for p in _prime_factors(order):
        exponents = []
        prev = 1
        i = 1
        while True:
            count = sum(
                1 for r in reps if oracle.member([x * p ** i for x in r])
            )
            layers = count // prev
            k = 0
            while p ** (k + 1) <= layers:
                k += 1
            # k = number of exponents e_j >= i
            if k == 0:
                break
            exponents.append(k)
            prev = count
            i += 1
        # exponents[i-1] = #{j : e_j >= i}; convert to the multiset of e_j
        es = []
        for j in range(exponents[0] if exponents else 0):
            es.append(sum(1 for c in exponents if c > j))
        primary[p] = sorted(es, reverse=True)
    factors = []
    i = 0
    while any(i < len(es) for es in primary.values()):
        d = 1
        for p, es in primary.items():
            if i < len(es):
                d *= p ** es[i]
        factors.append(d)
        i += 1
    return tuple(sorted(factors))


def rational_rank_oracle(rows, ncols):
    M = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    col = 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pivval = M[rank][col]
        for i in range(rank + 1, len(M)):
            if M[i][col] != 0:
                f = M[i][col] / pivval
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank
