"""Elementary number-theoretic helpers shared across the package.

Everything here is deterministic and exact: sieves, factorization by trial
division (the sizes in play stay far below 2**50), primitive roots,
Teichmueller/Hensel lifts in Z/p^N and Z/q^K, discrete logarithms in the
p-power part of F_q^*, and an exact solver for integer linear systems used
to descend cyclotomic integers to subfield coordinates.
"""

from fractions import Fraction
from functools import lru_cache
import math

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10**24."""
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return [i for i in range(bound + 1) if sieve[i]]


def primes_in_progression(residue: int, modulus: int, count: int, start: int = 2):
    """First ``count`` primes p > start with p = residue (mod modulus)."""
    out = []
    q = start + ((residue - start) % modulus)
    if q <= start:
        q += modulus
    while len(out) < count:
        if is_prime(q):
            out.append(q)
        q += modulus
    return out


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; adequate for n < ~10**14."""
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def ord_p(n: int, p: int) -> int:
    """p-adic valuation of n (n != 0)."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    g, u, _ = extended_gcd(m1, m2)
    if g != 1:
        raise ValueError("moduli not coprime")
    return (r1 + (r2 - r1) * u % m2 * m1) % (m1 * m2)


def multiplicative_order(a: int, modulus: int, group_order: int) -> int:
    order = group_order
    for q in factorize(group_order):
        while order % q == 0 and pow(a, order // q, modulus) == 1:
            order //= q
    return order


def is_primitive_root(a: int, ell: int) -> bool:
    """a generates (Z/ell)^* for prime ell."""
    if a % ell == 0:
        return False
    return multiplicative_order(a % ell, ell, ell - 1) == ell - 1


def smallest_primitive_root(ell: int) -> int:
    for a in range(2, ell):
        if is_primitive_root(a, ell):
            return a
    raise ValueError(f"no primitive root mod {ell}")


@lru_cache(maxsize=None)
def generator_mod_p2(p: int) -> int:
    """Smallest positive primitive root mod p^2 (hence mod p^k for all k)."""
    p2 = p * p
    group = p * (p - 1)
    for a in range(2, p2):
        if a % p and multiplicative_order(a, p2, group) == group:
            return a
    raise ValueError(f"no primitive root mod {p}^2")


def teichmuller(a: int, p: int, N: int) -> int:
    """The (p-1)-st root of unity in Z/p^N congruent to a mod p."""
    mod = p**N
    x = a % p
    if x == 0:
        raise ValueError("a divisible by p")
    for _ in range(N):
        x = pow(x, p, mod)
    if pow(x, p - 1, mod) != 1 or (x - a) % p != 0:
        raise AssertionError("Teichmuller lift failed")
    return x


def hensel_root_of_unity(r: int, M: int, q: int, K: int) -> int:
    """Newton-lift a root of x^M - 1 from F_q to Z/q^K (q prime to M)."""
    mod = q
    x = r % q
    if pow(x, M, q) != 1:
        raise ValueError("r is not an M-th root of unity mod q")
    while mod < q**K:
        mod = min(mod * mod, q**K)
        x = (x - (pow(x, M, mod) - 1) * pow(M * pow(x, M - 1, mod), -1, mod)) % mod
    return x


def dlog_p_part(x: int, t: int, q: int, p: int, N: int) -> int:
    """Discrete log of x in F_q^* / (F_q^*)^(p^N), relative to a generator t.

    Returns d in Z/p^N with x = t^d modulo p^N-th powers.  Pohlig-Hellman on
    the p^N-torsion quotient: project to the cyclic group of order p^N via
    the power map y -> y^((q-1)/p^N) and recover base-p digits, each by a
    baby-step/giant-step search of size O(sqrt(p)).
    """
    pN = p**N
    if (q - 1) % pN:
        raise ValueError("p^N does not divide q - 1")
    h = pow(x % q, (q - 1) // pN, q)
    g = pow(t % q, (q - 1) // pN, q)
    d = 0
    g_p = pow(g, pN // p, q)  # element of order p
    for i in range(N):
        # digit i: (h * g^{-d})^(p^(N-1-i)) = g_p^digit
        rhs = pow(h * pow(g, -d % pN, q) % q, pN // (p ** (i + 1)), q)
        digit = _bsgs(g_p, rhs, p, q)
        d += digit * p**i
    return d % pN


def _bsgs(g: int, h: int, order: int, q: int) -> int:
    """x with g^x = h mod q, 0 <= x < order (g of order dividing ``order``)."""
    m = math.isqrt(order - 1) + 1
    table = {}
    cur = 1
    for j in range(m):
        table.setdefault(cur, j)
        cur = cur * g % q
    giant = pow(pow(g, m, q), -1, q)
    cur = h % q
    for i in range(m + 1):
        if cur in table:
            return (i * m + table[cur]) % order
        cur = cur * giant % q
    raise ValueError("dlog does not exist")


def solve_integer_combination(basis_rows: list[list[int]], target: list[int]) -> list[int]:
    """Exact solution c of sum_j c[j] * basis_rows[j] = target over Q.

    Raises ValueError when the system is inconsistent or the solution is not
    integral.  Sizes stay small (at most a few hundred equations), so plain
    fraction-free-ish Gaussian elimination over Fraction is fine.
    """
    ncols = len(basis_rows)
    nrows = len(target)
    rows = [[Fraction(basis_rows[j][i]) for j in range(ncols)] + [Fraction(target[i])]
            for i in range(nrows)]
    r = 0
    pivots = []
    for col in range(ncols):
        sel = next((i for i in range(r, nrows) if rows[i][col]), None)
        if sel is None:
            raise ValueError("basis rows not independent")
        rows[r], rows[sel] = rows[sel], rows[r]
        pr = rows[r]
        inv = 1 / pr[col]
        rows[r] = pr = [x * inv for x in pr]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(col)
        r += 1
    for i in range(r, nrows):
        if rows[i][ncols]:
            raise ValueError("inconsistent system")
    sol = [rows[i][ncols] for i in range(ncols)]
    if any(f.denominator != 1 for f in sol):
        raise ValueError("solution not integral")
    return [int(f) for f in sol]
