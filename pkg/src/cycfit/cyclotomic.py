"""Exact arithmetic in Z[mu_M] for odd conductors M.

Representation
--------------
A :class:`CycElt` stores integer coefficients of powers of a fixed abstract
primitive M-th root of unity ``z_M``, as an element of Z[x]/(x^M - 1).  The
family {z_M} is compatible: whenever M' | M the root of the smaller
conductor is z_M^(M/M').  Equality, hashing and serialization go through
the canonical form, the unique reduction modulo the M-th cyclotomic
polynomial (degree phi(M)); working representatives modulo x^M - 1 keeps
multiplication a plain cyclic convolution and keeps ring homomorphisms
(complex embeddings, reductions at split primes) applicable without
canonicalizing first.

The cyclotomic unit attached to a root zeta != 1 is

    (zeta^(-e/2) - zeta^(e/2)) / (zeta^(-1/2) - zeta^(1/2))
        = zeta^(h*(1-e)) * (1 + zeta + ... + zeta^(e-1)),   h = (M+1)/2,

where half-exponents use the inverse of 2 mod the odd conductor; the right
side is manifestly integral, so no division is ever performed.
"""

from dataclasses import dataclass
from functools import lru_cache
import cmath
import math

from . import kernels
from .arith import (
    generator_mod_p2,
    is_prime,
    ord_p,
    solve_integer_combination,
    teichmuller,
)


class CycError(ValueError):
    pass


@dataclass(frozen=True)
class LevelParams:
    """Global context: odd prime p, layer m, precision exponent N.

    ``e`` is the smallest positive primitive root mod p^2 (hence a generator
    of (Z/p^k)^* for every k) and ``u`` the (p-1)-st root of unity in Z/p^N
    with e*u = 1 (mod p).
    """

    p: int
    m: int
    N: int
    e: int
    u: int

    @classmethod
    def create(cls, p: int, m: int, N: int) -> "LevelParams":
        if p < 3 or not is_prime(p):
            raise CycError(f"p={p} is not an odd prime")
        if m < 0:
            raise CycError("layer index m must be >= 0")
        if N < m + 1:
            raise CycError(f"precision N={N} violates N >= m+1={m + 1}")
        e = generator_mod_p2(p)
        u = teichmuller(pow(e, -1, p), p, N)
        return cls(p=p, m=m, N=N, e=e, u=u)

    def __post_init__(self):
        if self.N < self.m + 1:
            raise CycError("N >= m+1 required")
        from .arith import multiplicative_order

        p, N = self.p, self.N
        group = p * (p - 1)
        if math.gcd(self.e, p) != 1 or multiplicative_order(
            self.e % (p * p), p * p, group
        ) != group:
            raise CycError("e does not generate (Z/p^2)^*")
        if pow(self.u, p - 1, p**N) != 1 or (self.e * self.u - 1) % p:
            raise CycError("u is not the (p-1)-st root of unity inverse to e mod p")

    @property
    def pN(self) -> int:
        return self.p**self.N

    @property
    def field_conductor(self) -> int:
        """Conductor p^(m+1) of F_m."""
        return self.p ** (self.m + 1)

    def rho_exponent(self, M: int) -> int:
        """Exponent a with rho_m = z_M^a, for p^(m+1) | M."""
        cond = self.field_conductor
        if M % cond:
            raise CycError("conductor does not contain the p-part")
        return M // cond


@lru_cache(maxsize=None)
def cyclotomic_polynomial(M: int) -> tuple[int, ...]:
    """Coefficients (ascending) of Phi_M, by exact recursive division."""
    if M == 1:
        return (-1, 1)
    num = [0] * (M + 1)
    num[0], num[M] = -1, 1
    for d in range(1, M):
        if M % d == 0:
            num = _poly_div_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_div_exact(a: list[int], b: list[int]) -> list[int]:
    """a // b for monic b with exact division (remainder must vanish)."""
    a = a[:]
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - db - 1, -1, -1):
        c = a[i + db]
        if c:
            q[i] = c
            for j in range(db + 1):
                a[i + j] -= c * b[j]
    if any(a):
        raise CycError("non-exact polynomial division")
    return q


@lru_cache(maxsize=None)
def _reduction_rows(M: int) -> tuple[tuple[int, ...], ...]:
    """Row k: canonical coefficients of x^(phi(M)+k) mod Phi_M."""
    phi = cyclotomic_polynomial(M)
    deg = len(phi) - 1
    rows = []
    cur = [-c for c in phi[:deg]]  # x^deg mod Phi
    rows.append(tuple(cur))
    for _ in range(deg + 1, M):
        cur = _shift_reduce(cur, phi, deg)
        rows.append(tuple(cur))
    return tuple(rows)


def _shift_reduce(cur: list[int], phi: tuple[int, ...], deg: int) -> list[int]:
    lead = cur[-1]
    out = [0] + cur[:-1]
    if lead:
        for j in range(deg):
            out[j] -= lead * phi[j]
    return out


class CycElt:
    """Element of Z[mu_M]; immutable value object."""

    __slots__ = ("M", "coeffs", "_canon")

    def __init__(self, M: int, coeffs):
        if M < 1 or M % 2 == 0:
            raise CycError(f"conductor {M} must be odd and positive")
        dense = [0] * M
        if isinstance(coeffs, dict):
            for k, v in coeffs.items():
                if v:
                    dense[k % M] += v
        else:
            for k, v in enumerate(coeffs):
                if v:
                    dense[k % M] += v
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "coeffs", tuple(dense))
        object.__setattr__(self, "_canon", None)

    def __setattr__(self, *a):  # immutability
        raise AttributeError("CycElt is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(M: int) -> "CycElt":
        return CycElt(M, {})

    @staticmethod
    def one(M: int) -> "CycElt":
        return CycElt(M, {0: 1})

    @staticmethod
    def root(M: int, k: int = 1) -> "CycElt":
        return CycElt(M, {k % M: 1})

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "CycElt") -> "CycElt":
        a, b = _common(self, other)
        return CycElt(a.M, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    def __sub__(self, other: "CycElt") -> "CycElt":
        a, b = _common(self, other)
        return CycElt(a.M, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __neg__(self) -> "CycElt":
        return CycElt(self.M, [-x for x in self.coeffs])

    def __mul__(self, other) -> "CycElt":
        if isinstance(other, int):
            return CycElt(self.M, [other * x for x in self.coeffs])
        a, b = _common(self, other)
        return CycElt(a.M, kernels.conv_cyclic(list(a.coeffs), list(b.coeffs), a.M))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CycElt":
        if n < 0:
            raise CycError("negative powers are not defined in Z[mu_M]")
        out = CycElt.one(self.M)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.canonical())

    # -- canonical form -----------------------------------------------
    def canonical(self) -> tuple[int, ...]:
        """Unique coefficient vector modulo Phi_M (length phi(M))."""
        cached = self._canon
        if cached is not None:
            return cached
        phi = cyclotomic_polynomial(self.M)
        deg = len(phi) - 1
        out = list(self.coeffs[:deg]) + [0] * max(0, deg - self.M)
        if self.M > deg:
            rows = _reduction_rows(self.M)
            for k in range(deg, self.M):
                c = self.coeffs[k]
                if c:
                    row = rows[k - deg]
                    for j in range(deg):
                        out[j] += c * row[j]
        canon = tuple(out)
        object.__setattr__(self, "_canon", canon)
        return canon

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycElt):
            return NotImplemented
        if self.M == other.M:
            return self.canonical() == other.canonical()
        a, b = _common(self, other)
        return a.canonical() == b.canonical()

    def __hash__(self):
        return hash((self.M, self.canonical()))

    def __repr__(self):
        terms = [(k, v) for k, v in enumerate(self.coeffs) if v]
        return f"CycElt(M={self.M}, {dict(terms[:6])}{'...' if len(terms) > 6 else ''})"

    # -- Galois action / embeddings ------------------------------------
    def galois(self, t: int) -> "CycElt":
        """Action of the automorphism z_M -> z_M^t, gcd(t, M) = 1."""
        if math.gcd(t, self.M) != 1:
            raise CycError(f"{t} is not a unit mod {self.M}")
        out = [0] * self.M
        for k, v in enumerate(self.coeffs):
            if v:
                out[k * t % self.M] = v
        return CycElt(self.M, out)

    def lift(self, M: int) -> "CycElt":
        """Image under Z[mu_M'] -> Z[mu_M] (z_M' = z_M^(M/M'))."""
        if M % self.M:
            raise CycError("target conductor must be a multiple")
        step = M // self.M
        return CycElt(M, {k * step: v for k, v in enumerate(self.coeffs) if v})

    def complex_eval(self, embedding: int = 1) -> complex:
        """Value at z_M = exp(2*pi*i*embedding/M); test oracle only."""
        if math.gcd(embedding, self.M) != 1:
            raise CycError("embedding index must be a unit mod M")
        z = cmath.exp(2j * cmath.pi * embedding / self.M)
        return sum(v * z**k for k, v in enumerate(self.coeffs) if v)

    def support_conductor(self) -> int:
        """Smallest M' | M with self in Z[mu_M'] (by exact descent test)."""
        for Mp in sorted(d for d in _divisors(self.M)):
            try:
                self.descend(Mp)
                return Mp
            except CycError:
                continue
        return self.M

    def descend(self, M_target: int) -> "CycElt":
        """Rewrite in Z[mu_M_target] when possible (M_target | M), else raise."""
        if self.M % M_target:
            raise CycError("not a divisor of the conductor")
        if M_target == self.M:
            return self
        step = self.M // M_target
        deg_t = len(cyclotomic_polynomial(M_target)) - 1
        basis = [CycElt.root(self.M, step * j).canonical() for j in range(deg_t)]
        try:
            coeffs = solve_integer_combination(
                [list(b) for b in basis], list(self.canonical())
            )
        except ValueError as exc:
            raise CycError(f"element does not lie in Z[mu_{M_target}]") from exc
        return CycElt(M_target, {j: c for j, c in enumerate(coeffs)})

    def norm_to_q(self) -> int:
        """Norm to Q: product over all embeddings (exact)."""
        out = CycElt.one(self.M)
        for t in range(1, self.M):
            if math.gcd(t, self.M) == 1:
                out = out * self.galois(t)
        const = out.descend(1)
        return const.coeffs[0]


def _common(a: CycElt, b: CycElt) -> tuple[CycElt, CycElt]:
    if a.M == b.M:
        return a, b
    M = a.M * b.M // math.gcd(a.M, b.M)
    return a.lift(M), b.lift(M)


def _divisors(n: int) -> list[int]:
    out = [1]
    f = 2
    rest = n
    while f * f <= rest:
        if rest % f == 0:
            powers = [1]
            while rest % f == 0:
                rest //= f
                powers.append(powers[-1] * f)
            out = [d * pw for d in out for pw in powers]
        f += 1
    if rest > 1:
        out = [d * pw for d in out for pw in (1, rest)]
    return sorted(out)


# -- the cyclotomic unit ------------------------------------------------


def cyc_unit(params: LevelParams, M: int, a: int) -> CycElt:
    """The cyclotomic unit cyc(z_M^a); requires z_M^a != 1 and odd M.

    Lies in the maximal totally real subfield: invariant under z -> z^(-1).
    """
    if M % 2 == 0:
        raise CycError("even conductor")
    a %= M
    if a == 0:
        raise CycError("cyc(1) is undefined")
    e = params.e
    if math.gcd(e, M) != 1:
        raise CycError("e shares a factor with the conductor")
    h = pow(2, -1, M)
    prefix = a * h * (1 - e) % M
    out: dict[int, int] = {}
    for j in range(e):
        k = (prefix + a * j) % M
        out[k] = out.get(k, 0) + 1
    return CycElt(M, out)


def galois_apply(t: int, x: CycElt) -> CycElt:
    return x.galois(t)


def relative_norm(x: CycElt, from_M: int, to_M: int) -> CycElt:
    """Norm from Q(mu_from_M) to Q(mu_to_M): product over the subgroup
    {t = 1 mod to_M} of (Z/from_M)^*.  Result is returned at conductor to_M.

    For elements of the maximal totally real subfields this computes the
    norm between the real fields as well: restriction identifies the Galois
    group of the real tower with this subgroup (odd conductors).
    """
    if x.M != from_M:
        raise CycError("element conductor mismatch")
    if from_M % to_M:
        raise CycError("conductors not nested")
    out = CycElt.one(from_M)
    for t in range(1, from_M):
        if t % to_M == 1 and math.gcd(t, from_M) == 1:
            out = out * x.galois(t)
    return out.descend(to_M)
