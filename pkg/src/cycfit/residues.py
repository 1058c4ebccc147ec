"""Embedding fixtures and residue-field shadows.

The family of embeddings of the algebraic numbers into each q-adic field is
realized by one deterministic choice per prime q: a generator t_q of F_q^*.
All roots of unity of order dividing q - 1 then reduce compatibly via
z_d -> t_q^((q-1)/d).  Roots of q-power order reduce to 1 (they lie above
the ramified part).  Everything downstream (shadow vectors, reciprocity
dlogs, valuation bookkeeping) is deterministic given the fixture seed.

Valuations at unramified primes are computed exactly by evaluating the
element at a Newton-lifted root of unity inside the unramified extension
Z_q[y]/(g(y)) truncated at q^K, one evaluation per Frobenius orbit.
"""

from dataclasses import dataclass
import math
import random

from .arith import (
    factorize,
    hensel_root_of_unity,
    is_prime,
    is_primitive_root,
    multiplicative_order,
    ord_p,
)
from .cyclotomic import CycElt, CycError


class NotSplitError(CycError):
    """The prime does not admit the requested residue map."""


class ReductionZero(ArithmeticError):
    """Reduction hit 0: the element is not a unit at the prime.

    Reported distinctly so callers can fall back to valuation bookkeeping.
    """


class EmbeddingFixture:
    """Seeded deterministic generators t_q of F_q^*, one per prime."""

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self._gens: dict[int, int] = {}

    def generator(self, q: int) -> int:
        if q in self._gens:
            return self._gens[q]
        if not is_prime(q):
            raise ValueError(f"{q} is not prime")
        rng = random.Random(self.seed * (1 << 64) + q)
        while True:
            t = rng.randrange(2, q)
            if is_primitive_root(t, q):
                self._gens[q] = t
                return t

    def set_generator(self, q: int, t: int, validate: bool = True) -> None:
        if validate and not is_primitive_root(t, q):
            raise ValueError(f"{t} is not a primitive root mod {q}")
        self._gens[q] = t

    # -- fixture file: human-readable key/value records ----------------
    def dump(self, path) -> None:
        lines = [f"seed={self.seed}"]
        for q in sorted(self._gens):
            lines.append(f"ell={q} t={self._gens[q]} seed={self.seed}")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def load(cls, path, validate: bool = True) -> "EmbeddingFixture":
        fixture = None
        with open(path) as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                fields = dict(part.split("=", 1) for part in line.split())
                if "ell" in fields:
                    if fixture is None:
                        fixture = cls(int(fields.get("seed", 0)))
                    fixture.set_generator(
                        int(fields["ell"]), int(fields["t"]), validate=validate
                    )
                elif "seed" in fields and fixture is None:
                    fixture = cls(int(fields["seed"]))
        if fixture is None:
            raise ValueError(f"no fixture records in {path}")
        return fixture


def reduce_at_prime(x: CycElt, q: int, fixture: EmbeddingFixture, coset_t: int = 1) -> int:
    """Image of galois_apply(coset_t, x) in F_q at the fixture prime above q.

    The conductor may contain q (ramified part): q-power roots of unity
    reduce to 1.  The prime-to-q part M' must satisfy q = 1 (mod M').
    Raises :class:`ReductionZero` when the image vanishes.
    """
    M = x.M
    v = ord_p(M, q) if M % q == 0 else 0
    Mp = M // q**v
    if (q - 1) % Mp:
        raise NotSplitError(f"{q} is not split for conductor {Mp}")
    t = fixture.generator(q)
    omega = pow(t, (q - 1) // Mp, q)
    a = pow(q**v, -1, Mp) if v else 1
    x = x.galois(coset_t) if coset_t % M != 1 else x
    val = 0
    for k, c in enumerate(x.coeffs):
        if c:
            val = (val + c * pow(omega, a * k % Mp, q)) % q
    if val == 0:
        raise ReductionZero(f"reduction of element at {q} is zero")
    return val


def residue_root(q: int, M: int, fixture: EmbeddingFixture) -> int:
    """The fixture image of z_M in F_q (q = 1 mod M)."""
    if (q - 1) % M:
        raise NotSplitError(f"{q} != 1 mod {M}")
    return pow(fixture.generator(q), (q - 1) // M, q)


# -- exact valuations at unramified primes ------------------------------


class UnramifiedRing:
    """Z/q^K [y] / (g(y)) with g monic and irreducible mod q (unramified).

    Elements are coefficient tuples of length deg(g).  The q-adic valuation
    of a nonzero element is the minimum of the coefficient valuations.
    """

    def __init__(self, q: int, K: int, g: tuple[int, ...]):
        self.q = q
        self.K = K
        self.mod = q**K
        self.g = tuple(c % self.mod for c in g)
        self.deg = len(g) - 1

    def one(self):
        return tuple([1] + [0] * (self.deg - 1))

    def from_int(self, c):
        return tuple([c % self.mod] + [0] * (self.deg - 1))

    def mul(self, a, b):
        mod = self.mod
        conv = [0] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] = (conv[i + j] + x * y) % mod
        # reduce mod monic g
        for i in range(len(conv) - 1, self.deg - 1, -1):
            c = conv[i]
            if c:
                conv[i] = 0
                off = i - self.deg
                for j in range(self.deg):
                    conv[off + j] = (conv[off + j] - c * self.g[j]) % mod
        return tuple(conv[: self.deg])

    def pow(self, a, n: int):
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def inverse(self, a):
        """Inverse of a unit (a nonzero mod q), by Hensel from F_q."""
        inv = self._inverse_mod_q(a)
        prec = 1
        while prec < self.K:
            prec *= 2
            # i <- i * (2 - a*i)
            two = self.from_int(2)
            ai = self.mul(a, inv)
            corr = tuple((x - y) % self.mod for x, y in zip(two, ai))
            inv = self.mul(inv, corr)
        return inv

    def _inverse_mod_q(self, a):
        q = self.q
        g = [c % q for c in self.g]
        a0 = [c % q for c in a]
        # extended gcd of a0 and g over F_q
        r0, r1 = g, a0
        s0, s1 = [0], [1]
        while any(r1):
            qpoly, rem = _fq_divmod(r0, r1, q)
            r0, r1 = r1, rem
            s0, s1 = s1, _fq_sub(s0, _fq_mul(qpoly, s1, q), q)
        if len([c for c in r0 if c]) == 0 or _fq_deg(r0) != 0:
            raise ZeroDivisionError("not a unit in the residue field")
        c_inv = pow(r0[0], -1, q)
        inv0 = [x * c_inv % q for x in s0]
        inv0 += [0] * (self.deg - len(inv0))
        return tuple(inv0[: self.deg])

    def valuation(self, a) -> int:
        """q-adic valuation; returns K (the precision) for 0 mod q^K."""
        best = self.K
        for c in a:
            if c:
                best = min(best, ord_p(c, self.q))
                if best == 0:
                    return 0
        return best


def _fq_deg(a):
    for i in range(len(a) - 1, -1, -1):
        if a[i]:
            return i
    return -1


def _fq_sub(a, b, q):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [(x - y) % q for x, y in zip(a, b)]


def _fq_mul(a, b, q):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return out


def _fq_divmod(a, b, q):
    a = list(a)
    db = _fq_deg(b)
    if db < 0:
        raise ZeroDivisionError
    inv = pow(b[db], -1, q)
    quo = [0] * max(1, len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db] * inv % q
        if c:
            quo[i] = c
            for j in range(db + 1):
                a[i + j] = (a[i + j] - c * b[j]) % q
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return quo, a


def _find_irreducible(q: int, f: int, seed: int) -> tuple[int, ...]:
    """Monic irreducible of degree f over F_q, deterministic given seed."""
    if f == 1:
        return (0, 1)
    rng = random.Random(seed * (1 << 64) + q * 1009 + f)
    fac = factorize(f)
    while True:
        g = [rng.randrange(q) for _ in range(f)] + [1]
        x = [0, 1]
        # frob^k(x) mod g
        frob = x
        ok = True
        for k in range(1, f + 1):
            frob = _fq_pow_mod(frob, q, g, q)
            if k < f and k in {f // r for r in fac}:
                d = _fq_gcd(_fq_sub(frob, x, q), g, q)
                if _fq_deg(d) != 0:
                    ok = False
                    break
        if ok and _fq_deg(_fq_sub(frob, x, q)) < 0:
            return tuple(g)


def _fq_pow_mod(a, n, g, q):
    out = [1]
    base = _fq_divmod(a, g, q)[1]
    while n:
        if n & 1:
            out = _fq_divmod(_fq_mul(out, base, q), g, q)[1]
        base = _fq_divmod(_fq_mul(base, base, q), g, q)[1]
        n >>= 1
    return out


def _fq_gcd(a, b, q):
    while _fq_deg(b) >= 0:
        a, b = b, _fq_divmod(a, b, q)[1]
    return a


@dataclass
class ValuationContext:
    """Evaluation data for exact valuations of Z[mu_M]-elements above q."""

    q: int
    M: int
    f: int  # residue degree = order of q mod M
    ring: UnramifiedRing
    omega: tuple  # lifted root of unity of order M

    @classmethod
    def create(cls, q: int, M: int, fixture: EmbeddingFixture, K: int = 12):
        if math.gcd(q, M) != 1:
            raise NotSplitError("ramified prime: valuations out of scope")
        f = multiplicative_order(q % M, M, _unit_group_order(M))
        if f == 1:
            ring = UnramifiedRing(q, K, (0, 1))
            r = residue_root(q, M, fixture)
            omega = (hensel_root_of_unity(r, M, q, K),)
            return cls(q=q, M=M, f=f, ring=ring, omega=omega)
        g = _find_irreducible(q, f, fixture.seed)
        ring = UnramifiedRing(q, K, g)
        omega = _lift_order_M_root(ring, M, fixture.seed)
        return cls(q=q, M=M, f=f, ring=ring, omega=omega)

    def evaluate(self, x: CycElt, root_power: int = 1):
        """x evaluated at omega^root_power, as a ring element."""
        if x.M != self.M:
            raise CycError("conductor mismatch")
        acc = self.ring.from_int(0)
        mod = self.ring.mod
        pw = self.ring.pow(self.omega, root_power % self.M)
        cur = self.ring.one()
        # Horner in omega^root_power
        coeffs = x.coeffs
        acc = self.ring.from_int(coeffs[-1])
        for k in range(len(coeffs) - 2, -1, -1):
            acc = self.ring.mul(acc, pw)
            if coeffs[k]:
                acc = tuple(
                    (a + b) % mod
                    for a, b in zip(acc, self.ring.from_int(coeffs[k]))
                )
        return acc

    def valuation(self, x: CycElt, root_power: int = 1) -> int:
        v = self.ring.valuation(self.evaluate(x, root_power))
        if v >= self.ring.K:
            raise ArithmeticError(
                f"valuation at {self.q} exceeds precision K={self.ring.K}"
            )
        return v

    def orbit_representatives(self) -> list[int]:
        """Primitive residues mod M up to the Frobenius action j -> q*j."""
        seen, reps = set(), []
        for j in range(1, self.M):
            if math.gcd(j, self.M) != 1 or j in seen:
                continue
            reps.append(j)
            k = j
            while True:
                seen.add(k)
                k = k * self.q % self.M
                if k == j:
                    break
        return reps


def _unit_group_order(M: int) -> int:
    out = 1
    for p, a in factorize(M).items():
        out *= (p - 1) * p ** (a - 1)
    return out


def _lift_order_M_root(ring: UnramifiedRing, M: int, seed: int):
    q, f = ring.q, ring.deg
    size = q**f - 1
    if size % M:
        raise NotSplitError("no root of unity of order M in the residue field")
    rng = random.Random(seed * (1 << 64) + q * 7919 + M)
    while True:
        z = tuple(rng.randrange(q) for _ in range(f))
        if not any(z):
            continue
        w0 = _fq_pow_ring(ring, z, size // M)
        if _order_is(ring, w0, M):
            break
    # Newton lift w of w0 with w^M = 1 at full precision
    w = w0
    prec = 1
    while prec < ring.K:
        prec *= 2
        wm = ring.pow(w, M)
        err = tuple((c - d) % ring.mod for c, d in zip(wm, ring.one()))
        deriv = ring.mul(ring.from_int(M), ring.pow(w, M - 1))
        w = tuple(
            (a - b) % ring.mod
            for a, b in zip(w, ring.mul(err, ring.inverse(deriv)))
        )
    return w


def _fq_pow_ring(ring: UnramifiedRing, a, n: int):
    # power computed mod q only (used for order checks before lifting)
    q = ring.q
    g = [c % q for c in ring.g]
    out = [1]
    base = list(a)
    while n:
        if n & 1:
            out = _fq_divmod(_fq_mul(out, base, q), g, q)[1]
        base = _fq_divmod(_fq_mul(base, base, q), g, q)[1]
        n >>= 1
    out += [0] * (ring.deg - len(out))
    return tuple(c % ring.mod for c in out[: ring.deg])


def _order_is(ring: UnramifiedRing, w, M: int) -> bool:
    for r in factorize(M):
        if _is_one_mod_q(ring, _fq_pow_ring(ring, w, M // r)):
            return False
    return _is_one_mod_q(ring, _fq_pow_ring(ring, w, M))


def _is_one_mod_q(ring: UnramifiedRing, a) -> bool:
    q = ring.q
    return a[0] % q == 1 and all(c % q == 0 for c in a[1:])
