"""Arithmetic and linear algebra over Z/p^N[Gal(F_m/Q)] and its chi-parts.

Gal(F_m/Q) is cyclic of order (p-1)/2 * p^m, generated by the class of the
fixed generator e of (Z/p^(m+1))^* modulo +-1.  Group-ring elements are
coefficient tuples indexed by powers of that generator; multiplication is a
cyclic convolution over Z/p^N.  The subgroup of order (p-1)/2 plays the
role of Delta = Gal(F_0/Q) and the quotient of order p^m the role of the
p-layer; characters of Delta take values in the (p-1)-st roots of unity of
Z/p^N obtained by Teichmueller lifting.

Ideals are canonicalized by the Howell normal form of their Z/p^N-span
(closed under multiplication by the group generator), the chain-ring
substitute for reduced row echelon form: two ideals are equal iff their
Howell matrices are identical, and membership is decided by reduction.
"""

from dataclasses import dataclass
from functools import lru_cache
import itertools
import warnings

from . import kernels
from .arith import multiplicative_order, ord_p, teichmuller
from .cyclotomic import LevelParams


class GroupRingError(ValueError):
    pass


@lru_cache(maxsize=None)
def _dlog_table(p: int, m: int, e: int) -> dict[int, int]:
    """t mod p^(m+1) (up to sign) -> k with e^k = +-t."""
    mod = p ** (m + 1)
    order = (p - 1) * p**m // 2
    table = {}
    cur = 1
    for k in range(order):
        table[cur] = k
        table[mod - cur] = k
        cur = cur * e % mod
    return table


class GroupData:
    """The group G = Gal(F_m/Q) with its Delta x Gamma coordinates."""

    def __init__(self, params: LevelParams):
        self.params = params
        p, m = params.p, params.m
        self.p, self.m, self.N = p, m, params.N
        self.pN = params.pN
        self.delta_order = (p - 1) // 2
        self.gamma_order = p**m
        self.order = self.delta_order * self.gamma_order
        self.modulus = p ** (m + 1)

    def index_of_unit(self, t: int) -> int:
        """Index k of the class of t in G = <class of e>."""
        table = _dlog_table(self.p, self.m, self.params.e)
        t %= self.modulus
        if t not in table:
            raise GroupRingError(f"{t} is not a unit mod {self.modulus}")
        return table[t]

    def unit_for_index(self, k: int) -> int:
        return pow(self.params.e, k % self.order, self.modulus)

    def delta_gamma(self, k: int) -> tuple[int, int]:
        """Coordinates (a, b) with g_e^k = delta^a gamma^b."""
        d, gm = self.delta_order, self.gamma_order
        if d == 1:
            return 0, k % gm
        if gm == 1:
            return k % d, 0
        a = k * pow(gm, -1, d) % d
        b = k * pow(d, -1, gm) % gm
        return a, b

    def index_of_delta_gamma(self, a: int, b: int) -> int:
        return (a * self.gamma_order + b * self.delta_order) % self.order

    def __eq__(self, other):
        return isinstance(other, GroupData) and (self.p, self.m, self.N) == (
            other.p,
            other.m,
            other.N,
        )

    def __hash__(self):
        return hash((self.p, self.m, self.N))

    def __repr__(self):
        return f"GroupData(p={self.p}, m={self.m}, N={self.N})"


@dataclass(frozen=True)
class Character:
    """chi_j = omega^(2j) restricted to Delta; j = 0 is the trivial one.

    The value on the Delta-generator is T^(2*j*p^m) where T is the
    Teichmueller lift of e mod p^N, a root of unity of order dividing
    (p-1)/2 as required.
    """

    group: GroupData
    j: int

    def __post_init__(self):
        if not 0 <= self.j < self.group.delta_order:
            raise GroupRingError("character index out of range")

    @property
    def is_trivial(self) -> bool:
        return self.j == 0

    def value_on_delta_power(self, a: int) -> int:
        g = self.group
        T = teichmuller(g.params.e, g.p, g.N)
        return pow(T, 2 * self.j * g.gamma_order * a, g.pN)

    def generator_value(self) -> int:
        return self.value_on_delta_power(1)

    def label(self) -> str:
        return f"chi{self.j}"


def all_characters(group: GroupData):
    return [Character(group, j) for j in range(group.delta_order)]


def nontrivial_characters(group: GroupData):
    return [Character(group, j) for j in range(1, group.delta_order)]


class GroupRingElt:
    """Element of Z/p^N[G], coefficients indexed by powers of the generator."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupData, coeffs):
        self.group = group
        pN = group.pN
        if isinstance(coeffs, dict):
            dense = [0] * group.order
            for k, v in coeffs.items():
                dense[k % group.order] = (dense[k % group.order] + v) % pN
        else:
            dense = [c % pN for c in coeffs]
            if len(dense) != group.order:
                raise GroupRingError("coefficient length mismatch")
        self.coeffs = tuple(dense)

    @staticmethod
    def zero(group):
        return GroupRingElt(group, {})

    @staticmethod
    def one(group):
        return GroupRingElt(group, {0: 1})

    @staticmethod
    def group_element(group, k: int):
        return GroupRingElt(group, {k % group.order: 1})

    def __add__(self, other):
        self._check(other)
        pN = self.group.pN
        return GroupRingElt(
            self.group, [(x + y) % pN for x, y in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        pN = self.group.pN
        return GroupRingElt(
            self.group, [(x - y) % pN for x, y in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return GroupRingElt(self.group, [-x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElt(self.group, [other * x for x in self.coeffs])
        self._check(other)
        g = self.group
        return GroupRingElt(
            g,
            kernels.conv_cyclic_mod(
                list(self.coeffs), list(other.coeffs), g.order, g.pN
            ),
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = GroupRingElt.one(self.group)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def augmentation(self) -> int:
        return sum(self.coeffs) % self.group.pN

    def pr(self) -> int:
        """Coefficient of the identity group element."""
        return self.coeffs[0]

    def translate(self, k: int):
        """Multiplication by the group element g_e^k (index rotation)."""
        n = self.group.order
        k %= n
        return GroupRingElt(self.group, self.coeffs[n - k :] + self.coeffs[: n - k])

    def _check(self, other):
        if self.group != other.group:
            raise GroupRingError("group mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, GroupRingElt)
            and self.group == other.group
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.group, self.coeffs))

    def __repr__(self):
        return f"GroupRingElt({self.group}, {list(self.coeffs)})"


def chi_idempotent(chi: Character) -> GroupRingElt:
    """e_chi = |Delta|^-1 sum_a chi(delta^-a) delta^a, extended by 1 on Gamma."""
    g = chi.group
    d_inv = pow(g.delta_order, -1, g.pN)
    coeffs: dict[int, int] = {}
    for a in range(g.delta_order):
        idx = g.index_of_delta_gamma(a, 0)
        coeffs[idx] = d_inv * chi.value_on_delta_power(-a) % g.pN
    return GroupRingElt(g, coeffs)


class ChiRing:
    """The chi-part R_(F_m,N,chi), free of rank 1 over Z/p^N[Gamma_m-quotient].

    Elements are coefficient tuples of length p^m in the basis
    {e_chi * gamma^b}; multiplication is cyclic convolution.
    """

    def __init__(self, chi: Character):
        self.chi = chi
        self.group = chi.group
        self.size = self.group.gamma_order
        self.pN = self.group.pN

    def elt(self, coeffs) -> "ChiElt":
        return ChiElt(self, coeffs)

    def zero(self):
        return ChiElt(self, {})

    def one(self):
        return ChiElt(self, {0: 1})

    def scalar(self, c: int):
        return ChiElt(self, {0: c})

    def project(self, x: GroupRingElt) -> "ChiElt":
        """Compact coordinates of e_chi * x."""
        g = self.group
        out = [0] * self.size
        for a in range(g.delta_order):
            va = self.chi.value_on_delta_power(a)
            for b in range(self.size):
                c = x.coeffs[g.index_of_delta_gamma(a, b)]
                if c:
                    out[b] = (out[b] + va * c) % self.pN
        return ChiElt(self, out)

    def embed(self, x: "ChiElt") -> GroupRingElt:
        """e_chi-multiple of the full group ring representing x."""
        g = self.group
        e = chi_idempotent(self.chi)
        out = GroupRingElt.zero(g)
        for b, c in enumerate(x.coeffs):
            if c:
                out = out + c * e.translate(g.index_of_delta_gamma(0, b))
        return out

    def group_element_image(self, k: int) -> "ChiElt":
        """Image of the group element g_e^k: chi(delta^a) * gamma^b."""
        a, b = self.group.delta_gamma(k)
        return ChiElt(self, {b: self.chi.value_on_delta_power(a)})

    def __eq__(self, other):
        return (
            isinstance(other, ChiRing)
            and self.group == other.group
            and self.chi.j == other.chi.j
        )

    def __hash__(self):
        return hash((self.group, self.chi.j))

    def __repr__(self):
        return f"ChiRing(p={self.group.p}, m={self.group.m}, N={self.group.N}, {self.chi.label()})"


class ChiElt:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ChiRing, coeffs):
        self.ring = ring
        pN = ring.pN
        if isinstance(coeffs, dict):
            dense = [0] * ring.size
            for k, v in coeffs.items():
                dense[k % ring.size] = (dense[k % ring.size] + v) % pN
        else:
            dense = [c % pN for c in coeffs]
            if len(dense) != ring.size:
                raise GroupRingError("coefficient length mismatch")
        self.coeffs = tuple(dense)

    def __add__(self, other):
        self._check(other)
        pN = self.ring.pN
        return ChiElt(self.ring, [(x + y) % pN for x, y in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        pN = self.ring.pN
        return ChiElt(self.ring, [(x - y) % pN for x, y in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return ChiElt(self.ring, [-x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return ChiElt(self.ring, [other * x for x in self.coeffs])
        self._check(other)
        r = self.ring
        return ChiElt(
            r,
            kernels.conv_cyclic_mod(list(self.coeffs), list(other.coeffs), r.size, r.pN),
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def is_unit(self):
        """Unit iff the augmentation is a unit (local ring, Gamma a p-group)."""
        return sum(self.coeffs) % self.ring.group.p != 0

    def inverse(self):
        """Newton iteration from the augmentation inverse; the maximal ideal
        (p, gamma - 1) is nilpotent, so convergence is quadratic."""
        if not self.is_unit():
            raise GroupRingError("not a unit")
        r = self.ring
        inv = r.scalar(pow(sum(self.coeffs) % r.pN, -1, r.pN))
        for _ in range(64):
            err = self * inv - r.one()
            if err.is_zero():
                return inv
            inv = inv * (r.scalar(2) - self * inv)
        raise GroupRingError("inverse iteration failed")

    def _check(self, other):
        if self.ring != other.ring:
            raise GroupRingError("ring mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, ChiElt)
            and self.ring == other.ring
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"ChiElt({self.ring.chi.label()}, {list(self.coeffs)})"


# -- Howell normal form over Z/p^N ---------------------------------------


def howell_form(rows: list[list[int]], p: int, N: int) -> tuple[tuple[int, ...], ...]:
    """Canonical Howell basis of the Z/p^N-row span of ``rows``.

    Over the chain ring Z/p^N every span has a unique basis in which pivots
    are powers of p at strictly increasing columns, entries above a pivot
    p^v are reduced mod p^v, and the span is saturated: whenever a pivot has
    valuation v > 0 the stabilized multiple p^(N-v) * row (which starts
    further right) is fed back into the elimination.
    """
    pN = p**N
    if not rows:
        return ()
    ncols = len(rows[0])
    active = [[c % pN for c in r] for r in rows if any(c % pN for c in r)]
    result: list[list[int]] = []  # echelon rows in pivot-column order
    for col in range(ncols):
        having = [r for r in active if r[col]]
        if not having:
            continue
        pivot = min(having, key=lambda r: ord_p(r[col], p))
        active.remove(pivot)
        v = ord_p(pivot[col], p)
        pv = p**v
        inv = pow(pivot[col] // pv, -1, pN)
        pivot = [c * inv % pN for c in pivot]
        rest = []
        for r in active:
            if r[col]:
                f = r[col] // pv
                r = [(x - f * y) % pN for x, y in zip(r, pivot)]
            if any(r):
                rest.append(r)
        active = rest
        if v:
            stab = [c * p ** (N - v) % pN for c in pivot]
            if any(stab):
                active.append(stab)
        result.append(pivot)
    # normalize entries above each pivot modulo the pivot value
    for i in range(len(result)):
        col = next(j for j, c in enumerate(result[i]) if c)
        pv = result[i][col]
        for k in range(i):
            f = result[k][col] // pv
            if f:
                result[k] = [
                    (x - f * y) % pN for x, y in zip(result[k], result[i])
                ]
    return tuple(tuple(r) for r in result)


def howell_reduce(vector, basis, p: int, N: int):
    """Remainder of vector modulo the Howell basis rows."""
    pN = p**N
    v = [c % pN for c in vector]
    for row in basis:
        col = next(i for i, c in enumerate(row) if c)
        if v[col]:
            pv = row[col]
            if v[col] % pv == 0:
                f = v[col] // pv
                v = [(x - f * y) % pN for x, y in zip(v, row)]
    return v


class IdealNF:
    """Canonical form of an ideal of a group ring (full or chi-part).

    The ideal is viewed as the Z/p^N-span of the translates of its
    generators by all group elements; the Howell form of that span is the
    canonical generating matrix.
    """

    __slots__ = ("ring", "rows")

    def __init__(self, ring, generators):
        self.ring = ring
        p, N = _ring_p_N(ring)
        size = _ring_size(ring)
        span = []
        for gen in generators:
            coeffs = list(gen.coeffs)
            for shift in range(size):
                span.append(coeffs[size - shift :] + coeffs[: size - shift])
        self.rows = howell_form(span, p, N)

    @classmethod
    def from_rows(cls, ring, rows):
        return cls(ring, [_ring_elt(ring, r) for r in rows])

    def contains(self, elt) -> bool:
        p, N = _ring_p_N(self.ring)
        return not any(howell_reduce(list(elt.coeffs), self.rows, p, N))

    def contains_ideal(self, other: "IdealNF") -> bool:
        p, N = _ring_p_N(self.ring)
        return all(
            not any(howell_reduce(list(r), self.rows, p, N)) for r in other.rows
        )

    def __eq__(self, other):
        return (
            isinstance(other, IdealNF)
            and self.ring == other.ring
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ring, self.rows))

    def is_zero(self) -> bool:
        return not self.rows

    def is_unit_ideal(self) -> bool:
        size = _ring_size(self.ring)
        identity = [0] * size
        identity[0] = 1
        p, N = _ring_p_N(self.ring)
        return not any(howell_reduce(identity, self.rows, p, N))

    def product(self, other: "IdealNF") -> "IdealNF":
        gens = [
            _ring_elt(self.ring, a) * _ring_elt(self.ring, b)
            for a in self.rows
            for b in other.rows
        ]
        return IdealNF(self.ring, gens)

    def generated_by_p_power(self) -> int | None:
        """t when the ideal equals (p^t) (t = N meaning the zero ideal)."""
        p, N = _ring_p_N(self.ring)
        for t in range(N + 1):
            if self == principal_p_power_ideal(self.ring, t):
                return t
        return None

    def serialize(self) -> dict:
        g = _ring_group(self.ring)
        return {
            "p": g.p,
            "m": g.m,
            "N": g.N,
            "chi": self.ring.chi.j if isinstance(self.ring, ChiRing) else None,
            "rows": [list(r) for r in self.rows],
        }

    def __repr__(self):
        return f"IdealNF({self.ring!r}, rows={[list(r) for r in self.rows]})"


def principal_p_power_ideal(ring, t: int) -> IdealNF:
    p, N = _ring_p_N(ring)
    if t >= N:
        return IdealNF(ring, [])
    one = _ring_one(ring)
    return IdealNF(ring, [p**t * one])


def _ring_p_N(ring):
    g = _ring_group(ring)
    return g.p, g.N


def _ring_group(ring):
    return ring.group if isinstance(ring, (ChiRing,)) else ring


def _ring_size(ring):
    return ring.size if isinstance(ring, ChiRing) else ring.order


def _ring_elt(ring, coeffs):
    if isinstance(ring, ChiRing):
        return ChiElt(ring, list(coeffs))
    return GroupRingElt(ring, list(coeffs))


def _ring_one(ring):
    if isinstance(ring, ChiRing):
        return ring.one()
    return GroupRingElt.one(ring)


# -- higher Fitting ideals ------------------------------------------------


def fitting_ideal(i: int, presentation: list[list], ring) -> IdealNF:
    """i-th Fitting ideal of the module presented by the given matrix.

    ``presentation`` has n rows (generators) and k columns (relations) with
    entries in ``ring``.  For 0 <= i < n and k >= n - i the ideal is
    generated by all (n-i) x (n-i) minors; it is 0 when k < n - i and the
    unit ideal when i >= n.
    """
    n = len(presentation)
    if i < 0:
        raise GroupRingError("negative Fitting index")
    if i >= n:
        return IdealNF(ring, [_ring_one(ring)])
    k = len(presentation[0]) if n else 0
    size = n - i
    if k < size:
        return IdealNF(ring, [])
    if size > 8:
        warnings.warn("minor enumeration beyond 8x8; expect combinatorial cost")
    cache: dict = {}
    minors = []
    for rows in itertools.combinations(range(n), size):
        for cols in itertools.combinations(range(k), size):
            minors.append(_det_memo(presentation, rows, cols, ring, cache))
    return IdealNF(ring, minors)


def _det_memo(mat, rows, cols, ring, cache):
    """Laplace expansion along the first row, memoized on (rows, cols)."""

    def det(rs, cs):
        if not rs:
            return _ring_one(ring)
        key = (rs, cs)
        if key in cache:
            return cache[key]
        r0, rest = rs[0], rs[1:]
        total = None
        for idx, c in enumerate(cs):
            a = mat[r0][c]
            if a.is_zero():
                continue
            term = a * det(rest, cs[:idx] + cs[idx + 1 :])
            if idx % 2:
                term = -term
            total = term if total is None else total + term
        if total is None:
            total = _ring_zero(ring)
        cache[key] = total
        return total

    return det(tuple(rows), tuple(cols))


def _ring_zero(ring):
    if isinstance(ring, ChiRing):
        return ring.zero()
    return GroupRingElt.zero(ring)


def elementary_divisors(presentation: list[list], ring: ChiRing) -> list[int]:
    """p-power exponents d_1 >= d_2 >= ... with module = sum R/p^(d_i).

    Requires the base ring to be a chi-part (local).  Recovered from the
    Fitting chain: with c_i the exponent of Fitt_i = (p^(c_i)), the i-th
    divisor exponent is c_(i-1) - c_i.  Raises when some Fitting ideal is
    not generated by a power of p (the module is not of cyclic p-power
    type, possible over non-chain base rings).
    """
    if not isinstance(ring, ChiRing):
        raise GroupRingError("elementary divisors need a chi-part (local ring)")
    n = len(presentation)
    exps = []
    cs = []
    for i in range(n + 1):
        f = fitting_ideal(i, presentation, ring)
        t = f.generated_by_p_power()
        if t is None:
            raise GroupRingError(
                f"Fitt_{i} is not generated by a p-power; no divisor chain"
            )
        cs.append(t)
        if t == 0:
            break
    for i in range(1, len(cs)):
        d = cs[i - 1] - cs[i]
        if d < 0:
            raise GroupRingError("non-monotone Fitting chain")
        if d:
            exps.append(d)
    if cs and cs[-1] != 0:
        raise GroupRingError("Fitting chain did not reach the unit ideal")
    return sorted(exps, reverse=True)
