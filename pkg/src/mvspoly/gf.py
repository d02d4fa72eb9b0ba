"""Arithmetic in F_{p^N} with a distinguished base subfield F_q, q = p^k.

A FieldCtx fixes one ambient field F_{p^N} = F_p[y]/(modulus) together with
the tower F_p < F_q < F_{q^n}, N = k*n.  The modulus is the lexicographically
least monic irreducible of degree N over F_p, coefficients compared low
degree first, so equal parameters always rebuild the identical field.

Elements are immutable length-N tuples of F_p digits, low degree first.
Subfields are never separate objects: F_{q^d} is the fixed set of the d-th
power of the q-Frobenius inside the one ambient field.

All operations are pure and a context is immutable after construction, so
contexts and elements can be shared freely across threads.
"""

from __future__ import annotations

import functools
import math

from .errors import GuardError, InputError
from .linalg import FpSpan

# Multiplicative exp/log tables are built for fields up to this order.
TABLE_LIMIT = 1 << 20
# q^n - 1 must stay comfortably inside 64-bit exponent arithmetic.
SIZE_LIMIT = 1 << 62


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def divisors(m: int) -> list[int]:
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


# ---------------------------------------------------------------------------
# dense F_p[y] helpers, only used to find and apply the modulus
# ---------------------------------------------------------------------------

def _dense_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _dense_mulmod(a, b, mod, p):
    res = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    # reduce by the monic modulus
    dm = len(mod) - 1
    for i in range(len(res) - 1, dm - 1, -1):
        c = res[i]
        if c:
            res[i] = 0
            for j in range(dm):
                res[i - dm + j] = (res[i - dm + j] - c * mod[j]) % p
    return _dense_trim(res)


def _dense_powmod_xp(e_log_p, mod, p):
    """x^(p^e_log_p) mod the monic polynomial mod, via repeated p-th powers."""
    r = [0, 1]
    for _ in range(e_log_p):
        # r^p via square-and-multiply on the exponent p
        base, out, e = r, [1], p
        while e:
            if e & 1:
                out = _dense_mulmod(out, base, mod, p)
            e >>= 1
            if e:
                base = _dense_mulmod(base, base, mod, p)
        r = out
    return r


def _dense_gcd(a, b, p):
    a, b = list(a), list(b)
    _dense_trim(a)
    _dense_trim(b)
    while b:
        # a mod b
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = (a[-1] * inv) % p
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            _dense_trim(a)
            if not a:
                break
        a, b = b, a
    return a


def _is_irreducible(coeffs, p):
    """Monic polynomial over F_p, given as a full coefficient list."""
    n = len(coeffs) - 1
    if n < 1:
        return False
    if coeffs[0] == 0:
        return n == 1          # divisible by x; only x itself is irreducible
    # x^(p^n) == x mod f
    r = _dense_powmod_xp(n, coeffs, p)
    rx = list(r)
    while len(rx) < 2:
        rx.append(0)
    rx[1] = (rx[1] - 1) % p
    if _dense_trim(rx):
        return False
    # gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n
    m = n
    primes = set()
    d = 2
    while d * d <= m:
        while m % d == 0:
            primes.add(d)
            m //= d
        d += 1
    if m > 1:
        primes.add(m)
    for r in primes:
        s = _dense_powmod_xp(n // r, coeffs, p)
        sx = list(s)
        while len(sx) < 2:
            sx.append(0)
        sx[1] = (sx[1] - 1) % p
        g = _dense_gcd(sx, coeffs, p)
        if len(g) != 1:
            return False
    return True


def find_modulus(p: int, n: int) -> tuple:
    """Lexicographically least monic irreducible of degree n over F_p.

    Candidates (c_0, ..., c_{n-1}) are compared low-degree digit first.
    """
    if n == 1:
        return (0, 1)
    for idx in range(p ** n):
        digits = []
        v = idx
        for _ in range(n):
            digits.append(v % p)
            v //= p
        digits.reverse()          # idx counts with c_0 most significant
        coeffs = digits + [1]
        if coeffs[0] != 0 and _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# the field context
# ---------------------------------------------------------------------------

class FieldCtx:
    """The ambient field F_{p^N} with base subfield F_q = F_{p^k}, N = k*n."""

    def __init__(self, p: int, k: int, n: int, use_table: bool | None = None):
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        if k < 1 or n < 1:
            raise InputError("k and n must be positive")
        if p ** (k * n) > SIZE_LIMIT:
            raise InputError("field too large for 64-bit exponent arithmetic")
        self.p = p
        self.k = k
        self.n = n
        self.N = k * n
        self.q = p ** k
        self.Q = p ** self.N
        self.modulus = find_modulus(p, self.N)
        self.zero = (0,) * self.N
        self.one = tuple([1] + [0] * (self.N - 1))
        # reduction rows: y^(N+j) mod modulus for j = 0..N-2
        self._red = self._reduction_rows()
        self._elements = None
        self._sub_elems = {}
        self._sub_basis = {}
        self._caches = {}
        if use_table is None:
            use_table = self.Q <= TABLE_LIMIT
        self.use_table = use_table
        self.generator = None
        self._exp = None
        self._log = None
        if use_table:
            if self.Q > TABLE_LIMIT:
                raise GuardError("multiplicative table refused above 2^20 elements")
            self._build_table()

    # -- construction helpers ------------------------------------------------

    def _reduction_rows(self):
        p, N, mod = self.p, self.N, self.modulus
        rows = []
        cur = [(-mod[i]) % p for i in range(N)]      # y^N
        rows.append(tuple(cur))
        for _ in range(N - 2):
            nxt = [0] + cur[:-1]
            c = cur[-1]
            if c:
                for i in range(N):
                    nxt[i] = (nxt[i] - c * mod[i]) % p
            else:
                nxt = [v % p for v in nxt]
            cur = nxt
            rows.append(tuple(cur))
        return rows

    def _mul_raw(self, a, b):
        p, N = self.p, self.N
        conv = [0] * (2 * N - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = [c % p for c in conv[:N]]
        for j in range(N - 1):
            c = conv[N + j] % p
            if c:
                row = self._red[j]
                for i in range(N):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def _pow_raw(self, a, e):
        r = self.one
        base = a
        while e:
            if e & 1:
                r = self._mul_raw(r, base)
            e >>= 1
            if e:
                base = self._mul_raw(base, base)
        return r

    def _find_generator(self):
        """First multiplicative generator in canonical element order."""
        if self.generator is not None:
            return self.generator
        Q = self.Q
        m = Q - 1
        primes = set()
        d = 2
        while d * d <= m:
            while m % d == 0:
                primes.add(d)
                m //= d
            d += 1
        if m > 1:
            primes.add(m)
        for a in self.elements():
            if a == self.zero:
                continue
            if all(self._pow_raw(a, (Q - 1) // r) != self.one for r in primes):
                self.generator = a
                return a
        raise RuntimeError("no multiplicative generator found")  # unreachable

    def _build_table(self):
        Q = self.Q
        gen = self._find_generator()
        exp = [self.one] * (Q - 1)
        log = {}
        cur = self.one
        for i in range(Q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._mul_raw(cur, gen)
        self.generator = gen
        self._exp = exp
        self._log = log

    # -- canonical element order --------------------------------------------

    def elem_from_int(self, v: int) -> tuple:
        digits = []
        for _ in range(self.N):
            digits.append(v % self.p)
            v //= self.p
        return tuple(digits)

    def elem_to_int(self, a: tuple) -> int:
        v = 0
        for d in reversed(a):
            v = v * self.p + d
        return v

    def elements(self) -> list:
        """All field elements in canonical coefficient-vector order."""
        if self._elements is None:
            if self.Q > TABLE_LIMIT:
                raise GuardError("full element scan refused above 2^20 elements")
            self._elements = [self.elem_from_int(i) for i in range(self.Q)]
        return self._elements

    # -- ring operations ------------------------------------------------------

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def smul(self, c: int, a):
        """Scalar multiple by an integer (an F_p scalar)."""
        p = self.p
        c %= p
        return tuple((c * x) % p for x in a)

    def mul(self, a, b):
        if self.use_table:
            if a == self.zero or b == self.zero:
                return self.zero
            return self._exp[(self._log[a] + self._log[b]) % (self.Q - 1)]
        return self._mul_raw(a, b)

    def inv(self, a):
        if a == self.zero:
            raise InputError("division by zero field element")
        if self.use_table:
            return self._exp[(-self._log[a]) % (self.Q - 1)]
        return self._pow_raw(a, self.Q - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow_elem(self, a, e: int):
        """a^e for e >= 0; exponents reduce mod Q-1 on nonzero elements."""
        if e < 0:
            raise InputError("negative exponent")
        if a == self.zero:
            return self.one if e == 0 else self.zero
        if self.use_table:
            return self._exp[(self._log[a] * e) % (self.Q - 1)]
        return self._pow_raw(a, e % (self.Q - 1) if e else 0)

    def int_elem(self, c: int):
        """The element c*1 for an integer c."""
        return self.smul(c, self.one)

    # -- Frobenius and subfields ----------------------------------------------

    def frobenius_p(self, a, m: int):
        """a^(p^m); m reduced mod N, so negative m is the inverse map."""
        m %= self.N
        if m == 0 or a == self.zero or a == self.one:
            return a
        return self.pow_elem(a, self.p ** m)

    def frobenius(self, a, j: int):
        """a^(q^j); j reduced mod n, so negative j is the inverse map."""
        return self.frobenius_p(a, (j % self.n) * self.k)

    def in_subfield(self, a, d: int) -> bool:
        if self.n % d != 0:
            raise InputError(f"d = {d} does not divide n = {self.n}")
        return self.frobenius(a, d) == a

    def subfield_elements(self, d: int) -> list:
        """All elements of F_{q^d}, canonical order.  Requires d | n."""
        if d not in self._sub_elems:
            if self.n % d != 0:
                raise InputError(f"d = {d} does not divide n = {self.n}")
            out = [a for a in self.elements() if self.frobenius(a, d) == a]
            assert len(out) == self.q ** d
            self._sub_elems[d] = out
        return self._sub_elems[d]

    def fp_basis_of_fq(self) -> list:
        """F_p-basis of F_q inside the ambient field (canonical greedy scan)."""
        key = ("fpq",)
        if key not in self._caches:
            span = FpSpan(self.p, self.N)
            basis = []
            for a in self.subfield_elements(1):
                if span.add(a):
                    basis.append(a)
            assert len(basis) == self.k
            self._caches[key] = basis
        return self._caches[key]

    def fq_independent(self, kept: list, candidate) -> bool:
        """Is candidate outside the F_q-span of kept?  (span tracked per call)"""
        span = FpSpan(self.p, self.N)
        for w in kept:
            for u in self.fp_basis_of_fq():
                span.add(self.mul(u, w))
        return not span.contains(candidate)

    def subfield_basis(self, d: int) -> list:
        """d elements of F_{q^d} forming an F_q-basis, chosen deterministically
        by scanning the canonical element order and keeping what is new."""
        if d not in self._sub_basis:
            span = FpSpan(self.p, self.N)
            basis = []
            fpq = self.fp_basis_of_fq()
            for a in self.subfield_elements(d):
                if a == self.zero:
                    continue
                if span.contains(a):
                    continue
                basis.append(a)
                for u in fpq:
                    span.add(self.mul(u, a))
                if len(basis) == d:
                    break
            assert len(basis) == d
            self._sub_basis[d] = basis
        return self._sub_basis[d]

    def solve_power(self, alpha, e: int):
        """Some beta with beta^e = alpha, or None.  Scans powers of the
        multiplicative generator in order and returns the first hit."""
        if alpha == self.zero:
            raise InputError("solve_power needs a nonzero target")
        if e < 1:
            raise InputError("exponent must be positive")
        M = self.Q - 1
        if self.use_table:
            a = self._log[alpha]
            g = __import__("math").gcd(e, M)
            if a % g != 0:
                return None
            ee, aa, mm = e // g, a // g, M // g
            j = (aa * pow(ee, -1, mm)) % mm
            return self._exp[j]
        cur = self.one
        for _ in range(M):
            if self.pow_elem(cur, e) == alpha:
                return cur
            cur = self.mul(cur, self.generator or self.elements()[1])
        return None

    # -- text forms -----------------------------------------------------------

    def spec_str(self) -> str:
        return f"{self.p}^{self.N}:{self.k}"

    def format_elem(self, a) -> str:
        return ",".join(str(d) for d in a)

    def parse_elem(self, s: str) -> tuple:
        s = s.strip()
        if s == "g":
            if self.N == 1:
                raise InputError("no generator digit in a prime field")
            return tuple([0, 1] + [0] * (self.N - 2))
        try:
            digits = [int(t) for t in s.split(",")]
        except ValueError as exc:
            raise InputError(f"bad element {s!r}") from exc
        if len(digits) > self.N:
            raise InputError(f"element {s!r} has more than {self.N} digits")
        if any(d < 0 or d >= self.p for d in digits):
            raise InputError(f"element digits must lie in [0,{self.p})")
        digits += [0] * (self.N - len(digits))
        return tuple(digits)

    def __repr__(self):
        return f"FieldCtx({self.p}^{self.N}:{self.k})"


@functools.lru_cache(maxsize=None)
def make_field(p: int, k: int, n: int) -> FieldCtx:
    """Deterministic field constructor; identical arguments share one context."""
    return FieldCtx(p, k, n)


def parse_field_spec(spec: str) -> FieldCtx:
    """Parse "p^N:k" (e.g. "2^6:1" is F_64 with base F_2)."""
    s = spec.strip()
    try:
        base, _, kpart = s.partition(":")
        k = int(kpart) if kpart else 1
        pstr, _, npow = base.partition("^")
        p = int(pstr)
        N = int(npow) if npow else 1
    except ValueError as exc:
        raise InputError(f"bad field spec {spec!r}") from exc
    if N % k != 0:
        raise InputError(f"base exponent k = {k} must divide N = {N}")
    return make_field(p, k, N // k)
