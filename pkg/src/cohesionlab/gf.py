"""Exact finite-field arithmetic GF(p^m).

Elements carry canonical integer labels in 0..q-1: the base-p positional
encoding of their polynomial coefficients (constant term is the least
significant digit). For GF(4) with modulus z^2+z+1 this maps z -> 2 and
z+1 -> 3. Multiplication and inversion go through log/antilog tables
built from the smallest primitive element at construction time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import FieldError

MAX_ORDER = 1 << 16
PRINT_LIMIT = 64


def is_prime(x: int) -> bool:
    if x < 2:
        return False
    d = 2
    while d * d <= x:
        if x % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# Polynomials over GF(p): coefficient tuples, ascending powers
# ---------------------------------------------------------------------------

def poly_trim(coeffs) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a, b, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return poly_trim(out)


def poly_mod(a, mod, p: int) -> tuple:
    """Remainder of a divided by a monic polynomial mod, coefficients mod p."""
    a = list(a)
    d = len(mod) - 1
    while len(a) > d:
        lead = a[-1] % p
        if lead:
            for i in range(d + 1):
                a[len(a) - 1 - d + i] = (a[len(a) - 1 - d + i] - lead * mod[i]) % p
        a.pop()
    return poly_trim(a)


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for v in range(p**d):
            div = _coeffs_from_value(v, p, d) + (1,)
            if not poly_mod(poly, div, p):
                return False
    return True


def _coeffs_from_value(value: int, p: int, length: int) -> tuple:
    digits = []
    for _ in range(length):
        value, r = divmod(value, p)
        digits.append(r)
    return tuple(digits)


def smallest_irreducible(p: int, m: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree m over GF(p),
    ordering candidates by the base-p value of their lower coefficients."""
    for v in range(p**m):
        cand = _coeffs_from_value(v, p, m) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


def _label_to_coeffs(label: int, p: int, m: int) -> tuple:
    return _coeffs_from_value(label, p, m)


def _coeffs_to_label(coeffs, p: int) -> int:
    label = 0
    for c in reversed(poly_trim(coeffs)):
        label = label * p + c
    return label


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m) with its arithmetic tables; immutable once constructed."""

    p: int
    m: int
    modulus: tuple  # monic, length m+1, ascending powers
    order: int
    primitive: int
    exp: tuple = field(repr=False)  # exp[i] = label of alpha^i, i in 0..q-2
    log: tuple = field(repr=False)  # log[label] for nonzero labels

    # -- element views -----------------------------------------------------
    def coeffs(self, a: int) -> tuple:
        return _label_to_coeffs(a, self.p, self.m)

    def element_str(self, a: int) -> str:
        """Polynomial rendering of a label (e.g. 3 -> 'z+1' in GF(4))."""
        if self.m == 1:
            return str(a)
        terms = []
        for i in reversed(range(self.m)):
            c = self.coeffs(a)[i] if i < len(self.coeffs(a)) else 0
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                head = "" if c == 1 else str(c)
                terms.append(f"{head}z^{i}" if i > 1 else f"{head}z")
        return "+".join(terms) if terms else "0"

    def _check(self, *labels):
        for a in labels:
            if not 0 <= a < self.order:
                raise FieldError(f"label {a} outside field of order {self.order}")

    # -- arithmetic --------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        p = self.p
        if p == 2:
            return a ^ b
        out = 0
        mult = 1
        for _ in range(self.m):
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            out += ((da + db) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        self._check(a)
        p = self.p
        if p == 2:
            return a
        out = 0
        mult = 1
        for _ in range(self.m):
            a, da = divmod(a, p)
            out += ((-da) % p) * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        self._check(a)
        if a == 0:
            raise FieldError("zero has no inverse")
        return self.exp[(-self.log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        """a^e with the convention 0^0 = 1."""
        self._check(a)
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[(self.log[a] * e) % (self.order - 1)]


def _raw_mul(a: int, b: int, p: int, m: int, modulus) -> int:
    pa = _label_to_coeffs(a, p, m)
    pb = _label_to_coeffs(b, p, m)
    return _coeffs_to_label(poly_mod(poly_mul(pa, pb, p), modulus, p), p)


def make_field(p: int, m: int, modulus=None) -> FieldSpec:
    """Construct GF(p^m) with a deterministic modulus and primitive element.

    The modulus defaults to the lexicographically smallest monic
    irreducible of degree m; an explicit override is validated the same
    way. Order is capped at 2^16.
    """
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    q = p**m
    if q > MAX_ORDER:
        raise FieldError(f"field order {q} exceeds {MAX_ORDER}")
    if modulus is None:
        modulus = smallest_irreducible(p, m)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")

    # Smallest-labeled element whose powers reach every nonzero element.
    primitive = None
    powers = None
    for a in range(1, q):
        seen = [1]
        x = a
        while x != 1:
            seen.append(x)
            x = _raw_mul(x, a, p, m, modulus)
        if len(seen) == q - 1:
            primitive = a
            powers = seen
            break
    if primitive is None:
        raise FieldError(f"no primitive element found for GF({q})")

    log = [0] * q
    for i, lab in enumerate(powers):
        log[lab] = i
    return FieldSpec(p, m, modulus, q, primitive, tuple(powers), tuple(log))


def primitive_element(f: FieldSpec) -> int:
    return f.primitive


def modulus_str(f: FieldSpec) -> str:
    terms = []
    for i in reversed(range(len(f.modulus))):
        c = f.modulus[i]
        if not c:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            head = "" if c == 1 else str(c)
            terms.append(f"{head}z^{i}" if i > 1 else f"{head}z")
    return "+".join(terms)


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------

def add_table(f: FieldSpec) -> list[list[int]]:
    return [[f.add(a, b) for b in range(f.order)] for a in range(f.order)]


def mul_table(f: FieldSpec) -> list[list[int]]:
    return [[f.mul(a, b) for b in range(f.order)] for a in range(f.order)]


def emit_tables(f: FieldSpec) -> str:
    """Human-readable addition and multiplication tables, labels 0..q-1."""
    if f.order > PRINT_LIMIT:
        raise FieldError(f"table printing limited to order <= {PRINT_LIMIT}")
    width = len(str(f.order - 1))
    header = " ".join(f"{b:>{width}}" for b in range(f.order))
    lines = [f"GF({f.order})  p={f.p} m={f.m}  modulus {modulus_str(f)}"]
    for name, table in (("addition", add_table(f)), ("multiplication", mul_table(f))):
        lines.append(f"{name}:")
        lines.append(f"{'':>{width}} | {header}")
        lines.append("-" * (width + 3 + len(header)))
        for a, row in enumerate(table):
            lines.append(
                f"{a:>{width}} | " + " ".join(f"{v:>{width}}" for v in row)
            )
    return "\n".join(lines)


def field_json(f: FieldSpec) -> dict:
    return {"p": f.p, "m": f.m, "modulus": list(f.modulus), "primitive": f.primitive}


# ---------------------------------------------------------------------------
# Linear algebra over a field
# ---------------------------------------------------------------------------

def matrix_rank(f: FieldSpec, rows) -> int:
    """Rank of a matrix of labels via exact Gauss-Jordan elimination."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = f.inv(rows[rank][col])
        prow = [f.mul(inv, v) for v in rows[rank]]
        rows[rank] = prow
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [f.sub(v, f.mul(c, pv)) for v, pv in zip(rows[i], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def is_prime_power(x: int):
    """Return (p, m) when x = p^m for a prime p, else None."""
    if x < 2:
        return None
    for p in range(2, x + 1):
        if p * p > x and x > p:
            break
        if x % p:
            continue
        m = 0
        y = x
        while y % p == 0:
            y //= p
            m += 1
        return (p, m) if y == 1 else None
    return (x, 1) if is_prime(x) else None
