"""Finite fields F_q, q = p^e, with elements encoded as integers.

An element of F_{p^e} = F_p[g]/(m(g)) is the residue r_0 + r_1 g + ... +
r_{e-1} g^{e-1}.  Its integer *code* is r_0 + r_1 p + ... + r_{e-1} p^(e-1),
so the prime subfield is {0, ..., p-1} and codes range over 0 .. q-1.

Fields are interned: constructing the same (p, e, modulus) twice returns the
same object, which lets polynomials from "equal" fields interoperate.
"""

from __future__ import annotations

import atexit
import gc

from flint import fmpz_mod_poly_ctx, fq_default_ctx, fq_default_poly_ctx

from ..errors import DomainError

# FLINT polynomials free their data through their context.  The collector run
# at interpreter shutdown may clear a context first, so everything alive at
# exit is moved out of its reach and left to reference counting.
atexit.register(gc.freeze)

_TABLE_LIMIT = 256  # build q x q operation tables up to this size


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class FiniteField:
    """The field F_q.  ``modulus`` lists the F_p-coefficients of the defining
    polynomial from the constant term up; it is required when e > 1 and must
    be monic and irreducible."""

    _interned = {}

    def __new__(cls, p, e=1, modulus=None):
        p, e = int(p), int(e)
        if not is_prime(p):
            raise DomainError(f"characteristic {p} is not prime")
        if e < 1:
            raise DomainError("extension degree must be >= 1")
        if e == 1:
            modulus = None
        else:
            if modulus is None:
                raise DomainError(
                    "extension fields need an explicit modulus (no Conway table is shipped)")
            modulus = tuple(int(c) % p for c in modulus)
            while modulus and modulus[-1] == 0:
                modulus = modulus[:-1]
            if len(modulus) != e + 1 or modulus[-1] != 1:
                raise DomainError(f"modulus must be monic of degree {e}")
        key = (p, e, modulus)
        field = cls._interned.get(key)
        if field is not None:
            return field

        field = super().__new__(cls)
        field.p, field.e, field.q = p, e, p ** e
        if e == 1:
            field.modulus = (0, 1)
            field._ctx = fq_default_ctx(p, 1)
        else:
            mpoly = fmpz_mod_poly_ctx(p)(list(modulus))
            if not mpoly.is_irreducible():
                raise DomainError(f"modulus {list(modulus)} is reducible over F_{p}")
            field.modulus = modulus
            field._ctx = fq_default_ctx(p, e, "g", modulus=mpoly)
        field._pctx = fq_default_poly_ctx(field._ctx)
        field._elements = None
        field._tables = None
        cls._interned[key] = field
        return field

    def __reduce__(self):
        return (FiniteField, (self.p, self.e, None if self.e == 1 else self.modulus))

    def __repr__(self):
        if self.e == 1:
            return f"FiniteField({self.p})"
        return f"FiniteField({self.p}, {self.e}, {self.modulus})"

    def __str__(self):
        return f"F_{self.q}"

    # --- code <-> flint element conversion -------------------------------

    def to_flint(self, code):
        if self.e == 1:
            return self._ctx(code)
        if self._elements is not None:
            return self._elements[code]
        digits = []
        for _ in range(self.e):
            code, r = divmod(code, self.p)
            digits.append(r)
        return self._ctx(digits)

    def from_flint(self, elem):
        if self.e == 1:
            return int(elem)
        code = 0
        for d in reversed(elem.to_list()):
            code = code * self.p + int(d)
        return code

    def _ensure_tables(self):
        if self._tables is not None or self.q > _TABLE_LIMIT:
            return self._tables
        elems = [self.to_flint(c) for c in range(self.q)]
        self._elements = elems
        add = [[self.from_flint(a + b) for b in elems] for a in elems]
        mul = [[self.from_flint(a * b) for b in elems] for a in elems]
        neg = [self.from_flint(-a) for a in elems]
        inv = [0] + [self.from_flint(a.inverse()) for a in elems[1:]]
        self._tables = (add, mul, neg, inv)
        return self._tables

    # --- arithmetic on codes ----------------------------------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        tables = self._ensure_tables()
        if tables:
            return tables[0][a][b]
        return self.from_flint(self.to_flint(a) + self.to_flint(b))

    def neg(self, a):
        if self.e == 1:
            return -a % self.p
        tables = self._ensure_tables()
        if tables:
            return tables[2][a]
        return self.from_flint(-self.to_flint(a))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.e == 1:
            return a * b % self.p
        tables = self._ensure_tables()
        if tables:
            return tables[1][a][b]
        return self.from_flint(self.to_flint(a) * self.to_flint(b))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        tables = self._ensure_tables()
        if tables:
            return tables[3][a]
        return self.from_flint(self.to_flint(a).inverse())

    def power(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("negative power of 0")
            return 1 if n == 0 else 0
        if n < 0:
            a, n = self.inv(a), -n
        n %= self.q - 1
        if self.e == 1:
            return pow(a, n, self.p)
        return self.from_flint(self.to_flint(a) ** n)

    def pth_root(self, a):
        # x -> x^p is an automorphism of order e; its inverse is x -> x^(p^(e-1))
        if self.e == 1:
            return a
        return self.power(a, self.p ** (self.e - 1))

    # --- elements -----------------------------------------------------------

    def __call__(self, value):
        if isinstance(value, FqElem):
            if value.field is not self:
                raise DomainError("element belongs to a different field")
            return value
        return FqElem(self, self.coerce(value))

    def coerce(self, value):
        """Integer code for ``value`` (an int is read as an element of F_p)."""
        if isinstance(value, FqElem):
            if value.field is not self:
                raise DomainError("element belongs to a different field")
            return value.code
        if isinstance(value, int):
            return value % self.p
        raise TypeError(f"cannot interpret {value!r} as an element of {self}")

    def from_code(self, code):
        if not 0 <= code < self.q:
            raise DomainError(f"code {code} out of range for {self}")
        return FqElem(self, code)

    @property
    def gen(self):
        """The class of g (the generator of F_p[g]/(modulus)); needs e > 1."""
        if self.e == 1:
            raise DomainError("prime fields have no named generator")
        return FqElem(self, self.p)

    def elements(self):
        return [FqElem(self, c) for c in range(self.q)]

    def format_code(self, code):
        """Text form of an element: an integer, or a polynomial in g."""
        if self.e == 1:
            return str(code)
        digits = []
        c = code
        for _ in range(self.e):
            c, r = divmod(c, self.p)
            digits.append(r)
        terms = []
        for k in range(self.e - 1, -1, -1):
            d = digits[k]
            if d == 0:
                continue
            if k == 0:
                terms.append(str(d))
            else:
                mono = "g" if k == 1 else f"g^{k}"
                terms.append(mono if d == 1 else f"{d}*{mono}")
        return "+".join(terms) if terms else "0"


class FqElem:
    """An element of a FiniteField; immutable."""

    __slots__ = ("field", "code")

    def __init__(self, field, code):
        self.field = field
        self.code = code

    def _other(self, other):
        if isinstance(other, FqElem):
            if other.field is not self.field:
                raise DomainError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return None

    def __add__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is None:
            return NotImplemented
        return FqElem(self.field, self.field.mul(self.code, self.field.inv(b)))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.code))

    def __pow__(self, n):
        return FqElem(self.field, self.field.power(self.code, n))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.code))

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.q, self.code))

    def __repr__(self):
        return f"FqElem({self.field.format_code(self.code)} in {self.field})"

    def __str__(self):
        return self.field.format_code(self.code)
