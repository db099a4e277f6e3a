"""
Sparse integer Laurent polynomials in one variable q.

Coefficients are Python ints, so nothing can overflow.  Negative exponents
are allowed because a few intermediate expressions (``P(1/q)``,
``(1/q - 1)^k``) live in Z[q, 1/q]; `IntPolynomial.is_polynomial` tells
whether a value is back in Z[q].
"""

from __future__ import annotations

from typing import Iterable, Mapping

__all__ = ["IntPolynomial", "q", "ZERO", "ONE", "rtilde_to_r", "monomial"]


class IntPolynomial:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for k, a in coeffs.items():
                if a:
                    c[int(k)] = int(a)
        self._c = c
        self._hash = None

    @classmethod
    def from_list(cls, coeffs: Iterable[int], offset: int = 0) -> "IntPolynomial":
        """Ascending coefficients starting at exponent `offset`."""
        return cls({offset + k: a for k, a in enumerate(coeffs)})

    @classmethod
    def constant(cls, a: int) -> "IntPolynomial":
        return cls({0: a})

    # -- structure ---------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coefficient(self, k: int) -> int:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    @property
    def degree(self) -> int | None:
        """Largest exponent; None for the zero polynomial."""
        return max(self._c) if self._c else None

    @property
    def min_exponent(self) -> int | None:
        return min(self._c) if self._c else None

    def is_polynomial(self) -> bool:
        """No negative exponents."""
        return not self._c or min(self._c) >= 0

    def terms(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs, ascending."""
        return sorted(self._c.items())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, a in other._c.items():
            c[k] = c.get(k, 0) + a
        return IntPolynomial(c)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial({k: -a for k, a in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        c: dict[int, int] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                c[i + j] = c.get(i + j, 0) + a * b
        return IntPolynomial(c)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if len(self._c) == 1:
                (k, a), = self._c.items()
                if a in (1, -1):
                    return IntPolynomial({k * e: a ** (-e)})
            raise ValueError("negative powers only for monomials +-q^k")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, a: int) -> "IntPolynomial":
        return IntPolynomial({k: a * b for k, b in self._c.items()})

    def shift(self, k: int) -> "IntPolynomial":
        """Multiply by q^k (k may be negative)."""
        return IntPolynomial({e + k: a for e, a in self._c.items()})

    # -- transforms --------------------------------------------------------

    def substitute_neg_q(self) -> "IntPolynomial":
        """p(-q)."""
        return IntPolynomial({k: (-a if k % 2 else a) for k, a in self._c.items()})

    def invert_variable(self) -> "IntPolynomial":
        """p(1/q), as a Laurent polynomial."""
        return IntPolynomial({-k: a for k, a in self._c.items()})

    def reverse(self, d: int) -> "IntPolynomial":
        """q^d * p(1/q).  For d < degree the result has negative exponents."""
        return IntPolynomial({d - k: a for k, a in self._c.items()})

    def truncate_below(self, bound) -> "IntPolynomial":
        """Keep only the terms with exponent strictly below `bound`."""
        return IntPolynomial({k: a for k, a in self._c.items() if k < bound})

    def __call__(self, value: int) -> int:
        if self._c and min(self._c) < 0:
            raise ValueError("evaluation of a Laurent polynomial")
        return sum(a * value ** k for k, a in self._c.items())

    # -- comparison / io ---------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def to_json(self) -> dict:
        if not self._c:
            return {"offset": 0, "coeffs": []}
        lo, hi = min(self._c), max(self._c)
        return {"offset": lo, "coeffs": [self._c.get(k, 0) for k in range(lo, hi + 1)]}

    @classmethod
    def from_json(cls, data: Mapping) -> "IntPolynomial":
        return cls.from_list(data["coeffs"], data.get("offset", 0))

    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for k, a in self.terms():
            if k == 0:
                body = str(abs(a))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if abs(a) == 1 else f"{abs(a)}{mono}"
            if not out:
                out.append(("-" if a < 0 else "") + body)
            else:
                out.append(("- " if a < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"IntPolynomial({str(self)!r})"

    def __reduce__(self):
        return (IntPolynomial, (self._c,))


def _coerce(value):
    if isinstance(value, IntPolynomial):
        return value
    if isinstance(value, int):
        return IntPolynomial({0: value})
    return NotImplemented


def monomial(k: int, a: int = 1) -> IntPolynomial:
    return IntPolynomial({k: a})


ZERO = IntPolynomial()
ONE = IntPolynomial({0: 1})
q = IntPolynomial({1: 1})


def rtilde_to_r(rt: IntPolynomial, length: int) -> IntPolynomial:
    """
    ``q^{length/2} * rt(q^{1/2} - q^{-1/2})`` expanded in Z[q].

    Each term ``c q^k`` becomes ``c q^{(length-k)/2} (q-1)^k``; this needs
    ``k`` and `length` of equal parity, which genuine R~-polynomials satisfy.
    """
    result = ZERO
    q_minus_1 = q - 1
    for k, a in rt.terms():
        if (length - k) % 2:
            raise ValueError(
                f"exponent {k} has the wrong parity for interval length {length}")
        result = result + (q_minus_1 ** k).shift((length - k) // 2).scale(a)
    return result
