"""Integer Laurent polynomials in one variable."""

from __future__ import annotations


class LaurentPolynomial:
    """``{exponent: coefficient}`` with zero coefficients dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, dict):
            coeffs = dict(coeffs)
        self.coeffs = {int(e): int(c) for e, c in coeffs.items() if c}

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPolynomial":
        return cls({e: c})

    @classmethod
    def from_list(cls, coeffs, offset: int = 0) -> "LaurentPolynomial":
        """Coefficients low to high, the first one at exponent ``offset``."""
        return cls({offset + k: c for k, c in enumerate(coeffs)})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        return isinstance(other, LaurentPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial({0: other})
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPolynomial) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) != 1:
                raise ValueError("only monomials have inverses")
            (e, c), = self.coeffs.items()
            if abs(c) != 1:
                raise ValueError("only unit monomials have inverses")
            return LaurentPolynomial({-e * -k: c ** -k})
        out = LaurentPolynomial({0: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    @property
    def min_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    @property
    def max_degree(self) -> int:
        return max(self.coeffs) if self.coeffs else 0

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e + k: c for e, c in self.coeffs.items()})

    def substitute_power(self, k: int) -> "LaurentPolynomial":
        """``p(x) -> p(x^k)``."""
        return LaurentPolynomial({e * k: c for e, c in self.coeffs.items()})

    def to_list(self) -> tuple[list[int], int]:
        """Dense coefficients low to high and the lowest exponent."""
        if not self.coeffs:
            return [], 0
        lo, hi = self.min_degree, self.max_degree
        return [self.coeffs.get(e, 0) for e in range(lo, hi + 1)], lo

    def __call__(self, x):
        return sum(c * x**e for e, c in self.coeffs.items())

    def __repr__(self):
        return "LaurentPolynomial(%r)" % dict(sorted(self.coeffs.items()))

    def format(self, var: str = "q") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sgn = "-" if c < 0 else "+"
            c = abs(c)
            if e == 0:
                body = str(c)
            else:
                mon = var if e == 1 else "%s^%d" % (var, e)
                body = mon if c == 1 else "%d*%s" % (c, mon)
            parts.append((sgn, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            s += " %s %s" % (sgn, body)
        return s

    def __str__(self):
        return self.format()
