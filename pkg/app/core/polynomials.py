"""
Invariant Polynomials
=====================
Exact Laurent polynomials in t, (u, v) or (u, v, w).

Terms are stored as {exponent tuple: Fraction} with no zero coefficients.
Negative exponents are allowed in intermediate results (substitutions such
as u -> u v^-1) and can be checked with has_negative_exponents().
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import NegativeExponentResidue

Exponent = Tuple[int, ...]
Number = Union[int, Fraction]

T = ('t',)
UV = ('u', 'v')
UVW = ('u', 'v', 'w')


class InvariantPolynomial:
    """Polynomial with exact rational coefficients in named commuting variables."""

    __slots__ = ('variables', 'terms')

    def __init__(self, variables: Sequence[str], terms: Optional[Mapping[Exponent, Number]] = None):
        self.variables: Tuple[str, ...] = tuple(variables)
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                raise ValueError(f"Exponent {exps} does not match variables {self.variables}")
            c = Fraction(coeff)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms: Dict[Exponent, Fraction] = clean

    # -------------------------------------------------------------------------
    # Constructors
    # -------------------------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str] = T) -> 'InvariantPolynomial':
        return cls(variables)

    @classmethod
    def one(cls, variables: Sequence[str] = T) -> 'InvariantPolynomial':
        return cls(variables, {(0,) * len(variables): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Sequence[int], coeff: Number = 1) -> 'InvariantPolynomial':
        return cls(variables, {tuple(exponent): coeff})

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[Number], variable: str = 't') -> 'InvariantPolynomial':
        """Univariate polynomial from a coefficient list, constant term first."""
        return cls((variable,), {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def t_power(cls, k: int) -> 'InvariantPolynomial':
        return cls(T, {(k,): 1})

    # -------------------------------------------------------------------------
    # Arithmetic
    # -------------------------------------------------------------------------

    def _check(self, other: 'InvariantPolynomial'):
        if self.variables != other.variables:
            raise ValueError(f"Variables differ: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> 'InvariantPolynomial':
        if isinstance(other, InvariantPolynomial):
            self._check(other)
            return other
        return InvariantPolynomial(self.variables, {(0,) * len(self.variables): other})

    def __add__(self, other) -> 'InvariantPolynomial':
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return InvariantPolynomial(self.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> 'InvariantPolynomial':
        return InvariantPolynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> 'InvariantPolynomial':
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> 'InvariantPolynomial':
        return self._coerce(other) - self

    def __mul__(self, other) -> 'InvariantPolynomial':
        if not isinstance(other, InvariantPolynomial):
            c = Fraction(other)
            return InvariantPolynomial(self.variables, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return InvariantPolynomial(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> 'InvariantPolynomial':
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("Only monomials have negative powers")
            (e, c), = self.terms.items()
            return InvariantPolynomial(self.variables, {tuple(k * x for x in e): c ** k})
        result = InvariantPolynomial.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, InvariantPolynomial):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self._coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -------------------------------------------------------------------------
    # Queries
    # -------------------------------------------------------------------------

    def coefficient(self, *exponent: int) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def degree(self) -> int:
        """Largest total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def low_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=0)

    def coefficients(self) -> List[Fraction]:
        """Dense coefficient list of a univariate polynomial, constant first."""
        if len(self.variables) != 1:
            raise ValueError("coefficients() needs a univariate polynomial")
        if not self.terms:
            return []
        if self.has_negative_exponents():
            raise NegativeExponentResidue(min(self.terms))
        top = self.degree()
        return [self.terms.get((i,), Fraction(0)) for i in range(top + 1)]

    def has_negative_exponents(self) -> bool:
        return any(x < 0 for e in self.terms for x in e)

    def require_polynomial(self) -> 'InvariantPolynomial':
        """Raise NegativeExponentResidue if a negative power survived."""
        for e in sorted(self.terms):
            if any(x < 0 for x in e):
                raise NegativeExponentResidue(e)
        return self

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    # -------------------------------------------------------------------------
    # Transformations
    # -------------------------------------------------------------------------

    def truncate(self, max_degree: int) -> 'InvariantPolynomial':
        """Keep terms of total degree <= max_degree."""
        return InvariantPolynomial(self.variables, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def reciprocal(self, n: int) -> 'InvariantPolynomial':
        """t^n · p(1/t) for a univariate polynomial."""
        if len(self.variables) != 1:
            raise ValueError("reciprocal() needs a univariate polynomial")
        return InvariantPolynomial(self.variables, {(n - e[0],): c for e, c in self.terms.items()})

    def is_symmetric(self, n: int) -> bool:
        """p(t) = t^n p(1/t)."""
        return self == self.reciprocal(n)

    def is_unimodal(self) -> bool:
        coeffs = self.coefficients()
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        peaked = False
        for a, b in zip(coeffs, coeffs[1:]):
            if b < a:
                peaked = True
            elif b > a and peaked:
                return False
        return True

    def substitute(self, images: Mapping[str, 'InvariantPolynomial'], target: Sequence[str]) -> 'InvariantPolynomial':
        """Replace each variable by a polynomial in the target variables.

        A variable raised to a negative power must map to a monomial.
        """
        target = tuple(target)
        result = InvariantPolynomial.zero(target)
        cache: Dict[Tuple[str, int], InvariantPolynomial] = {}
        for exps, coeff in self.terms.items():
            term = InvariantPolynomial(target, {(0,) * len(target): coeff})
            for var, k in zip(self.variables, exps):
                if k == 0:
                    continue
                key = (var, k)
                if key not in cache:
                    cache[key] = images[var] ** k
                term = term * cache[key]
            result = result + term
        return result

    def monomial_substitute(self, images: Mapping[str, Mapping[str, int]], target: Sequence[str]) -> 'InvariantPolynomial':
        """Substitute Laurent monomials, e.g. {'u': {'u': 1, 'w': -1}, 'v': {}}."""
        target = tuple(target)
        index = {name: i for i, name in enumerate(target)}
        terms: Dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            new = [0] * len(target)
            for var, k in zip(self.variables, exps):
                for name, power in images[var].items():
                    new[index[name]] += power * k
            key = tuple(new)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return InvariantPolynomial(target, terms)

    def first_difference(self, other: 'InvariantPolynomial') -> Optional[Tuple[Exponent, Fraction, Fraction]]:
        """Smallest exponent (graded-lex) where the two polynomials differ."""
        self._check(other)
        for e in sorted(set(self.terms) | set(other.terms), key=_term_key):
            a, b = self.coefficient(*e), other.coefficient(*e)
            if a != b:
                return e, a, b
        return None

    # -------------------------------------------------------------------------
    # Rendering
    # -------------------------------------------------------------------------

    def to_string(self) -> str:
        """Canonical graded-lex string, e.g. '1+uv+uv^2+u^2v'."""
        if not self.terms:
            return '0'
        parts = []
        for e in sorted(self.terms, key=_term_key):
            c = self.terms[e]
            mono = ''.join(
                name if k == 1 else f"{name}^{k}" if k > 0 else f"{name}^({k})"
                for name, k in zip(self.variables, e) if k != 0
            )
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            elif magnitude.denominator == 1:
                body = f"{magnitude}{mono}"
            else:
                body = f"({magnitude}){mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"InvariantPolynomial({self.variables}, {self.to_string()!r})"

    def to_dict(self) -> dict:
        return {
            'vars': list(self.variables),
            'terms': {
                '[' + ','.join(str(x) for x in e) + ']': str(self.terms[e])
                for e in sorted(self.terms, key=_term_key)
            },
            'text': self.to_string(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'InvariantPolynomial':
        variables = tuple(data['vars'])
        terms = {}
        for key, value in data.get('terms', {}).items():
            inner = key.strip()[1:-1]
            exps = tuple(int(x) for x in inner.split(',')) if inner else ()
            terms[exps] = Fraction(value)
        return cls(variables, terms)


def _term_key(exponent: Exponent):
    return sum(exponent), exponent


def t_poly(*coeffs: Number) -> InvariantPolynomial:
    """Shorthand: t_poly(1, 2, 1) == 1 + 2t + t^2."""
    return InvariantPolynomial.from_coefficients(coeffs)


def t_variable() -> InvariantPolynomial:
    return InvariantPolynomial(T, {(1,): 1})


def uv_monomial(p: int, q: int, coeff: Number = 1) -> InvariantPolynomial:
    return InvariantPolynomial(UV, {(p, q): coeff})


def uvw_monomial(p: int, q: int, r: int, coeff: Number = 1) -> InvariantPolynomial:
    return InvariantPolynomial(UVW, {(p, q, r): coeff})


def evaluate_t_at_monomial(poly: InvariantPolynomial, target: Sequence[str], exponent: Sequence[int]) -> InvariantPolynomial:
    """p(t) with t replaced by the Laurent monomial of `exponent` in `target`."""
    target = tuple(target)
    return poly.monomial_substitute({'t': dict(zip(target, exponent))}, target)
