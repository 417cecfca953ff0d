"""
Noncommutative Polynomials
==========================
ab- and cd-polynomials, tensor pairs c'd' (x) cd, the ab -> cd conversion and
the linear maps eta and eta' into commutative polynomials.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .errors import NotCDExpressible
from .linalg import QMatrix, solve_linear
from .polynomials import T, UV, InvariantPolynomial

Number = Union[int, Fraction]

LETTER_DEGREE = {'a': 1, 'b': 1, 'c': 1, 'd': 2}
ALPHABETS = {'ab': 'ab', 'cd': 'cd'}


def word_degree(word: str) -> int:
    return sum(LETTER_DEGREE[ch] for ch in word)


class NCPolynomial:
    """Linear combination of words over {a, b} or {c, d}."""

    __slots__ = ('alphabet', 'terms')

    def __init__(self, alphabet: str, terms: Optional[Mapping[str, Number]] = None):
        if alphabet not in ALPHABETS:
            raise ValueError(f"Unknown alphabet {alphabet!r}")
        self.alphabet = alphabet
        clean: Dict[str, Fraction] = {}
        for word, coeff in (terms or {}).items():
            if any(ch not in ALPHABETS[alphabet] for ch in word):
                raise ValueError(f"Word {word!r} is not over {{{','.join(alphabet)}}}")
            c = clean.get(word, Fraction(0)) + Fraction(coeff)
            if c:
                clean[word] = c
            else:
                clean.pop(word, None)
        self.terms: Dict[str, Fraction] = clean

    @classmethod
    def one(cls, alphabet: str) -> 'NCPolynomial':
        return cls(alphabet, {'': 1})

    @classmethod
    def zero(cls, alphabet: str) -> 'NCPolynomial':
        return cls(alphabet)

    @classmethod
    def word(cls, alphabet: str, word: str, coeff: Number = 1) -> 'NCPolynomial':
        return cls(alphabet, {word: coeff})

    def _check(self, other: 'NCPolynomial'):
        if self.alphabet != other.alphabet:
            raise ValueError(f"Alphabets differ: {self.alphabet} vs {other.alphabet}")

    def __add__(self, other: 'NCPolynomial') -> 'NCPolynomial':
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return NCPolynomial(self.alphabet, terms)

    def __neg__(self) -> 'NCPolynomial':
        return NCPolynomial(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: 'NCPolynomial') -> 'NCPolynomial':
        return self + (-other)

    def __mul__(self, other) -> 'NCPolynomial':
        if not isinstance(other, NCPolynomial):
            c = Fraction(other)
            return NCPolynomial(self.alphabet, {w: c * v for w, v in self.terms.items()})
        self._check(other)
        terms: Dict[str, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                terms[w1 + w2] = terms.get(w1 + w2, Fraction(0)) + c1 * c2
        return NCPolynomial(self.alphabet, terms)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, NCPolynomial) and self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.alphabet, tuple(sorted(self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def homogeneous_components(self) -> Dict[int, 'NCPolynomial']:
        parts: Dict[int, Dict[str, Fraction]] = {}
        for w, c in self.terms.items():
            parts.setdefault(word_degree(w), {})[w] = c
        return {deg: NCPolynomial(self.alphabet, terms) for deg, terms in sorted(parts.items())}

    def sorted_words(self) -> List[str]:
        return sorted(self.terms, key=lambda w: (word_degree(w), w))

    def to_string(self) -> str:
        if not self.terms:
            return '0'
        return _render_terms([(_render_word(w), self.terms[w]) for w in self.sorted_words()])

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"NCPolynomial({self.alphabet!r}, {self.to_string()!r})"

    def to_dict(self) -> dict:
        return {
            'alphabet': self.alphabet,
            'terms': {w: str(self.terms[w]) for w in self.sorted_words()},
            'text': self.to_string(),
        }


class TensorNCPolynomial:
    """Linear combination of pairs (word in c', d') (x) (word in c, d)."""

    __slots__ = ('terms',)

    def __init__(self, terms: Optional[Mapping[Tuple[str, str], Number]] = None):
        clean: Dict[Tuple[str, str], Fraction] = {}
        for (left, right), coeff in (terms or {}).items():
            if any(ch not in 'cd' for ch in left + right):
                raise ValueError(f"Tensor pair ({left!r}, {right!r}) is not over c, d")
            c = clean.get((left, right), Fraction(0)) + Fraction(coeff)
            if c:
                clean[(left, right)] = c
            else:
                clean.pop((left, right), None)
        self.terms = clean

    @classmethod
    def tensor(cls, left: NCPolynomial, right: NCPolynomial) -> 'TensorNCPolynomial':
        terms: Dict[Tuple[str, str], Fraction] = {}
        for w1, c1 in left.terms.items():
            for w2, c2 in right.terms.items():
                terms[(w1, w2)] = terms.get((w1, w2), Fraction(0)) + c1 * c2
        return cls(terms)

    def __add__(self, other: 'TensorNCPolynomial') -> 'TensorNCPolynomial':
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return TensorNCPolynomial(terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorNCPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def sorted_pairs(self) -> List[Tuple[str, str]]:
        return sorted(self.terms, key=lambda p: (word_degree(p[0]) + word_degree(p[1]), p))

    def to_string(self) -> str:
        if not self.terms:
            return '0'
        rendered = [(f"{_render_word(l, primed=True)}⊗{_render_word(r)}", self.terms[(l, r)])
                    for l, r in self.sorted_pairs()]
        return _render_terms(rendered, explicit_one=True)

    def __str__(self) -> str:
        return self.to_string()

    def to_dict(self) -> dict:
        return {
            'alphabet': "c'd'|cd",
            'terms': {f"{_json_word(l, primed=True)}|{_json_word(r)}": str(self.terms[(l, r)])
                      for l, r in self.sorted_pairs()},
            'text': self.to_string(),
        }


def _json_word(word: str, primed: bool = False) -> str:
    if not word:
        return '1'
    return ''.join(ch + "'" for ch in word) if primed else word


def _render_word(word: str, primed: bool = False) -> str:
    """Collapse runs: 'ccd' -> 'c^2d'."""
    if not word:
        return '1'
    out = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        letter = word[i] + ("'" if primed else '')
        out.append(letter if j - i == 1 else f"{letter}^{j - i}")
        i = j
    return ''.join(out)


def _render_terms(items: List[Tuple[str, Fraction]], explicit_one: bool = False) -> str:
    text = ''
    for idx, (mono, c) in enumerate(items):
        sign = '-' if c < 0 else '+'
        magnitude = abs(c)
        if mono == '1' and not explicit_one:
            body = str(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{magnitude}{mono}" if magnitude.denominator == 1 else f"({magnitude}){mono}"
        if idx == 0:
            text = ('-' if sign == '-' else '') + body
        else:
            text += sign + body
    return text


# =============================================================================
# ab <-> cd
# =============================================================================

@lru_cache(maxsize=None)
def cd_words(degree: int) -> Tuple[str, ...]:
    """All cd-words of a given degree, sorted."""
    if degree < 0:
        return ()
    if degree == 0:
        return ('',)
    words = [w + 'c' for w in cd_words(degree - 1)] + [w + 'd' for w in cd_words(degree - 2)]
    return tuple(sorted(words))


@lru_cache(maxsize=None)
def ab_words(degree: int) -> Tuple[str, ...]:
    return tuple(''.join(p) for p in product('ab', repeat=degree))


@lru_cache(maxsize=None)
def _expand_cd_word(word: str) -> Tuple[Tuple[str, int], ...]:
    expansion: Dict[str, int] = {'': 1}
    for ch in word:
        pieces = {'a': 1, 'b': 1} if ch == 'c' else {'ab': 1, 'ba': 1}
        nxt: Dict[str, int] = {}
        for w, c in expansion.items():
            for p, k in pieces.items():
                nxt[w + p] = nxt.get(w + p, 0) + c * k
        expansion = nxt
    return tuple(sorted(expansion.items()))


def cd_to_ab(phi: NCPolynomial) -> NCPolynomial:
    """Substitute c -> a+b, d -> ab+ba."""
    if phi.alphabet != 'cd':
        raise ValueError("cd_to_ab expects a cd-polynomial")
    terms: Dict[str, Fraction] = {}
    for word, coeff in phi.terms.items():
        for ab_word, k in _expand_cd_word(word):
            terms[ab_word] = terms.get(ab_word, Fraction(0)) + coeff * k
    return NCPolynomial('ab', terms)


def ab_to_cd(psi: NCPolynomial) -> NCPolynomial:
    """The unique cd-polynomial whose expansion is psi; NotCDExpressible otherwise."""
    if psi.alphabet != 'ab':
        raise ValueError("ab_to_cd expects an ab-polynomial")
    result: Dict[str, Fraction] = {}
    for degree, part in psi.homogeneous_components().items():
        candidates = cd_words(degree)
        rows_index = {w: i for i, w in enumerate(ab_words(degree))}
        columns = []
        for word in candidates:
            col = [0] * len(rows_index)
            for ab_word, k in _expand_cd_word(word):
                col[rows_index[ab_word]] += k
            columns.append(col)
        system = QMatrix.from_columns(columns, len(rows_index))
        rhs = [part.terms.get(w, Fraction(0)) for w in ab_words(degree)]
        solution = solve_linear(system, rhs)
        if not solution.feasible:
            raise NotCDExpressible(part.sorted_words()[0], degree)
        for word, coeff in zip(candidates, solution.particular):
            if coeff:
                result[word] = coeff
    return NCPolynomial('cd', result)


# =============================================================================
# eta and eta'
# =============================================================================

def eta_word(word: str) -> InvariantPolynomial:
    """Product over letters; a letter after prefix degree k contributes
    c -> 1 + t^(2^k) and d -> t^(2^k) + t^(2^(k+1))."""
    result = InvariantPolynomial.one(T)
    k = 0
    for ch in word:
        if ch == 'c':
            factor = InvariantPolynomial(T, {(0,): 1, (2 ** k,): 1})
        elif ch == 'd':
            factor = InvariantPolynomial(T, {(2 ** k,): 1, (2 ** (k + 1),): 1})
        else:
            raise ValueError(f"eta is defined on cd-words, got letter {ch!r}")
        result = result * factor
        k += LETTER_DEGREE[ch]
    return result


def eta(phi: NCPolynomial) -> InvariantPolynomial:
    if phi.alphabet != 'cd':
        raise ValueError("eta expects a cd-polynomial")
    total = InvariantPolynomial.zero(T)
    for word, coeff in phi.terms.items():
        total = total + eta_word(word) * coeff
    return total


def eta_prime_pair(left: str, right: str) -> InvariantPolynomial:
    """v^(2^n - 1) eta(left; u v^-1) eta(right; (uv)^(2^n)), n = deg(left)."""
    n = word_degree(left)
    first = eta_word(left).monomial_substitute({'t': {'u': 1, 'v': -1}}, UV)
    second = eta_word(right).monomial_substitute({'t': {'u': 2 ** n, 'v': 2 ** n}}, UV)
    return InvariantPolynomial.monomial(UV, (0, 2 ** n - 1)) * first * second


def eta_prime(omega: TensorNCPolynomial) -> InvariantPolynomial:
    total = InvariantPolynomial.zero(UV)
    for (left, right), coeff in omega.terms.items():
        total = total + eta_prime_pair(left, right) * coeff
    return total.require_polynomial()


def expand_words(words: Iterable[str], alphabet: str = 'cd') -> NCPolynomial:
    """Sum of the given words with coefficient 1 each."""
    return NCPolynomial(alphabet, {w: 1 for w in words})
