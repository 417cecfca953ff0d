"""
Hodge-Deligne Polynomials
=========================
Filtered reduced section spaces and the polynomials counting their
associated graded pieces:

- F_p: the (t-)degree <= p part of the reduced sections
- W^r: reduced sections of the weight sheaf of the sheaf itself
- M^s: the weight sheaf of the fine sheaf carried across a subdivision

Also houses the hard and relative hard Lefschetz rank checks and the
t-Poincare recursion over the cones of a fan.
"""

from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Tuple

from .convexity import ConewiseLinear, relatively_convex_function, strictly_convex_function
from .errors import ConsistencyMismatch, TripleGradedMismatch
from .fan import Fan, classify_quasi_convex, is_complete
from .graded import Degree, GradedSubspaceChain, ReducedModule, reduce_mod_m, tdim
from .linalg import QMatrix, Subspace, preimage
from .logging_utils import get_logger
from .polynomials import T, UV, UVW, InvariantPolynomial, evaluate_t_at_monomial, uvw_monomial
from .sheaf import (
    PureSheafData,
    Sections,
    decompose,
    global_sections,
    identification,
    pushforward,
    simple_sheaf,
)
from .subdivision import FanSubdivision
from .weights import weight_sheaf

logger = get_logger('hodge')

# Monomial substitutions along the specialization arrows
REFINED_TO_LIMIT = {'u': {'u': 1}, 'v': {'v': 1}, 'w': {}}
REFINED_TO_HODGE_DELIGNE = {'u': {'u': 1, 'v': -1}, 'v': {}, 'w': {'v': 1}}
HODGE_DELIGNE_TO_POINCARE = {'u': {'t': 1}, 'v': {}}


def _bump(terms: Dict[Tuple[int, ...], int], key: Tuple[int, ...], k: int):
    if k:
        terms[key] = terms.get(key, 0) + k


# =============================================================================
# FILTERED SPACES
# =============================================================================

@dataclass
class FilteredSpace:
    """\\ov{F(Δ)} with F_• by (t-)degree, W^• and optionally M^•."""
    reduced: ReducedModule
    weight: GradedSubspaceChain
    monodromy: Optional[GradedSubspaceChain] = None

    @property
    def grading(self):
        return self.reduced.grading

    def total_dim(self) -> int:
        return sum(self.reduced.dims().values())

    def hodge(self, p: int) -> Dict[Degree, int]:
        """dim F_p per degree."""
        g = self.grading
        return {deg: self.reduced.dim(deg) if g.tdeg(deg) <= p else 0 for deg in g.degrees()}

    def _pieces(self):
        g = self.grading
        for deg in g.degrees():
            if self.reduced.dim(deg):
                yield deg, g.tdeg(deg)

    def weight_graded(self) -> Dict[Tuple[int, int], int]:
        """(p, r) -> dim Gr^F_p Gr_W^r."""
        out: Dict[Tuple[int, int], int] = {}
        for deg, p in self._pieces():
            for r in self.weight.indices():
                _bump(out, (p, r), self.weight.get(r, deg).dim - self.weight.get(r + 1, deg).dim)
        return out

    def monodromy_graded(self) -> Dict[Tuple[int, int], int]:
        """(p, s) -> dim Gr^F_p Gr_M^s."""
        chain = self._require_monodromy()
        out: Dict[Tuple[int, int], int] = {}
        for deg, p in self._pieces():
            for s in chain.indices():
                _bump(out, (p, s), chain.get(s, deg).dim - chain.get(s + 1, deg).dim)
        return out

    def triple_graded(self) -> Dict[Tuple[int, int, int], int]:
        """(p, s, r) -> dim Gr^F_p Gr_M^s Gr_W^r, with M induced on Gr_W^r."""
        chain = self._require_monodromy()
        out: Dict[Tuple[int, int, int], int] = {}
        for deg, p in self._pieces():
            for r in self.weight.indices():
                w_r, w_next = self.weight.get(r, deg), self.weight.get(r + 1, deg)
                if w_r.dim == w_next.dim:
                    continue
                for s in chain.indices():
                    upper = chain.get(s, deg).intersect(w_r) + w_next
                    lower = chain.get(s + 1, deg).intersect(w_r) + w_next
                    _bump(out, (p, s, r), upper.dim - lower.dim)
        return out

    def _require_monodromy(self) -> GradedSubspaceChain:
        if self.monodromy is None:
            raise ValueError("no monodromy filtration on this space")
        return self.monodromy

    def hodge_deligne(self) -> InvariantPolynomial:
        return InvariantPolynomial(UV, {(p, r - p): k for (p, r), k in self.weight_graded().items()})

    def limit(self) -> InvariantPolynomial:
        return InvariantPolynomial(UV, {(p, s - p): k for (p, s), k in self.monodromy_graded().items()})

    def refined(self) -> InvariantPolynomial:
        return InvariantPolynomial(UVW, {(p, s - p, r): k for (p, s, r), k in self.triple_graded().items()})

    def is_consistent(self) -> bool:
        """Monotone chains whose graded pieces add up to the whole space."""
        chains = [self.weight] + ([self.monodromy] if self.monodromy is not None else [])
        if not all(c.is_monotone() and c.contained_in_reference() for c in chains):
            return False
        total = self.total_dim()
        return sum(self.weight_graded().values()) == total and \
            (self.monodromy is None or sum(self.monodromy_graded().values()) == total)


def _reduced_chain(reduced: ReducedModule, steps: Dict[int, Dict[Degree, Subspace]]) -> GradedSubspaceChain:
    """ρ applied to every step, closed off by a zero step above the range."""
    images = {r: {deg: space.image(reduced.projection(deg)) for deg, space in step.items()}
              for r, step in steps.items()}
    images[max(steps) + 1] = {deg: Subspace.zero(reduced.dim(deg)) for deg in reduced.grading.degrees()}
    return GradedSubspaceChain(reference=reduced.dims(), steps=images, decreasing=True)


def _monodromy_steps(pushed: PureSheafData) -> Dict[int, Dict[Degree, Subspace]]:
    """M^s π_*F(Δ): sections whose image in F(π⁻¹Δ) lies in W^s of the fine sheaf."""
    fine_weights = weight_sheaf(pushed.source)
    lo, hi = fine_weights.weight_range()
    coarse = range(len(pushed.fan.cones))
    steps: Dict[int, Dict[Degree, Subspace]] = {s: {} for s in range(lo, hi + 1)}
    for deg in pushed.grading.degrees():
        _, fine_sections, matrix = identification(pushed, coarse, deg)
        for s in steps:
            steps[s][deg] = preimage(matrix, fine_weights.sections_in(fine_sections, s, deg))
    return steps


def filtered_space(sheaf: PureSheafData, monodromy: bool = False) -> FilteredSpace:
    """Filtered reduced global sections; monodromy needs a direct image."""
    if not classify_quasi_convex(sheaf.fan).certified:
        logger.warning(f"[Hodge] {sheaf.label}: fan has no quasi-convexity certificate; computing anyway")
    reduced = global_sections(sheaf).reduced()
    weight = _reduced_chain(reduced, weight_sheaf(sheaf).filtration().steps)
    chain = None
    if monodromy:
        if sheaf.subdivision is None:
            raise ValueError("the monodromy filtration is defined on direct images only")
        chain = _reduced_chain(reduced, _monodromy_steps(sheaf))
    return FilteredSpace(reduced=reduced, weight=weight, monodromy=chain)


def _check_poincare(sheaf: PureSheafData, hd: InvariantPolynomial):
    poincare = global_sections(sheaf).poincare()
    specialized = hd.monomial_substitute(HODGE_DELIGNE_TO_POINCARE, T)
    if specialized != poincare:
        raise ConsistencyMismatch(str(poincare), str(specialized))


# =============================================================================
# POLYNOMIALS
# =============================================================================

def hodge_deligne(sheaf: PureSheafData, check: bool = True) -> InvariantPolynomial:
    """Σ dim Gr^F_p Gr_W^(p+q) u^p v^q of the reduced global sections."""
    hd = filtered_space(sheaf).hodge_deligne()
    if check:
        _check_poincare(sheaf, hd)
    logger.debug(f"[Hodge] E({sheaf.label}) = {hd}")
    return hd


@dataclass
class LimitHodgeData:
    """Every polynomial of π_*F computed from one filtered space."""
    pushed: PureSheafData
    space: FilteredSpace
    hodge_deligne: InvariantPolynomial
    limit: InvariantPolynomial
    refined: InvariantPolynomial
    summand_formula: Optional[InvariantPolynomial] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {
            'hodge_deligne': self.hodge_deligne.to_dict(),
            'limit': self.limit.to_dict(),
            'refined': self.refined.to_dict(),
            'checks': dict(self.checks),
        }
        if self.summand_formula is not None:
            out['summand_formula'] = self.summand_formula.to_dict()
        return out


def limit_hodge_data(pi: FanSubdivision, sheaf: PureSheafData, check: bool = True) -> LimitHodgeData:
    """Hodge-Deligne, limit and refined limit polynomials of π_*F for F on the fine fan.

    With check set, the specialization arrows and the summand formula are
    asserted: ConsistencyMismatch for a broken arrow, TripleGradedMismatch
    when the filtration count and the summand formula disagree.
    """
    pushed = pushforward(pi, sheaf)
    space = filtered_space(pushed, monodromy=True)
    data = LimitHodgeData(pushed=pushed, space=space, hodge_deligne=space.hodge_deligne(),
                          limit=space.limit(), refined=space.refined())
    if not check:
        return data

    _check_poincare(pushed, data.hodge_deligne)
    data.checks['poincare'] = True
    to_limit = data.refined.monomial_substitute(REFINED_TO_LIMIT, UV)
    if to_limit != data.limit:
        raise ConsistencyMismatch(str(data.limit), str(to_limit))
    data.checks['refined_to_limit'] = True
    to_hd = data.refined.monomial_substitute(REFINED_TO_HODGE_DELIGNE, UV)
    if to_hd != data.hodge_deligne:
        raise ConsistencyMismatch(str(data.hodge_deligne), str(to_hd))
    data.checks['refined_to_hodge_deligne'] = True

    if sheaf.structure == 'C':
        logger.debug("[Hodge] summand formula is stated for the single grading; skipped")
        return data
    data.summand_formula = summand_formula(pi, sheaf)
    if data.summand_formula != data.refined:
        raise TripleGradedMismatch(str(data.refined), str(data.summand_formula))
    data.checks['summand_formula'] = True
    return data


def limit_hodge_deligne(pi: FanSubdivision, sheaf: PureSheafData) -> InvariantPolynomial:
    """Σ dim Gr^F_p Gr_M^(p+q) u^p v^q of π_*F."""
    pushed = pushforward(pi, sheaf)
    return filtered_space(pushed, monodromy=True).limit()


def refined_hodge_deligne(pi: FanSubdivision, sheaf: PureSheafData, check: bool = True) -> InvariantPolynomial:
    return limit_hodge_data(pi, sheaf, check=check).refined


def summand_formula(pi: FanSubdivision, sheaf: PureSheafData) -> InvariantPolynomial:
    """Refined polynomial from the decomposition of F into shifted simple sheaves L_σ[-j]:

        Σ u^j v^(dim σ - j) Σ_τ w^dim τ L(π_*L_σ, τ; uv) P(\\ov{L_τ(Δ)}; uvw²)
    """
    fine, coarse = pi.fine, pi.coarse
    g = sheaf.grading
    data = decompose(sheaf)
    local_tables: Dict[int, Dict[int, InvariantPolynomial]] = {}
    total = InvariantPolynomial.zero(UVW)
    for summand in data.summands:
        if summand.cone not in local_tables:
            pushed = pushforward(pi, simple_sheaf(fine, summand.cone, 'A'))
            local_tables[summand.cone] = decompose(pushed).local_poincare
        inner = InvariantPolynomial.zero(UVW)
        for tau, local in local_tables[summand.cone].items():
            if not local:
                continue
            link_part = global_sections(simple_sheaf(coarse, tau, 'A')).poincare()
            inner = inner + uvw_monomial(0, 0, coarse.cones[tau].dim) \
                * evaluate_t_at_monomial(local, UVW, (1, 1, 0)) \
                * evaluate_t_at_monomial(link_part, UVW, (1, 1, 2))
        j = g.tdeg(summand.shift)
        total = total + uvw_monomial(j, fine.cones[summand.cone].dim - j, 0, summand.multiplicity) * inner
    return total


# =============================================================================
# LEFSCHETZ CHECKS
# =============================================================================

@dataclass
class LefschetzResult:
    status: str
    detail: str = ''
    ranks: Dict[str, Tuple[int, int]] = field(default_factory=dict)
    function: Optional[ConewiseLinear] = None

    @property
    def passed(self) -> bool:
        return self.status == 'pass'

    def to_dict(self) -> dict:
        out = {'status': self.status, 'detail': self.detail,
               'ranks': {k: list(v) for k, v in sorted(self.ranks.items())}}
        if self.function is not None:
            out['function'] = self.function.to_dict()
        return out


def _functional_at(fan: Fan, ell: ConewiseLinear, cone: int):
    return next(f for m, f in sorted(ell.functionals.items()) if cone in fan.faces[m])


def conewise_multiplication(sections: Sections, ell: ConewiseLinear, deg: int) -> Optional[QMatrix]:
    """Multiplication by ℓ on F(U): degree deg -> deg + 1, None past the cap."""
    sheaf, g = sections.sheaf, sections.sheaf.grading
    target = g.shift_up(deg, 0)
    if target is None:
        return None
    blocks = []
    for a in sections.maximal:
        functional = _functional_at(sheaf.fan, ell, a)
        block = QMatrix.zeros(sheaf.stalk_dim(a, target), sheaf.stalk_dim(a, deg))
        for i, c in enumerate(functional):
            if c:
                block = block + sheaf.stalks[a].multiplication(i, deg).scale(c)
        blocks.append(block)
    if not blocks:
        return QMatrix.zeros(0, 0)
    stacked = QMatrix.block_diagonal(blocks) @ sections.basis[deg]
    return sections.coordinates(target, stacked)


def _power_map(sections: Sections, ell: ConewiseLinear, start: QMatrix, deg: int, power: int) -> Optional[QMatrix]:
    matrix = start
    for step in range(power):
        mul = conewise_multiplication(sections, ell, deg + step)
        if mul is None:
            return None
        matrix = mul @ matrix
    return matrix


def hard_lefschetz_check(fan: Fan, ell: Optional[ConewiseLinear] = None) -> LefschetzResult:
    """ℓ^(d-2k): \\ov{L(Δ)}_k -> \\ov{L(Δ)}_(d-k) is bijective for a strictly convex ℓ."""
    if not is_complete(fan):
        return LefschetzResult('skipped', 'fan is not complete')
    ell = ell or strictly_convex_function(fan)
    if ell is None:
        return LefschetzResult('skipped', 'no strictly convex function found')
    sheaf = simple_sheaf(fan, fan.zero, 'A')
    sections = global_sections(sheaf)
    reduced = sections.reduced()
    d = fan.dim
    result = LefschetzResult('pass', function=ell)
    for k in range(d // 2 + 1):
        source, target = reduced.dim(k), reduced.dim(d - k)
        matrix = _power_map(sections, ell, reduced.lift(k), k, d - 2 * k)
        rank = -1 if matrix is None else (reduced.projection(d - k) @ matrix).rank()
        result.ranks[str(k)] = (source, rank)
        if source != target or rank != source:
            result.status = 'fail'
            result.detail = f"degree {k}: dims {source}/{target}, rank {rank}"
            logger.warning(f"[Hodge] hard Lefschetz fails on {fan.label or 'fan'}: {result.detail}")
            break
    return result


def relative_hard_lefschetz_check(pi: FanSubdivision, ell: Optional[ConewiseLinear] = None) -> LefschetzResult:
    """K_σ of π_*L_Σ is symmetric about dim σ / 2 and ℓ^(dim σ - 2k) is injective on K_σ in degree k."""
    ell = ell or relatively_convex_function(pi)
    if ell is None:
        return LefschetzResult('skipped', 'no relatively convex function found')
    pushed = pushforward(pi, simple_sheaf(pi.fine, pi.fine.zero, 'A'))
    data = decompose(pushed)
    result = LefschetzResult('pass', function=ell)
    for cone in pi.coarse.cones:
        c, dim = cone.index, cone.dim
        dims = {deg: k for deg, k in data.kernel_dims(c).items()}
        if any(deg > dim or dims.get(dim - deg, 0) != k for deg, k in dims.items()):
            result.status = 'fail'
            result.detail = f"cone {c}: local dims {dims} are not symmetric"
            break
        sections = pushed.preimages[c]
        reduced = reduce_mod_m(pushed.stalks[c], check_cap=False)
        for k, n in sorted(dims.items()):
            if 2 * k > dim:
                continue
            matrix = _power_map(sections, ell, data.splittings[c][k], k, dim - 2 * k)
            rank = -1 if matrix is None else (reduced.projection(dim - k) @ matrix).rank()
            result.ranks[f"{c}:{k}"] = (n, rank)
            if rank != n:
                result.status = 'fail'
                result.detail = f"cone {c}, degree {k}: rank {rank} on a {n}-dimensional local space"
                break
        if result.status == 'fail':
            break
    if result.status == 'fail':
        logger.warning(f"[Hodge] relative hard Lefschetz fails: {result.detail}")
    return result


# =============================================================================
# t-POINCARE RECURSION
# =============================================================================

def t_poincare_recursion_check(fan: Fan, structure: str = 'C') -> bool:
    """t^top P(\\ov{L(Δ)}; 1/t) = Σ_σ P(\\ov{L(σ)}; t) Π_(i > dim σ) (t^deg(x_i) - 1).

    top is tdim Δ and deg(x_i) = 2^(i-1) for the C-structure; dim Δ and 1
    for the A-structure.
    """
    sheaf = simple_sheaf(fan, fan.zero, structure)
    n = fan.dim
    multigraded = structure == 'C'
    lhs = global_sections(sheaf).poincare().reciprocal(tdim(n) if multigraded else n)
    rhs = InvariantPolynomial.zero(T)
    one = InvariantPolynomial.one(T)
    for cone in fan.cones:
        local = reduce_mod_m(sheaf.stalks[cone.index], check_cap=False).poincare()
        factor = one
        for i in range(cone.dim + 1, n + 1):
            factor = factor * (InvariantPolynomial.t_power(2 ** (i - 1) if multigraded else 1) - one)
        rhs = rhs + local * factor
    if lhs != rhs:
        logger.warning(f"[Hodge] t-Poincare recursion fails on {fan.label or 'fan'}: {lhs} != {rhs}")
    return lhs == rhs


def hodge_deligne_of_summands(fan: Fan, summands: Iterable[Tuple[int, int, int]]) -> InvariantPolynomial:
    """Σ m u^j v^(dim σ - j) P(\\ov{L_σ(Δ)}; uv) over (σ, j, m), the value on shifted simple sheaves."""
    total = InvariantPolynomial.zero(UV)
    for cone, j, m in summands:
        part = global_sections(simple_sheaf(fan, cone, 'A')).poincare()
        shifted = InvariantPolynomial(UV, {(j, fan.cones[cone].dim - j): m})
        total = total + shifted * evaluate_t_at_monomial(part, UV, (1, 1))
    return total
