"""
Verification Harness
====================
Runs the sheaf engine and the combinatorial invariants side by side on a
corpus of subdivisions and records every identity between them as an
exact check with status pass, fail or skipped.

Suites:
- h: Hodge-Deligne polynomial of π_*L_Σ against the mixed h-polynomial
- hstar: refined limit polynomial of π_*E_Σ against the refined limit mixed h*
- cd: C-structure Hodge-Deligne polynomial against η' of the mixed cd-index
- props: the supporting identities and properties (local polynomials,
  weight slices, Lefschetz ranks, symmetry and unimodality, ...)
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .cdindex import cd_index, mixed_cd, preimage_local_cd
from .convexity import relatively_convex_function
from .corpus import SUITES, CorpusEntry, corpus_hash
from .degree_map import DegreeMap, check_same_degree_map, gorenstein_degree_map
from .ehrhart import build_ehrhart_sheaf
from .errors import DegreeMapMismatch, DimensionLimitExceeded, FanSheafError, NotGorenstein, SelectorError
from .fan import is_complete
from .hodge import (
    HODGE_DELIGNE_TO_POINCARE,
    hard_lefschetz_check,
    hodge_deligne,
    limit_hodge_data,
    relative_hard_lefschetz_check,
    t_poincare_recursion_check,
)
from .invariants import (
    ehrhart_reciprocity_check,
    ehrhart_table,
    limit_mixed_hstar,
    link_h,
    local_h,
    mixed_h,
    mixed_hstar,
    refined_limit_mixed_hstar,
    toric_g,
    toric_h,
)
from .linalg import Subspace
from .logging_utils import get_logger
from .ncpoly import eta, eta_prime
from .polynomials import T, InvariantPolynomial
from .poset import cone_view
from .sheaf import (
    PureSheafData,
    braden_degree_bounds,
    decompose,
    global_sections,
    pushforward,
    shift_sheaf,
    simple_sheaf,
    t_poincare,
)
from .subdivision import FanSubdivision
from .weights import closed_form_slice, weight_sheaf, weight_sheaf_sections

logger = get_logger('verify')

PASS, FAIL, SKIPPED = 'pass', 'fail', 'skipped'
SUITE_CHOICES = ('all',) + SUITES

SKIP_ERRORS = (NotGorenstein, DegreeMapMismatch, DimensionLimitExceeded)

REFERENCES = {
    'mixed_h': 'Hodge-Deligne polynomial of the direct image of the minimal extension equals the mixed h-polynomial',
    'refined_ehrhart': 'refined limit Hodge-Deligne polynomial of the direct image of the Ehrhart sheaf '
                       'equals the refined limit mixed h*-polynomial',
    'mixed_cd': "C-structure Hodge-Deligne polynomial of the direct image equals eta' of the mixed cd-index",
    'link_h': 'reduced sections of a simple sheaf count h of the link',
    'local_h': 'local Poincare polynomials of the direct image are the local h-polynomials',
    'hstar_sheaf': 'reduced sections of the Ehrhart sheaf count h*, its local Poincare polynomials count local h*',
    'hstar_decomposition': 'h* is the sum of local h* times h of the links',
    't_poincare': 't-Poincare polynomials are eta of the cd-index and of the local cd-indices',
    't_duality': 't-Poincare duality between sections and sections relative to the boundary',
    't_recursion': 't-Poincare recursion over the cones of the fan',
    'weight_monotone': 'weight sheaves form a decreasing filtration',
    'weight_slices': 'weight sheaves of shifted simple sheaves are degree slices',
    'flabby': 'simple sheaves and direct images are flabby',
    'degree_bounds': 'simple sheaf stalks are generated below half the relative dimension',
    'decomposition': 'reduced sections equal the sum over the decomposition into simple sheaves',
    'eulerian': 'face intervals of both fans are Eulerian',
    'mixed_h_shape': 'mixed h-polynomial is nonnegative with symmetric unimodal diagonals when projective',
    'local_h_shape': 'local h-polynomial of a projective subdivision is symmetric and unimodal',
    'g_h': 'h of a single-cone fan equals g of its face poset',
    'hard_lefschetz': 'hard Lefschetz ranks for a strictly convex conewise linear function',
    'relative_lefschetz': 'relative hard Lefschetz ranks for a relatively convex function',
    'ehrhart_reciprocity': 'Ehrhart reciprocity on a Gorenstein cone',
}

# =============================================================================
# REPORT
# =============================================================================

@dataclass
class CheckResult:
    id: str
    reference: str
    status: str
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {'id': self.id, 'reference': self.reference, 'status': self.status}
        if self.witness is not None:
            out['witness'] = self.witness
        return out


class VerificationReport:
    """Append-only accumulator of check results."""

    def __init__(self, corpus_hash: Optional[str] = None):
        self.corpus_hash = corpus_hash
        self._checks: List[CheckResult] = []
        self._lock = threading.Lock()

    def extend(self, results: Iterable[CheckResult]):
        with self._lock:
            self._checks.extend(results)

    @property
    def checks(self) -> List[CheckResult]:
        return list(self._checks)

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for check in self._checks:
            out[check.status] += 1
        return out

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self._checks)

    def to_dict(self) -> dict:
        return {
            'checks': [c.to_dict() for c in self._checks],
            'corpus_hash': self.corpus_hash,
            'summary': self.counts(),
        }


# =============================================================================
# HELPERS
# =============================================================================

Outcome = Tuple[str, Optional[dict]]


def _difference(lhs, rhs, left: str, right: str) -> dict:
    out = {left: str(lhs), right: str(rhs)}
    if isinstance(lhs, InvariantPolynomial) and isinstance(rhs, InvariantPolynomial) \
            and lhs.variables == rhs.variables:
        found = lhs.first_difference(rhs)
        if found is not None:
            exponent, a, b = found
            out['first_difference'] = {'exponent': list(exponent), left: str(a), right: str(b)}
    return out


def _compare(pairs: Iterable[Tuple[str, object, object]], left: str = 'sheaf', right: str = 'combinatorial') -> Outcome:
    """PASS when every labelled pair agrees; the first disagreement is the witness."""
    for label, lhs, rhs in pairs:
        if lhs != rhs:
            witness = _difference(lhs, rhs, left, right)
            witness['where'] = label
            return FAIL, witness
    return PASS, None


def _holds(pairs: Iterable[Tuple[str, bool]]) -> Outcome:
    for label, flag in pairs:
        if not flag:
            return FAIL, {'where': label}
    return PASS, None


def _run(check: str, pi: FanSubdivision, name: str, body: Callable[[], Outcome]) -> CheckResult:
    try:
        status, witness = body()
    except SKIP_ERRORS as e:
        status, witness = SKIPPED, {'reason': e.to_dict()}
    except FanSheafError as e:
        logger.warning(f"[Verify] {check}/{name} raised {e.code}: {e.message}")
        status, witness = FAIL, {'error': e.to_dict()}
    if status == FAIL:
        witness = {'entry': name, 'fan': pi.to_dict(), **(witness or {})}
    elif status == PASS:
        witness = None
    return CheckResult(id=f"{check}/{name}", reference=REFERENCES[check], status=status, witness=witness)


def _name(pi: FanSubdivision, name: Optional[str]) -> str:
    return name or pi.fine.label or 'subdivision'


def _is_unimodal_sequence(values: Sequence) -> bool:
    return InvariantPolynomial.from_coefficients(list(values)).is_unimodal()


class _EntryData:
    """Sheaves shared by the checks of one subdivision, built on first use."""

    def __init__(self, pi: FanSubdivision, degree_map: Optional[DegreeMap] = None):
        self.pi = pi
        self._degree_map = degree_map

    @cached_property
    def pushed_a(self) -> PureSheafData:
        return pushforward(self.pi, simple_sheaf(self.pi.fine, self.pi.fine.zero, 'A'))

    @cached_property
    def pushed_c(self) -> PureSheafData:
        return pushforward(self.pi, simple_sheaf(self.pi.fine, self.pi.fine.zero, 'C'))

    @cached_property
    def decomposition_a(self):
        return decompose(self.pushed_a)

    @property
    def degree_map(self) -> DegreeMap:
        if self._degree_map is None:
            self._degree_map = gorenstein_degree_map(self.pi.coarse)
        return self._degree_map

    @cached_property
    def projective(self) -> bool:
        return relatively_convex_function(self.pi) is not None


# =============================================================================
# THEOREM CHECKS
# =============================================================================

def check_mixed_h(pi: FanSubdivision, name: Optional[str] = None, data: Optional[_EntryData] = None) -> CheckResult:
    """hodge_deligne(π_*L_Σ) == mixed_h(π)."""
    data = data or _EntryData(pi)

    def body() -> Outcome:
        return _compare([('mixed_h', hodge_deligne(data.pushed_a), mixed_h(pi))])

    return _run('mixed_h', pi, _name(pi, name), body)


def check_refined_ehrhart(pi: FanSubdivision, degree_map: Optional[DegreeMap] = None,
                          name: Optional[str] = None, data: Optional[_EntryData] = None) -> CheckResult:
    """Refined, limit and plain Hodge-Deligne polynomials of π_*E_Σ against their h* counterparts."""
    data = data or _EntryData(pi, degree_map)

    def body() -> Outcome:
        G = data.degree_map
        check_same_degree_map(pi, G)
        fine_sheaf = build_ehrhart_sheaf(pi.fine, G.pull_back(pi))
        polys = limit_hodge_data(pi, fine_sheaf)
        return _compare([
            ('refined', polys.refined, refined_limit_mixed_hstar(pi, G)),
            ('limit', polys.limit, limit_mixed_hstar(pi, G)),
            ('hodge_deligne', polys.hodge_deligne, mixed_hstar(pi.coarse, G)),
        ])

    return _run('refined_ehrhart', pi, _name(pi, name), body)


def check_mixed_cd(pi: FanSubdivision, name: Optional[str] = None, data: Optional[_EntryData] = None) -> CheckResult:
    """C-structure hodge_deligne(π_*L_Σ) == η'(Ω_π)."""
    data = data or _EntryData(pi)

    def body() -> Outcome:
        sheaf_side = hodge_deligne(data.pushed_c)
        return _compare([('mixed_cd', sheaf_side, eta_prime(mixed_cd(pi)))])

    return _run('mixed_cd', pi, _name(pi, name), body)


# =============================================================================
# PROPOSITION AND PROPERTY CHECKS
# =============================================================================

def _same_space(a: Subspace, b: Subspace) -> bool:
    return a.dim == b.dim and a.issubset(b)


def _weight_slice_pairs(sheaf: PureSheafData, base: int, shift) -> List[Tuple[str, bool]]:
    lo, hi = weight_sheaf(sheaf).weight_range()
    out = []
    for r in range(lo, hi + 1):
        computed = weight_sheaf_sections(sheaf, r)
        expected = closed_form_slice(sheaf, base, shift, r)
        out.append((f"{sheaf.label} r={r}", all(_same_space(computed[d], expected[d]) for d in computed)))
    return out


def check_prop_suite(pi: FanSubdivision, degree_map: Optional[DegreeMap] = None,
                     name: Optional[str] = None, data: Optional[_EntryData] = None) -> List[CheckResult]:
    data = data or _EntryData(pi, degree_map)
    name = _name(pi, name)
    coarse, fine = pi.coarse, pi.fine
    single_cone = len(coarse.maximal) == 1
    results: List[CheckResult] = []

    def add(check: str, body: Callable[[], Outcome]):
        results.append(_run(check, pi, name, body))

    def simple_a() -> List[PureSheafData]:
        return [simple_sheaf(coarse, c.index, 'A') for c in coarse.cones]

    def simple_c() -> List[PureSheafData]:
        if coarse.ambient_dim > 2:
            return [simple_sheaf(coarse, coarse.zero, 'C')]
        return [simple_sheaf(coarse, c.index, 'C') for c in coarse.cones]

    add('link_h', lambda: _compare(
        (f"cone {c.index}", global_sections(simple_sheaf(coarse, c.index, 'A')).poincare(), link_h(coarse, c.index))
        for c in coarse.cones))

    add('local_h', lambda: _compare(
        (f"cone {c.index}", data.decomposition_a.local_poincare[c.index], local_h(pi, c.index))
        for c in coarse.cones))

    def hstar_sheaf() -> Outcome:
        G = data.degree_map
        table = ehrhart_table(coarse, G)
        sheaf = build_ehrhart_sheaf(coarse, G)
        local = decompose(sheaf).local_poincare
        pairs = [('hstar', global_sections(sheaf).poincare(), table.hstar_of_fan())]
        pairs += [(f"cone {c.index}", local[c.index], table.local(c.index)) for c in coarse.cones]
        return _compare(pairs)

    add('hstar_sheaf', hstar_sheaf)

    def hstar_decomposition() -> Outcome:
        G = data.degree_map
        collapsed = mixed_hstar(coarse, G).monomial_substitute(HODGE_DELIGNE_TO_POINCARE, T)
        return _compare([('hstar', collapsed, ehrhart_table(coarse, G).hstar_of_fan())],
                        left='decomposition', right='direct')

    add('hstar_decomposition', hstar_decomposition)

    def t_poincare_eta() -> Outcome:
        local = decompose(data.pushed_c).local_poincare
        pairs = [('sections', t_poincare(simple_sheaf(coarse, coarse.zero, 'C')), eta(cd_index(coarse)))]
        pairs += [(f"cone {c.index}", local[c.index], eta(preimage_local_cd(pi, c.index))) for c in coarse.cones]
        return _compare(pairs)

    add('t_poincare', t_poincare_eta)

    def t_duality() -> Outcome:
        sheaf = simple_sheaf(coarse, coarse.zero, 'C')
        top = 2 ** coarse.dim - 1
        return _compare([('duality', t_poincare(sheaf).reciprocal(top), t_poincare(sheaf, 'relative'))],
                        left='sections', right='relative')

    add('t_duality', t_duality)

    add('t_recursion', lambda: _holds([
        ('C', t_poincare_recursion_check(coarse, 'C')),
        ('A', t_poincare_recursion_check(coarse, 'A')),
    ]))

    add('weight_monotone', lambda: _holds(
        (sheaf.label, weight_sheaf(sheaf).filtration().is_monotone())
        for sheaf in [simple_sheaf(coarse, coarse.zero, 'A'), data.pushed_a, simple_sheaf(coarse, coarse.zero, 'C')]))

    def weight_slices() -> Outcome:
        pairs: List[Tuple[str, bool]] = []
        for sheaf in simple_a() + simple_c():
            pairs += _weight_slice_pairs(sheaf, sheaf.base, sheaf.grading.zero())
        shifted = shift_sheaf(simple_sheaf(coarse, coarse.zero, 'A'), 1)
        pairs += _weight_slice_pairs(shifted, coarse.zero, 1)
        return _holds(pairs)

    add('weight_slices', weight_slices)

    add('flabby', lambda: _holds(
        [(s.label, s.is_flabby()) for s in simple_a() + simple_c()]
        + [(data.pushed_a.label, data.pushed_a.is_flabby())]))

    add('degree_bounds', lambda: _holds((s.label, braden_degree_bounds(s)) for s in simple_a() + simple_c()))

    def decomposition() -> Outcome:
        decompose(data.pushed_a, check=True)
        decompose(data.pushed_c, check=True)
        return PASS, None

    add('decomposition', decomposition)

    add('eulerian', lambda: _holds(
        [(f"coarse cone {c.index}", cone_view(coarse, c.index).is_eulerian()) for c in coarse.cones]
        + [(f"fine cone {c.index}", cone_view(fine, c.index).is_eulerian()) for c in fine.cones]))

    def mixed_h_shape() -> Outcome:
        poly = mixed_h(pi)
        pairs = [('nonnegative', poly.has_nonnegative_coefficients())]
        if data.projective:
            top = max((sum(e) for e in poly.terms), default=0)
            for k in range(top + 1):
                diagonal = [poly.coefficient(i, k - i) for i in range(k + 1)]
                pairs.append((f"diagonal {k} symmetric", diagonal == diagonal[::-1]))
                pairs.append((f"diagonal {k} unimodal", _is_unimodal_sequence(diagonal)))
        return _holds(pairs)

    add('mixed_h_shape', mixed_h_shape)

    if single_cone:
        def local_h_shape() -> Outcome:
            if not data.projective:
                return SKIPPED, {'reason': 'no relatively convex function found'}
            poly = local_h(pi)
            top = coarse.cones[coarse.maximal[0]].dim
            return _holds([('symmetric', poly.is_symmetric(top)), ('unimodal', poly.is_unimodal())])

        add('local_h_shape', local_h_shape)

    add('g_h', lambda: _compare(
        (f"cone {c.index}", toric_h(coarse.subfan(coarse.faces[c.index])), toric_g(cone_view(coarse, c.index)))
        for c in coarse.cones))

    if is_complete(coarse):
        def hard() -> Outcome:
            result = hard_lefschetz_check(coarse)
            return result.status, result.to_dict() if result.status != PASS else None

        add('hard_lefschetz', hard)

    def relative() -> Outcome:
        result = relative_hard_lefschetz_check(pi)
        return result.status, result.to_dict() if result.status != PASS else None

    add('relative_lefschetz', relative)

    if single_cone:
        add('ehrhart_reciprocity', lambda: _holds([
            ('reciprocity', ehrhart_reciprocity_check(coarse, data.degree_map)),
        ]))
    return results


# =============================================================================
# DRIVERS
# =============================================================================

def validate_suite(suite: str) -> str:
    if suite not in SUITE_CHOICES:
        raise SelectorError({suite}, set(SUITE_CHOICES))
    return suite


def _selected(suite: str) -> Tuple[str, ...]:
    return SUITES if suite == 'all' else (suite,)


def verify_subdivision(pi: FanSubdivision, suite: str = 'all', name: Optional[str] = None,
                       degree_map: Optional[DegreeMap] = None,
                       suites: Optional[Sequence[str]] = None) -> List[CheckResult]:
    """Every check of the selected suite(s) on one subdivision."""
    validate_suite(suite)
    data = _EntryData(pi, degree_map)
    results: List[CheckResult] = []
    for selected in _selected(suite):
        if suites is not None and selected not in suites:
            continue
        if selected == 'h':
            results.append(check_mixed_h(pi, name, data))
        elif selected == 'hstar':
            results.append(check_refined_ehrhart(pi, degree_map, name, data))
        elif selected == 'cd':
            results.append(check_mixed_cd(pi, name, data))
        else:
            results.extend(check_prop_suite(pi, degree_map, name, data))
    return results


def verify_entry(entry: CorpusEntry, suite: str = 'all') -> List[CheckResult]:
    logger.info(f"[Verify] {entry.name}")
    return verify_subdivision(entry.subdivision, suite, entry.name, suites=entry.suites)


def run_verification(entries: Sequence[CorpusEntry], suite: str = 'all', workers: int = 1) -> VerificationReport:
    """Checks per entry, optionally on a thread pool; results keep the corpus order."""
    validate_suite(suite)
    report = VerificationReport(corpus_hash=corpus_hash(entries))
    if workers <= 1:
        for entry in entries:
            report.extend(verify_entry(entry, suite))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(verify_entry, entry, suite) for entry in entries]
            for future in futures:
                report.extend(future.result())
    counts = report.counts()
    logger.info(f"[Verify] {counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIPPED]} skipped")
    return report


def single_report(pi: FanSubdivision, suite: str = 'all', degree_map: Optional[DegreeMap] = None) -> VerificationReport:
    """Report for one user-supplied subdivision; the hash covers that subdivision only."""
    entry = CorpusEntry(name=_name(pi, None), subdivision=pi)
    report = VerificationReport(corpus_hash=corpus_hash([entry]))
    report.extend(verify_subdivision(pi, suite, entry.name, degree_map))
    return report
