"""
Errors
======
Exception hierarchy for fansheaf.

Every domain failure derives from FanSheafError and carries the structured
context needed to reproduce it (cone ids, witness points, degrees, words).
"""

from typing import Any, Dict, Optional


class FanSheafError(Exception):
    """Base class for all library errors."""

    code = 'fansheaf_error'

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> Dict[str, Any]:
        """JSON-friendly witness data."""
        return {
            'error': self.code,
            'message': self.message,
            'context': {key: _plain(value) for key, value in sorted(self.context.items())},
        }


def _plain(value: Any) -> Any:
    """Convert Fractions and tuples into JSON-safe values."""
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


# =============================================================================
# FAN CONSTRUCTION
# =============================================================================

class NonPointedCone(FanSheafError):
    code = 'non_pointed_cone'

    def __init__(self, rays):
        super().__init__(f"Cone generated by rays {list(rays)} contains a line", rays=list(rays))


class RedundantRay(FanSheafError):
    code = 'redundant_ray'

    def __init__(self, cone, ray):
        super().__init__(f"Ray {ray} is not an extremal ray of cone {list(cone)}", cone=list(cone), ray=ray)


class IntersectionNotAFace(FanSheafError):
    code = 'intersection_not_a_face'

    def __init__(self, first, second, reason: str = ''):
        message = f"Cones {list(first)} and {list(second)} do not meet in a common face"
        if reason:
            message += f" ({reason})"
        super().__init__(message, first=list(first), second=list(second))


class NonPrimitiveRay(FanSheafError):
    """Raised only in strict mode; by default rays are normalized with a warning."""
    code = 'non_primitive_ray'

    def __init__(self, ray):
        super().__init__(f"Ray {list(ray)} is not primitive", ray=list(ray))


class ConeNotInFan(FanSheafError):
    code = 'cone_not_in_fan'

    def __init__(self, cone):
        super().__init__(f"Cone {cone} is not a cone of the fan", cone=cone)


class NotPurelyDimensional(FanSheafError):
    code = 'not_purely_dimensional'

    def __init__(self, dims):
        super().__init__(f"Maximal cones have dimensions {sorted(set(dims))}", dims=sorted(set(dims)))


class NotARefinement(FanSheafError):
    code = 'not_a_refinement'

    def __init__(self, cone):
        super().__init__(f"Fine cone {list(cone)} lies in no single coarse cone", cone=list(cone))


class SupportMismatch(FanSheafError):
    code = 'support_mismatch'

    def __init__(self, detail: str, **context: Any):
        super().__init__(f"Supports differ: {detail}", **context)


class NotGorenstein(FanSheafError):
    code = 'not_gorenstein'

    def __init__(self, cone, witness=None, value=None):
        if witness is None:
            message = f"No linear functional is 1 on every ray of cone {cone}"
        else:
            message = f"Degree map takes value {value} on lattice point {list(witness)} of cone {cone}"
        super().__init__(message, cone=cone, witness=witness, value=value)


class DegreeMapMismatch(FanSheafError):
    code = 'degree_map_mismatch'

    def __init__(self, ray, value):
        super().__init__(f"Degree map takes value {value} on ray {list(ray)}",
                         ray=list(ray), value=value)


class TargetNotSingleCone(FanSheafError):
    code = 'target_not_single_cone'

    def __init__(self, count: int):
        super().__init__(f"Target fan has {count} maximal cones; expected one", maximal_cones=count)


# =============================================================================
# ALGEBRA
# =============================================================================

class CapTooSmall(FanSheafError):
    code = 'cap_too_small'

    def __init__(self, cone, degree):
        super().__init__(f"Generator of cone {cone} sits at the sentinel degree {degree}",
                         cone=cone, degree=degree)


class NotCDExpressible(FanSheafError):
    code = 'not_cd_expressible'

    def __init__(self, word: str, degree: int):
        super().__init__(f"ab-polynomial is not a cd-polynomial in degree {degree} (witness word {word!r})",
                         word=word, degree=degree)


class NegativeExponentResidue(FanSheafError):
    code = 'negative_exponent_residue'

    def __init__(self, exponent):
        super().__init__(f"Result keeps a negative exponent {list(exponent)}", exponent=list(exponent))


class EhrhartNumeratorDegree(FanSheafError):
    code = 'ehrhart_numerator_degree'

    def __init__(self, degree: int, bound: int):
        super().__init__(f"Ehrhart numerator has a term of degree {degree} above {bound}",
                         degree=degree, bound=bound)


class NotEulerian(FanSheafError):
    code = 'not_eulerian'

    def __init__(self, bottom, top):
        super().__init__(f"Interval [{bottom}, {top}] fails the parity test", bottom=bottom, top=top)


# =============================================================================
# SHEAVES
# =============================================================================

class FreenessCertificateFailed(FanSheafError):
    code = 'freeness_certificate_failed'

    def __init__(self, cone, degree, found: int, expected: int):
        super().__init__(f"Stalk at cone {cone} has dimension {found} in degree {degree}, "
                         f"free count predicts {expected}",
                         cone=cone, degree=degree, found=found, expected=expected)


class ConsistencyMismatch(FanSheafError):
    code = 'consistency_mismatch'

    def __init__(self, sections: str, decomposition: str):
        super().__init__(f"Reduced sections {sections} differ from decomposition sum {decomposition}",
                         sections=sections, decomposition=decomposition)


class TripleGradedMismatch(FanSheafError):
    code = 'triple_graded_mismatch'

    def __init__(self, direct: str, summands: str):
        super().__init__(f"Filtration count {direct} differs from summand formula {summands}",
                         direct=direct, summands=summands)


# =============================================================================
# INPUT / CLI
# =============================================================================

class ParseError(FanSheafError):
    code = 'parse_error'

    def __init__(self, message: str, source: Optional[str] = None, line: Optional[int] = None):
        where = source or '<input>'
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}", source=source, line=line)
        self.detail = message


class SelectorError(FanSheafError):
    code = 'selector_error'

    def __init__(self, unknown, known):
        super().__init__(f"Unknown selector(s) {sorted(unknown)}; known: {sorted(known)}",
                         unknown=sorted(unknown), known=sorted(known))


class DimensionLimitExceeded(FanSheafError):
    code = 'dimension_limit_exceeded'

    def __init__(self, dim: int, limit: int, structure: str):
        super().__init__(f"Ambient dimension {dim} exceeds the {structure} limit {limit}",
                         dim=dim, limit=limit, structure=structure)
