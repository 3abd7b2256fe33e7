"""Exception types shared across the package.

Every failure mode a caller can trigger has a named class so that the CLI
can surface the originating condition by name.
"""


class NBGroupError(Exception):
    """Base class for all package errors."""


class SpecMismatch(NBGroupError):
    """Operands belong to different field specs or contexts."""


class DivisionByZero(NBGroupError):
    """Inversion of the zero element."""


class NonSquare(NBGroupError):
    """Square root requested for a quadratic non-residue."""


class ZeroElement(NBGroupError):
    """Multiplicative order requested for zero."""


class DegenerateInput(NBGroupError):
    """Resultant elimination with degree 0 in the eliminated variable."""


class LengthMismatch(NBGroupError):
    """Cyclic vectors of different lengths."""


class NotInvertible(NBGroupError):
    """Vector has no convolution inverse (gcd with X^n - 1 is nontrivial)."""


class SingularMatrix(NBGroupError):
    """Linear solve hit a singular matrix (the candidate basis is not one)."""


class TraceZero(NBGroupError):
    """Additive construction: a lies in the image of x -> x^p - x."""


class EvaluationPointInPrimeField(NBGroupError):
    """Additive construction: evaluation point R lies in F_p."""


class OrderTooSmall(NBGroupError):
    """Kummer construction: the class of a in K*/(K*)^n has order < n."""


class BadRootOfUnity(NBGroupError):
    """Kummer construction: zeta does not have exact order mn."""


class PointOffCurve(NBGroupError):
    """Torus point fails x^2 - alpha*y^2 = 1."""


class ExhaustedSearch(NBGroupError):
    """No generator found (only possible for corrupted parameters)."""


class NoDegreeNFactor(NBGroupError):
    """Lucas fiber: no irreducible degree-n minimal polynomial (invalid a)."""


class SignCheckFailed(NBGroupError):
    """Lucas fiber: neither square root maps to a under the isogeny."""


class NTorsionMismatch(NBGroupError):
    """Lucas construction: Frobenius difference does not generate the n-torsion."""


class ConstantCheckFailed(NBGroupError):
    """Lucas construction: the sum of the u functions is not constant."""


class ParseError(NBGroupError):
    """Malformed text form of an element, vector, point or context file."""
