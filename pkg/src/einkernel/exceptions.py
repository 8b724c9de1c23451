"""Exception hierarchy for the geometry kernel."""


class GeometryError(Exception):
    """Base class for all kernel errors."""


class NotSpacelike(GeometryError):
    """A director or other vector required to be spacelike is not."""


class BadWingData(GeometryError):
    """Wing data violates its preconditions (null vector, orthogonal seed)."""


class AtInfinity(GeometryError):
    """Point lies on the lightcone at infinity; no affine chart available."""


class SamePoint(GeometryError):
    """Two points expected to be distinct coincide."""


class IncidentPoints(GeometryError):
    """Two points expected to be non-incident lie on a common photon."""


class DegenerateData(GeometryError):
    """A point configuration does not span the required subspace."""


class NotLorentz(GeometryError):
    """A 3x3 matrix does not preserve the signature (2,1) inner product."""


class NotInGroup(GeometryError):
    """A 5x5 matrix does not preserve the signature (3,2) form."""


class NotHyperbolic(GeometryError):
    """A Lorentz matrix does not have three distinct real eigenvalues."""


class NotAllowable(GeometryError):
    """A displacement pair is not an allowable pair for its directors."""


class NotConsistentlyOriented(GeometryError):
    """Two directors fail the consistent-orientation criterion."""


class BadFundamentalDomain(GeometryError):
    """Generator and walls do not pair up into a fundamental domain."""


class EmptySequence(GeometryError):
    """A nonempty sequence was required."""


class ResolutionTooSmall(GeometryError):
    """A sampling resolution is below the supported minimum."""


class UngluedMesh(GeometryError):
    """A mesh still has boundary (or non-manifold) edges after gluing."""


class ExactArithmeticError(GeometryError):
    """An exact-rational computation would leave the rationals."""
